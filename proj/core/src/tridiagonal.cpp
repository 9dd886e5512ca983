#include "rmdirac/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmdirac/errors.hpp"

namespace rmdirac::tridiag {

namespace {

void check(const SymTridiagonal& t) {
    if (t.d.empty() || t.e.size() + 1 != t.d.size()) throw InvalidArgument("tridiagonal: inconsistent sizes");
}

}  // namespace

int sturm_count(const SymTridiagonal& t, double x) {
    check(t);
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double q = t.d[0] - x;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t.d.size(); ++i) {
        q = t.d[i] - x - t.e[i - 1] * t.e[i - 1] / q;
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

void gershgorin(const SymTridiagonal& t, double& lo, double& hi) {
    check(t);
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    const std::size_t n = t.d.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.e[i - 1]);
        if (i + 1 < n) r += std::abs(t.e[i]);
        lo = std::min(lo, t.d[i] - r);
        hi = std::max(hi, t.d[i] + r);
    }
}

double kth_eigenvalue(const SymTridiagonal& t, int k, double tol) {
    check(t);
    if (k < 0 || static_cast<std::size_t>(k) >= t.d.size()) throw InvalidArgument("kth_eigenvalue: k out of range");
    double lo, hi;
    gershgorin(t, lo, hi);
    const double span = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-12 * span + std::numeric_limits<double>::min();
    hi += 1e-12 * span + std::numeric_limits<double>::min();
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol || !(mid > lo && mid < hi)) return mid;
        if (sturm_count(t, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw ConvergenceError("kth_eigenvalue: bisection did not terminate");
}

std::vector<double> eigenvector(const SymTridiagonal& t, double lambda, int iterations) {
    check(t);
    const std::size_t n = t.d.size();
    if (n == 1) return {1.0};
    double lo, hi;
    gershgorin(t, lo, hi);
    const double shift = lambda + 1e-14 * std::max({std::abs(lo), std::abs(hi), 1.0});

    // Gaussian elimination with partial pivoting on T - shift I; the upper
    // factor has two superdiagonals.
    std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), lmul(n, 0.0);
    std::vector<bool> swapped(n, false);
    double diag = t.d[0] - shift;
    double sup = t.e[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double sub = t.e[i];
        const double next_diag = t.d[i + 1] - shift;
        const double next_sup = i + 2 < n ? t.e[i + 1] : 0.0;
        if (std::abs(sub) > std::abs(diag)) {
            swapped[i] = true;
            u0[i] = sub;
            u1[i] = next_diag;
            u2[i] = next_sup;
            const double m = diag / sub;
            lmul[i] = m;
            diag = sup - m * next_diag;
            sup = -m * next_sup;
        } else {
            if (diag == 0.0) diag = std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
            u0[i] = diag;
            u1[i] = sup;
            u2[i] = 0.0;
            const double m = sub / diag;
            lmul[i] = m;
            diag = next_diag - m * sup;
            sup = next_sup;
        }
    }
    if (diag == 0.0) diag = std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    u0[n - 1] = diag;

    std::vector<double> v(n, 1.0);
    for (int it = 0; it < iterations; ++it) {
        // forward: apply the row operations
        std::vector<double> b = v;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= lmul[i] * b[i];
        }
        // back substitution
        for (std::size_t ii = n; ii-- > 0;) {
            double s = b[ii];
            if (ii + 1 < n) s -= u1[ii] * b[ii + 1];
            if (ii + 2 < n) s -= u2[ii] * b[ii + 2];
            b[ii] = s / u0[ii];
        }
        double norm = 0.0;
        for (double x : b) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) throw ConvergenceError("eigenvector: inverse iteration failed");
        for (std::size_t i = 0; i < n; ++i) v[i] = b[i] / norm;
    }
    return v;
}

int count_sign_changes(const std::vector<double>& v, double rel) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    int count = 0;
    double prev = 0.0;
    for (double x : v) {
        if (std::abs(x) <= rel * peak) continue;
        if (prev != 0.0 && (x < 0.0) != (prev < 0.0)) ++count;
        prev = x;
    }
    return count;
}

}  // namespace rmdirac::tridiag
