#include "rmdirac/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rmdirac/errors.hpp"

namespace rmdirac::specfun {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

void NeumaierSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

LnGamma ln_gamma(double x) {
    if (std::isnan(x)) throw DomainError("ln_gamma: NaN argument");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "ln_gamma: pole at x=" << x;
        throw PoleError(os.str());
    }
    LnGamma out;
    out.value = std::lgamma(x);
    // Gamma is negative on (-1,0), (-3,-2), ...: floor(x) odd.
    if (x < 0.0) {
        const auto f = static_cast<long long>(std::floor(x));
        out.sign = (f % 2 == 0) ? 1 : -1;
    }
    return out;
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    const LnGamma g = ln_gamma(x);
    return g.sign * std::exp(-g.value);
}

double pochhammer(double x, int m) {
    if (m < 0) throw InvalidArgument("pochhammer: m must be >= 0");
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= x + k;
    return p;
}

std::vector<PochhammerSeriesTerm> hyp2f1_terms(int n, double b, double c, double z) {
    if (n < 0) throw InvalidArgument("hyp2f1_terminating: n must be >= 0");
    std::vector<PochhammerSeriesTerm> terms;
    terms.reserve(static_cast<std::size_t>(n) + 1);
    double t = 1.0;
    terms.push_back({0, t});
    for (int m = 0; m < n; ++m) {
        const double denom = (c + m) * (m + 1.0);
        if (c + m == 0.0) {
            std::ostringstream os;
            os << "hyp2f1_terminating: (c)_m vanishes at m=" << m + 1 << " for c=" << c;
            throw PoleError(os.str());
        }
        t *= (m - n) * (b + m) / denom * z;
        terms.push_back({m + 1, t});
    }
    return terms;
}

double hyp2f1_terminating(int n, double b, double c, double z) {
    if (n < 0) throw InvalidArgument("hyp2f1_terminating: n must be >= 0");
    // Same recurrence as hyp2f1_terms without the allocation; this sits in quadrature loops.
    NeumaierSum s;
    double t = 1.0;
    s.add(t);
    for (int m = 0; m < n; ++m) {
        if (c + m == 0.0) return hyp2f1_terms(n, b, c, z).back().value;  // throws PoleError
        t *= (m - n) * (b + m) / ((c + m) * (m + 1.0)) * z;
        s.add(t);
    }
    return s.value();
}

namespace {

// P_n = sum_m C(n,m) (n+mu+nu+1)_m (mu+m+1)_{n-m} / n! ((x-1)/2)^m
// has no denominators in mu, nu, so it stays finite for every real pair.
double jacobi_explicit(int n, double mu, double nu, double x) {
    // Expand about the nearer endpoint so |(x-1)/2| <= 1/2.
    if (x < 0.0) return (n % 2 ? -1.0 : 1.0) * jacobi_explicit(n, nu, mu, -x);
    const double y = 0.5 * (x - 1.0);
    const double s = n + mu + nu + 1.0;
    NeumaierSum sum;
    double binom_over_nfact = 1.0;  // C(n,m) / n!
    for (int k = 1; k <= n; ++k) binom_over_nfact /= k;
    double rising_s = 1.0;  // (s)_m
    double ypow = 1.0;
    for (int m = 0; m <= n; ++m) {
        sum.add(binom_over_nfact * rising_s * pochhammer(mu + m + 1.0, n - m) * ypow);
        binom_over_nfact *= static_cast<double>(n - m) / (m + 1.0);
        rising_s *= s + m;
        ypow *= y;
    }
    return sum.value();
}

}  // namespace

double jacobi_p(int n, double mu, double nu, double x) {
    if (n < 0) throw InvalidArgument("jacobi_p: n must be >= 0");
    // (mu+1)_n / n! 2F1(-n, n+mu+nu+1; mu+1; (1-x)/2). When mu+1 is a
    // nonpositive integer the prefactor cancels the pole; use the expanded sum.
    const double c = mu + 1.0;
    if (c <= 0.0 && c > -n && c == std::round(c)) return jacobi_explicit(n, mu, nu, x);
    double pre = 1.0;
    for (int k = 0; k < n; ++k) pre *= (c + k) / (k + 1.0);
    return pre * hyp2f1_terminating(n, n + mu + nu + 1.0, c, 0.5 * (1.0 - x));
}

double hyp3f2_unit(double a1, double a2, double a3, double b1, double b2, int n_terminating) {
    if (n_terminating < 0) throw InvalidArgument("hyp3f2_unit: n_terminating must be >= 0");
    const double neg_n = -static_cast<double>(n_terminating);
    auto matches = [&](double a) { return std::abs(a - neg_n) <= 1e-12 * (1.0 + std::abs(neg_n)); };
    if (!(matches(a1) || matches(a2) || matches(a3)))
        throw InvalidArgument("hyp3f2_unit: no numerator parameter equals -n_terminating");

    NeumaierSum s;
    double t = 1.0;
    s.add(t);
    for (int m = 0; m < n_terminating; ++m) {
        if (b1 + m == 0.0 || b2 + m == 0.0) throw PoleError("hyp3f2_unit: denominator Pochhammer vanishes");
        t *= (a1 + m) * (a2 + m) * (a3 + m) / ((b1 + m) * (b2 + m) * (m + 1.0));
        s.add(t);
    }
    return s.value();
}

}  // namespace rmdirac::specfun
