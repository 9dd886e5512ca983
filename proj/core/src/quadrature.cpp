#include "rmdirac/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rmdirac/errors.hpp"
#include "rmdirac/specfun.hpp"

namespace rmdirac::quad {

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

namespace {

const GaussLegendreRule& rule20() {
    static const GaussLegendreRule r = gauss_legendre(20);
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const auto& r = rule20();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    specfun::NeumaierSum s;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s.add(r.weights[i] * f(c + h * r.nodes[i]));
    return h * s.value();
}

void recurse(const std::function<double(double)>& f, double a, double b, double whole, double tol,
             double noise_density, int depth, const AdaptiveOptions& opts, specfun::NeumaierSum& acc,
             QuadResult& res) {
    const double m = 0.5 * (a + b);
    const double left = panel(f, a, m);
    const double right = panel(f, m, b);
    const double err = std::abs(left + right - whole);
    // Below a few hundred ulps the halving tolerance only chases rounding noise. The
    // panel's share of the whole integral keeps zeros of f from driving it to max depth.
    const double floor = std::max(256.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right)),
                                  noise_density * (b - a));
    if (err <= std::max(tol, floor) || depth >= opts.max_depth || res.intervals >= opts.max_intervals ||
        !(m > a && m < b)) {
        if (err > tol) res.converged = false;
        acc.add(left + right);
        res.error_estimate += err;
        res.intervals += 2;
        return;
    }
    recurse(f, a, m, left, 0.5 * tol, noise_density, depth + 1, opts, acc, res);
    recurse(f, m, b, right, 0.5 * tol, noise_density, depth + 1, opts, acc, res);
}

}  // namespace

QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                   const AdaptiveOptions& opts) {
    QuadResult res;
    if (a == b) return res;
    const double whole = panel(f, a, b);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(whole));
    specfun::NeumaierSum acc;
    const double noise_density = 256.0 * std::numeric_limits<double>::epsilon() * std::abs(whole) / std::abs(b - a);
    recurse(f, a, b, whole, tol, noise_density, 0, opts, acc, res);
    res.value = acc.value();
    if (!std::isfinite(res.value)) throw DomainError("adaptive_gauss_legendre: integrand is not finite");
    return res;
}

QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                   const AdaptiveOptions& opts) {
    QuadResult total;
    if (breaks.size() < 2) return total;
    // The relative tolerance refers to the whole range: a segment holding a
    // negligible share of the integral must not chase its own rounding noise.
    double crude = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) crude += std::abs(panel(f, breaks[i], breaks[i + 1]));
    AdaptiveOptions segment = opts;
    segment.abs_tol = std::max(opts.abs_tol, opts.rel_tol * crude / static_cast<double>(breaks.size() - 1));
    specfun::NeumaierSum acc;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const QuadResult r = adaptive_gauss_legendre(f, breaks[i], breaks[i + 1], segment);
        acc.add(r.value);
        total.error_estimate += r.error_estimate;
        total.intervals += r.intervals;
        total.converged = total.converged && r.converged;
    }
    total.value = acc.value();
    return total;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InvalidArgument("trapezoid: size mismatch");
    specfun::NeumaierSum s;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s.add(0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]));
    return s.value();
}

}  // namespace rmdirac::quad
