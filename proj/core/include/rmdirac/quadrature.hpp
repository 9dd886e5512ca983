#pragma once

#include <functional>
#include <vector>

namespace rmdirac::quad {

struct GaussLegendreRule {
    std::vector<double> nodes;    ///< on [-1, 1]
    std::vector<double> weights;
};

/// n-point rule; nodes from Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
    bool converged = true;
};

struct AdaptiveOptions {
    double rel_tol = 1e-13;
    double abs_tol = 0.0;
    int max_depth = 40;
    /// Panels accepted before the remaining ones are taken as they are (converged = false).
    int max_intervals = 200000;
};

/// Adaptive bisection with a 20-point Gauss-Legendre rule on each panel;
/// a panel is accepted when its halves agree with the whole.
QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                   const AdaptiveOptions& opts = {});

/// Sum of adaptive integrals over consecutive breakpoints.
QuadResult adaptive_gauss_legendre(const std::function<double(double)>& f, const std::vector<double>& breaks,
                                   const AdaptiveOptions& opts = {});

/// Composite trapezoid rule on samples.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rmdirac::quad
