#pragma once

#include <memory>
#include <vector>

#include "rmdirac/potentials.hpp"
#include "rmdirac/spectrum.hpp"

namespace rmdirac {

/// Closed-form radial spinor of one level of a hyperbolic potential.
///
/// The solved component (F for spin, G for pseudospin) is
///   z^{a0} (1+z)^{(1-q)/2} 2F1(-n, n + 2 a0 + 1 - q; 1 + 2 a0; -z),  z = exp(-2 alpha r),
/// with (a0, q) replaced by (b0, p) for pseudospin.  The partner follows from
/// the first-order relation using the analytic derivative.
class SpinorModel {
public:
    SpinorModel(const EnergyLevel& level, const PotentialSpec& pot, const SymmetrySector& sector,
                const PekerisCoefficients& coeffs);

    struct Sample {
        double value = 0.0;
        double derivative = 0.0;
    };

    /// Unnormalized solved component and its r-derivative.
    Sample solved(double r) const;
    /// Partner component; throws DomainError when its denominator vanishes.
    double partner(double r) const;
    double upper(double r) const;
    double lower(double r) const;

    /// Polynomial factor y(z) = 2F1(-n, b; c; -z).
    double polynomial(double z) const;

    /// u'' coefficient of the effective equation at r:
    /// strength * Pekeris(r) + A^2 + B W(r), W = V (spin) or -V (pspin).
    double effective_potential(double r) const;

    /// M + E - C- (spin) or M - E + C+ (pspin).
    double partner_denominator() const { return partner_den_; }
    double decay_rate() const { return 2.0 * alpha_ * a0_; }
    double poly_b() const { return b_; }
    double poly_c() const { return c_; }

    const EnergyLevel& level() const { return level_; }
    const SymmetrySector& sector() const { return sector_; }
    const PotentialSpec& potential() const { return pot_; }
    const PekerisCoefficients& coefficients() const { return coeffs_; }
    double alpha() const { return alpha_; }

private:
    EnergyLevel level_;
    PotentialSpec pot_;
    SymmetrySector sector_;
    PekerisCoefficients coeffs_;
    double alpha_ = 1.0;
    double a0_ = 0.0;
    double nu_ = 0.0;  // (1 - q) / 2
    double b_ = 0.0;
    double c_ = 0.0;
    double partner_den_ = 0.0;
    EffectiveCoefficients eff_;
};

/// Log-spaced from r_min_factor * r_scale to r_scale, linear beyond.
std::vector<double> make_radial_grid(double r_scale, double r_max, int points = 4096,
                                     double r_min_factor = 1e-6);

std::vector<double> upper_component_rm(const EnergyLevel& level, const PotentialSpec& pot,
                                       const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                                       const std::vector<double>& grid);
std::vector<double> lower_component_pspin(const EnergyLevel& level, const PotentialSpec& pot,
                                          const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                                          const std::vector<double>& grid);

/// G = (F' + kappa F / r) / (M + E - C-), spin sector only.
std::vector<double> lower_from_upper(const SpinorModel& model, const std::vector<double>& grid);
/// F = (G' - kappa G / r) / (M - E + C+), pseudospin sector only.
std::vector<double> upper_from_lower(const SpinorModel& model, const std::vector<double>& grid);

/// Smallest r beyond r_scale where |F| and |G| fall below rel * max|solved|.
double cutoff_radius(const SpinorModel& model, double r_scale, double rel = 1e-12);

struct SpinorState {
    std::vector<double> r;
    std::vector<double> upper;
    std::vector<double> lower;
    double scale = 1.0;  ///< samples = scale * closed form
    double norm = 0.0;   ///< integral of F^2 + G^2 over [r.front(), r_cut] for the stored scale
    double r_cut = 0.0;
    double r_scale = 1.0;
    std::shared_ptr<const SpinorModel> model;
};

struct GridOptions {
    int points = 4096;
    double r_min_factor = 1e-6;
    /// Length that separates the logarithmic and linear parts of the grid.
    double r_scale = 1.0;
    double tail_rel = 1e-12;
};

/// Samples of both components (unnormalized, scale = 1) on a fresh grid out to the cutoff radius.
SpinorState build_state(std::shared_ptr<const SpinorModel> model, const GridOptions& opts);

/// Joint normalization of (F, G) by adaptive Gauss-Legendre quadrature of
/// the closed form.  Throws DomainError on a zero state.
SpinorState normalize(const SpinorState& state);

/// Integral of the squared components times scale^2 over [r_lo, r_hi].
double norm_integral(const SpinorModel& model, double r_lo, double r_hi, double r_scale, double scale = 1.0);

// --- diagnostics -----------------------------------------------------------

/// sup |u'' - W_eff u| / sup |u''| on [r_lo, r_hi]; u'' from a five-point stencil.
double ode_residual(const SpinorModel& model, double r_lo, double r_hi, int samples = 400);

/// Residual of the first-order equation not used to build the partner, with
/// the centrifugal term replaced by its Pekeris form; relative to the largest
/// term on [r_lo, r_hi].
double coupled_residual(const SpinorModel& model, double r_lo, double r_hi, int samples = 400);

/// Zeros of the polynomial factor over z in (0, inf), i.e. over the whole real r-line.
int full_line_node_count(const SpinorModel& model);

/// Sign changes of the solved component on the stored grid (r > 0 only).
int half_line_node_count(const SpinorState& state);

/// Least-squares slope of ln|solved| on [r_lo, r_hi].
double decay_slope(const SpinorModel& model, double r_lo, double r_hi, int samples = 200);

/// Default start of the slope fit: past 4 r_scale and past the region where
/// exp(-2 alpha r) > 1e-6.
double decay_fit_start(const SpinorModel& model, double r_scale);

struct NormalizationFormula {
    double value = 0.0;  ///< N; NaN when the bracketed sum is negative
    double bracket = 0.0;
    int terms = 0;
    bool converged = false;
    bool monotone_tail = false;
};

/// Printed normalization constant with the m-sum truncated once terms fall
/// below 1e-16 of the running sum.  Throws PoleError at n = 0 (Gamma(n)).
NormalizationFormula normalization_constant_formula(const EnergyLevel& level, double alpha,
                                                    int max_terms = 400);

}  // namespace rmdirac
