#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmdirac/potentials.hpp"

namespace rmdirac {

enum class Symmetry { spin, pspin };

std::string to_string(Symmetry kind);
Symmetry symmetry_from_string(const std::string& name);

/// Which effective radial equation applies.  `c_const` is C- (difference
/// potential) for spin symmetry and C+ (sum potential) for pseudospin.
struct SymmetrySector {
    Symmetry kind = Symmetry::spin;
    int kappa = -1;
    double mass = 1.0;
    double c_const = 0.0;

    /// kappa (kappa + 1) for spin, kappa (kappa - 1) for pseudospin.
    double centrifugal_strength() const;
    /// l for spin, the pseudo-orbital l~ for pseudospin.
    int orbital_number() const;
};

void validate(const SymmetrySector& sector);

/// Energy-dependent constants of the Schroedinger-like equation
/// u'' = [strength / r^2 + a_sq + b_lin * W(r)] u, with W = V (spin) or -V (pspin).
struct EffectiveCoefficients {
    double a_sq = 0.0;
    double b_lin = 0.0;
};

EffectiveCoefficients effective_coefficients(const SymmetrySector& sector, double energy);

/// Snapshot of the hypergeometric reduction at a trial energy.  For
/// pseudospin these are the (b0, b1, b2, p) of the lower component.
struct NUParameters {
    double a0 = 0.0;  ///< asymptotic decay exponent (NaN if its radicand is negative)
    double a1 = 0.0;
    double a2 = 0.0;
    double q = 0.0;
    double shift = 0.0;    ///< n + 1/2 - q/2
    double bracket = 0.0;  ///< squared quantity of the energy equation; -2 a0 on a true root
};

struct AdmissibilityFlags {
    bool q_real = false;
    bool a0_positive = false;
    bool bracket_negative = false;
    /// Decay of the polynomial solution as z -> infinity (continuation to r < 0).
    bool left_decay = false;
};

struct EnergyLevel {
    int n = 0;
    int kappa = 0;
    double energy = 0.0;
    double residual = 0.0;
    NUParameters nu;
    AdmissibilityFlags flags;
    bool admissible = false;
};

// ---------------------------------------------------------------------------
// Energy equations.  Every residual is (LHS - RHS) / alpha^2 and throws
// DomainError when q (or p) is imaginary, PoleError when the quantization
// denominator vanishes.

double spin_residual_rm(double energy, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                        const PekerisCoefficients& coeffs);

/// Pseudospin energy equation written directly in (A_ps^2, B_ps, p).
double pspin_residual_rm(double energy, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                         const PekerisCoefficients& coeffs);

/// Same equation with the doubled alpha^2 in the denominator, as printed.
double pspin_residual_rm_printed(double energy, int n, const RosenMorseGeneral& pot,
                                 const SymmetrySector& sector, const PekerisCoefficients& coeffs);

/// Klein-Gordon equation with equally mixed potentials (hbar = c = 1).
double kg_residual(double energy, int n, const RosenMorseGeneral& pot, int l, double mass,
                   const PekerisCoefficients& coeffs);

double spin_residual_reflectionless(double energy, int n, const ReflectionlessParams& pot,
                                    const SymmetrySector& sector, const PekerisCoefficients& coeffs);
double pspin_residual_reflectionless(double energy, int n, const ReflectionlessParams& pot,
                                     const SymmetrySector& sector, const PekerisCoefficients& coeffs);
double spin_residual_standard_rm(double energy, int n, const StandardRMParams& pot, const SymmetrySector& sector,
                                 const PekerisCoefficients& coeffs);
double pspin_residual_standard_rm(double energy, int n, const StandardRMParams& pot,
                                  const SymmetrySector& sector, const PekerisCoefficients& coeffs);

/// s-wave (kappa = -1 spin / kappa = +1 pseudospin) forms, no Pekeris terms.
namespace swave {
double spin_reflectionless(double energy, int n, const ReflectionlessParams& pot, double mass, double c_minus);
double pspin_reflectionless(double energy, int n, const ReflectionlessParams& pot, double mass, double c_plus);
double spin_standard_rm(double energy, int n, const StandardRMParams& pot, double mass, double c_minus);
double pspin_standard_rm(double energy, int n, const StandardRMParams& pot, double mass, double c_plus);
}  // namespace swave

/// `regular` quantizes with n + 1/2 + q/2, the solution that stays regular at
/// both walls; `printed` uses n + 1/2 - q/2.
enum class TrigBranch { regular, printed };

/// s-wave spin-symmetric equation for the trigonometric form.  Requires
/// 4 v1 (M + E - C-) <= alpha^2.
double swave_trig_rm_residual(double energy, int n, const TrigRMParams& pot, const SymmetrySector& sector,
                              TrigBranch branch = TrigBranch::regular);

/// Dispatches to the transcription matching the potential's kind and sector.
double residual(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs, int n,
                double energy, TrigBranch branch = TrigBranch::regular);

/// Non-throwing variant for scanners: nullopt where the residual is undefined.
std::optional<double> try_residual(const PotentialSpec& pot, const SymmetrySector& sector,
                                   const PekerisCoefficients& coeffs, int n, double energy,
                                   TrigBranch branch = TrigBranch::regular);

NUParameters nu_parameters(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                           int n, double energy, TrigBranch branch = TrigBranch::regular);

AdmissibilityFlags admissibility(const PotentialSpec& pot, const NUParameters& nu);

// ---------------------------------------------------------------------------
// Nonrelativistic closed forms (hbar = 1, mass mu).  Throw NoBoundStateError
// when the bound-state branch conditions fail.

double nonrel_energy_reflectionless(int n, int l, double a2, double alpha, double mu,
                                    const PekerisCoefficients& coeffs);
double nonrel_energy_rm(int n, int l, const StandardRMParams& params, double mu, const PekerisCoefficients& coeffs);

/// Standard-RM closed form with the quantization denominator exactly as
/// printed (missing the factor 4 of the relativistic parent equation).
double nonrel_energy_rm_printed(int n, int l, const StandardRMParams& params, double mu,
                                const PekerisCoefficients& coeffs);

// ---------------------------------------------------------------------------

struct SearchConfig {
    int scan_points = 2000;
    double tol = 1e-12;
    int max_bisection = 200;
    std::optional<double> e_min;
    std::optional<double> e_max;
    /// Relative distance kept from the edges of the admissible window.
    double guard = 1e-9;
    TrigBranch trig_branch = TrigBranch::regular;
    bool parallel = false;
};

/// Energy window scanned for level n_max and below.
std::pair<double, double> energy_window(const PotentialSpec& pot, const SymmetrySector& sector,
                                        const PekerisCoefficients& coeffs, int n_max, const SearchConfig& search);

/// Every sign change of the residual for n = 0..n_max, refined by bisection.
/// All roots are returned with admissibility flags, sorted by energy.
std::vector<EnergyLevel> find_levels(const PotentialSpec& pot, const SymmetrySector& sector,
                                     const PekerisCoefficients& coeffs, int n_max, const SearchConfig& search = {});

/// Build the level record for an energy (used after root refinement and when
/// re-evaluating stored levels).
EnergyLevel make_level(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                       int n, double energy, TrigBranch branch = TrigBranch::regular);

}  // namespace rmdirac
