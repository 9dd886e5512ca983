#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>

namespace rmdirac {

/// V(r) = -v1 sech^2(alpha r) + v2 tanh(alpha r).
struct RosenMorseGeneral {
    double v1 = 0.0;
    double v2 = 0.0;
    double alpha = 1.0;
};

/// V(r) = -a2 sech^2(alpha r).  When `lambda` is set, a2 = lambda (lambda + 1) / 2.
struct ReflectionlessParams {
    double a2 = 0.0;
    double alpha = 1.0;
    std::optional<int> lambda;

    static ReflectionlessParams from_lambda(int lambda, double alpha);
};

/// V(r) = -a (a + alpha) sech^2(alpha r) + 2 b tanh(alpha r).
struct StandardRMParams {
    double a = 0.0;
    double b = 0.0;
    double alpha = 1.0;
};

/// V(x) = -v1 sec^2(alpha x) + v2 tan(alpha x) with alpha = pi / (2 half_width).
/// The potential lives on the open interval (-half_width, half_width), with
/// inverse-square walls at both ends.
struct TrigRMParams {
    double v1 = 0.0;
    double v2 = 0.0;
    double half_width = 1.0;

    double alpha() const;
};

using PotentialSpec =
    std::variant<RosenMorseGeneral, ReflectionlessParams, StandardRMParams, TrigRMParams>;

/// Throws InvalidArgument naming the first violated invariant.
void validate(const PotentialSpec& spec);

std::string potential_kind(const PotentialSpec& spec);

/// The alpha of any member of the family.
double range_parameter(const PotentialSpec& spec);

bool is_trigonometric(const PotentialSpec& spec);

/// Rewrites a hyperbolic potential in the (v1, v2, alpha) parameterization.
/// Throws InvalidArgument for the trigonometric form.
RosenMorseGeneral to_general(const PotentialSpec& spec);

struct PotentialEvalOptions {
    /// Accept r < 0 for the hyperbolic forms (continuation used by the
    /// full-line eigensolver).
    bool full_line = false;
    /// Largest sec^2(alpha x) accepted before the trig form reports a
    /// singular point.
    double sec2_cap = 1e12;
};

/// Potential in its sech^2 / tanh (or sec^2 / tan) form.
double eval_potential(const PotentialSpec& spec, double r, const PotentialEvalOptions& opts = {});

/// Same potential written in the exponential variable z = exp(-2 alpha r).
double eval_potential_exponential(const RosenMorseGeneral& pot, double r);

enum class PekerisSource { formulas, taylor };

std::string to_string(PekerisSource source);
PekerisSource pekeris_source_from_string(const std::string& name);

/// Coefficients of 1/r^2 ~ (1/r_e^2) [d0 + d1 u + d2 u^2],
/// u = -exp(-2 alpha r) / (1 + exp(-2 alpha r)).
struct PekerisCoefficients {
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double r_e = 1.0;
    double alpha = 1.0;
    PekerisSource source = PekerisSource::taylor;
};

/// The printed closed-form coefficients, transcribed literally.  Refuses
/// 2 alpha r_e beyond `exponent_cap` to keep exp(2 alpha r_e) finite.
PekerisCoefficients pekeris_from_formulas(double alpha, double r_e, double exponent_cap = 700.0);

/// Coefficients that reproduce 1/r^2 and its first two derivatives at r_e.
PekerisCoefficients pekeris_from_taylor_match(double alpha, double r_e);

/// u(r) = -1 / (1 + exp(2 alpha r)); defined for every real r.
double pekeris_variable(double alpha, double r);

/// Relative mismatch of (value, first, second derivative) of the
/// approximation against 1/r^2 at r = r_e.
std::array<double, 3> taylor_match_mismatch(const PekerisCoefficients& coeffs);

/// Max-norm residual of the 3x3 matching system for the given coefficients.
double taylor_match_system_residual(const PekerisCoefficients& coeffs);

/// Interior minimum of the general well: tanh(alpha r_e) = -v2 / (2 v1).
/// Throws DomainError when no minimum exists for r > 0.
double equilibrium_radius(const RosenMorseGeneral& pot);

/// strength * (1/r_e^2) [d0 + d1 u + d2 u^2].  `strength` is kappa(kappa+1)
/// for spin symmetry and kappa(kappa-1) for pseudospin symmetry.
double centrifugal_approx(const PekerisCoefficients& coeffs, double strength, double r);

}  // namespace rmdirac
