#include "rmdirac/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "rmdirac/errors.hpp"

namespace rmdirac {

namespace {

enum class Status { ok, imaginary, pole };

struct Value {
    Status status = Status::ok;
    double v = 0.0;
};

Value imaginary() { return {Status::imaginary, 0.0}; }
Value pole() { return {Status::pole, 0.0}; }

double unwrap(const Value& x, const char* what) {
    if (x.status == Status::imaginary)
        throw DomainError(std::string(what) + ": square-root radicand is negative at this energy");
    if (x.status == Status::pole) throw PoleError(std::string(what) + ": quantization denominator vanishes");
    return x.v;
}

void require_kind(const SymmetrySector& sector, Symmetry kind, const char* what) {
    if (sector.kind != kind)
        throw InvalidArgument(std::string(what) + ": wrong symmetry sector (" + to_string(sector.kind) + ")");
}

double sq(double x) { return x * x; }

// Spin-form NU evaluation shared by every hyperbolic case.  For pseudospin
// the caller passes (A_ps^2, B_ps) and the sign-flipped potential.
struct SpinForm {
    double strength, a_sq, b, v1, v2, alpha;
};

struct SpinFormEval {
    Status status = Status::ok;
    double residual = 0.0;
    NUParameters nu;
};

SpinFormEval eval_spin_form(const SpinForm& f, const PekerisCoefficients& c, int n) {
    SpinFormEval out;
    const double al2 = f.alpha * f.alpha;
    const double sre = f.strength / (c.r_e * c.r_e);
    const double rad = 1.0 + sre * c.d2 / al2 + 4.0 * f.v1 * f.b / al2;
    if (!(rad >= 0.0)) {
        out.status = Status::imaginary;
        return out;
    }
    NUParameters& nu = out.nu;
    nu.q = std::sqrt(rad);
    const double a0_sq = (sre * c.d0 + f.a_sq + f.b * f.v2) / (4.0 * al2);
    nu.a0 = a0_sq >= 0.0 ? std::sqrt(a0_sq) : std::numeric_limits<double>::quiet_NaN();
    nu.a1 = (sre * (c.d1 - 2.0 * c.d0) + 4.0 * f.b * f.v1 - 2.0 * f.a_sq) / (4.0 * al2);
    nu.a2 = (sre * (c.d0 - c.d1 + c.d2) + f.a_sq - f.b * f.v2) / (4.0 * al2);
    nu.shift = n + 0.5 - 0.5 * nu.q;
    if (nu.shift == 0.0) {
        out.status = Status::pole;
        return out;
    }
    const double x = sre * (c.d1 - c.d2) + 2.0 * f.b * f.v2;
    nu.bracket = nu.shift + x / (4.0 * al2 * nu.shift);
    const double rhs = -sre * c.d0 - f.b * f.v2 + al2 * sq(nu.bracket);
    out.residual = (f.a_sq - rhs) / al2;
    return out;
}

SpinForm spin_form(const RosenMorseGeneral& pot, const SymmetrySector& sector, double energy) {
    const EffectiveCoefficients e = effective_coefficients(sector, energy);
    if (sector.kind == Symmetry::spin) return {sector.centrifugal_strength(), e.a_sq, e.b_lin, pot.v1, pot.v2, pot.alpha};
    return {sector.centrifugal_strength(), e.a_sq, e.b_lin, -pot.v1, -pot.v2, pot.alpha};
}

Value spin_rm_value(double E, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                    const PekerisCoefficients& c) {
    const SpinFormEval ev = eval_spin_form(spin_form(pot, sector, E), c, n);
    return {ev.status, ev.residual};
}

Value pspin_rm_value(double E, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                     const PekerisCoefficients& c, double denom_alpha_power) {
    const double M = sector.mass, C = sector.c_const, s = sector.centrifugal_strength();
    const double al2 = pot.alpha * pot.alpha;
    const double re2 = c.r_e * c.r_e;
    const double a_ps = M * M - E * E + (M + E) * C;
    const double b_ps = M - E + C;
    const double rad = 1.0 + s * c.d2 / (al2 * re2) - 4.0 * pot.v1 * b_ps / al2;
    if (!(rad >= 0.0)) return imaginary();
    const double den = 2.0 * n + 1.0 - std::sqrt(rad);
    if (den == 0.0) return pole();
    const double inner = den + (s * (c.d1 - c.d2) / re2 - 2.0 * b_ps * pot.v2) / (std::pow(al2, denom_alpha_power) * den);
    const double rhs = -s * c.d0 / re2 + b_ps * pot.v2 + 0.25 * al2 * sq(inner);
    return {Status::ok, (a_ps - rhs) / al2};
}

// Equal scalar and vector mixing is the spin form with A^2 = M^2 - E^2, B = M + E.
Value kg_value(double E, int n, const RosenMorseGeneral& pot, int l, double M, const PekerisCoefficients& c) {
    const SpinForm f{l * (l + 1.0), M * M - E * E, M + E, pot.v1, pot.v2, pot.alpha};
    const SpinFormEval ev = eval_spin_form(f, c, n);
    return {ev.status, ev.residual};
}

Value spin_reflectionless_value(double E, int n, const ReflectionlessParams& pot, const SymmetrySector& sector,
                                const PekerisCoefficients& c) {
    const double M = sector.mass, C = sector.c_const, k = sector.kappa;
    const double al2 = pot.alpha * pot.alpha;
    const double re2 = c.r_e * c.r_e;
    const double lhs = M * M - E * E - C * (M - E);
    const double bs = M + E - C;
    const double rad = 1.0 + k * (k + 1.0) * c.d2 / (al2 * re2) + 4.0 * pot.a2 * bs / al2;
    if (!(rad >= 0.0)) return imaginary();
    const double den = 2.0 * n + 1.0 - std::sqrt(rad);
    if (den == 0.0) return pole();
    const double rhs =
        -k * (k + 1.0) * c.d0 / re2 + al2 / 4.0 * sq(den + k * (k + 1.0) * (c.d1 - c.d2) / re2 / (al2 * den));
    return {Status::ok, (lhs - rhs) / al2};
}

Value pspin_reflectionless_value(double E, int n, const ReflectionlessParams& pot, const SymmetrySector& sector,
                                 const PekerisCoefficients& c) {
    const double M = sector.mass, C = sector.c_const, k = sector.kappa;
    const double al2 = pot.alpha * pot.alpha;
    const double re2 = c.r_e * c.r_e;
    const double lhs = M * M - E * E + C * (M + E);
    const double bps = M - E + C;
    const double rad = 1.0 + k * (k - 1.0) * c.d2 / (al2 * re2) - 4.0 * pot.a2 * bps / al2;
    if (!(rad >= 0.0)) return imaginary();
    const double den = 2.0 * n + 1.0 - std::sqrt(rad);
    if (den == 0.0) return pole();
    const double rhs =
        -k * (k - 1.0) * c.d0 / re2 + al2 / 4.0 * sq(den + k * (k - 1.0) * (c.d1 - c.d2) / re2 / (al2 * den));
    return {Status::ok, (lhs - rhs) / al2};
}

Value spin_standard_value(double E, int n, const StandardRMParams& pot, const SymmetrySector& sector,
                          const PekerisCoefficients& c) {
    const double M = sector.mass, C = sector.c_const, k = sector.kappa;
    const double a = pot.a, b = pot.b, al = pot.alpha, al2 = al * al;
    const double re2 = c.r_e * c.r_e;
    const double lhs = M * M - E * E - C * (M - E);
    const double bs = M + E - C;
    const double rad = 1.0 + k * (k + 1.0) * c.d2 / (al2 * re2) + 4.0 * a * (a + al) * bs / al2;
    if (!(rad >= 0.0)) return imaginary();
    const double den = 2.0 * n + 1.0 - std::sqrt(rad);
    if (den == 0.0) return pole();
    const double rhs = -k * (k + 1.0) * c.d0 / re2 - 2.0 * b * bs +
                       al2 / 4.0 * sq(den + (k * (k + 1.0) * (c.d1 - c.d2) / re2 + 4.0 * b * bs) / (al2 * den));
    return {Status::ok, (lhs - rhs) / al2};
}

Value pspin_standard_value(double E, int n, const StandardRMParams& pot, const SymmetrySector& sector,
                           const PekerisCoefficients& c) {
    const double M = sector.mass, C = sector.c_const, k = sector.kappa;
    const double a = pot.a, b = pot.b, al = pot.alpha, al2 = al * al;
    const double re2 = c.r_e * c.r_e;
    const double lhs = M * M - E * E + C * (M + E);
    const double bps = M - E + C;
    const double rad = 1.0 + k * (k - 1.0) * c.d2 / (al2 * re2) - 4.0 * a * (a + al) * bps / al2;
    if (!(rad >= 0.0)) return imaginary();
    const double den = 2.0 * n + 1.0 - std::sqrt(rad);
    if (den == 0.0) return pole();
    const double rhs = -k * (k - 1.0) * c.d0 / re2 + 2.0 * b * bps +
                       al2 / 4.0 * sq(den + (k * (k - 1.0) * (c.d1 - c.d2) / re2 - 4.0 * b * bps) / (al2 * den));
    return {Status::ok, (lhs - rhs) / al2};
}

struct TrigEval {
    Status status = Status::ok;
    double residual = 0.0;
    double q = 0.0;
    double shift = 0.0;
};

TrigEval trig_eval(double E, int n, const TrigRMParams& pot, const SymmetrySector& sector, TrigBranch branch) {
    TrigEval out;
    const double M = sector.mass, C = sector.c_const;
    const double al = pot.alpha(), al2 = al * al;
    const double bs = M + E - C;
    const double rad = 1.0 - 4.0 * pot.v1 * bs / al2;
    if (!(rad >= 0.0)) {
        out.status = Status::imaginary;
        return out;
    }
    out.q = std::sqrt(rad);
    out.shift = branch == TrigBranch::regular ? n + 0.5 + 0.5 * out.q : n + 0.5 - 0.5 * out.q;
    if (out.shift == 0.0) {
        out.status = Status::pole;
        return out;
    }
    const double lhs = M * M - E * E - (M - E) * C;
    const double rhs = -al2 * sq(out.shift) + sq(pot.v2 / (2.0 * al)) * sq(bs / out.shift);
    out.residual = (lhs - rhs) / al2;
    return out;
}

void require_trig_sector(const SymmetrySector& sector) {
    if (sector.kind != Symmetry::spin || sector.kappa != -1)
        throw InvalidArgument("trig_rm: only the spin-symmetric s-wave (kappa = -1) energy equation is available");
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Value dispatch(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& c, int n, double E,
               TrigBranch branch) {
    const bool spin = sector.kind == Symmetry::spin;
    return std::visit(overloaded{
                          [&](const RosenMorseGeneral& p) {
                              return spin ? spin_rm_value(E, n, p, sector, c) : pspin_rm_value(E, n, p, sector, c, 1.0);
                          },
                          [&](const ReflectionlessParams& p) {
                              return spin ? spin_reflectionless_value(E, n, p, sector, c)
                                          : pspin_reflectionless_value(E, n, p, sector, c);
                          },
                          [&](const StandardRMParams& p) {
                              return spin ? spin_standard_value(E, n, p, sector, c)
                                          : pspin_standard_value(E, n, p, sector, c);
                          },
                          [&](const TrigRMParams& p) {
                              require_trig_sector(sector);
                              const TrigEval t = trig_eval(E, n, p, sector, branch);
                              return Value{t.status, t.residual};
                          },
                      },
                      pot);
}

}  // namespace

std::string to_string(Symmetry kind) { return kind == Symmetry::spin ? "spin" : "pspin"; }

Symmetry symmetry_from_string(const std::string& name) {
    if (name == "spin") return Symmetry::spin;
    if (name == "pspin") return Symmetry::pspin;
    throw InvalidArgument("sector.kind must be 'spin' or 'pspin', got '" + name + "'");
}

double SymmetrySector::centrifugal_strength() const {
    const double k = kappa;
    return kind == Symmetry::spin ? k * (k + 1.0) : k * (k - 1.0);
}

int SymmetrySector::orbital_number() const {
    if (kind == Symmetry::spin) return kappa < 0 ? -kappa - 1 : kappa;
    return kappa > 0 ? kappa - 1 : -kappa;
}

void validate(const SymmetrySector& sector) {
    if (sector.kappa == 0) throw InvalidArgument("sector: kappa must be a nonzero integer");
    if (!(std::isfinite(sector.mass) && sector.mass > 0.0)) throw InvalidArgument("sector: M must be > 0");
    if (!std::isfinite(sector.c_const)) throw InvalidArgument("sector: C must be finite");
}

EffectiveCoefficients effective_coefficients(const SymmetrySector& sector, double E) {
    const double M = sector.mass, C = sector.c_const;
    if (sector.kind == Symmetry::spin) return {M * M - E * E - (M - E) * C, M + E - C};
    return {M * M - E * E + (M + E) * C, M - E + C};
}

double spin_residual_rm(double energy, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                        const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::spin, "spin_residual_rm");
    return unwrap(spin_rm_value(energy, n, pot, sector, coeffs), "spin_residual_rm");
}

double pspin_residual_rm(double energy, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                         const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::pspin, "pspin_residual_rm");
    return unwrap(pspin_rm_value(energy, n, pot, sector, coeffs, 1.0), "pspin_residual_rm");
}

double pspin_residual_rm_printed(double energy, int n, const RosenMorseGeneral& pot, const SymmetrySector& sector,
                                 const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::pspin, "pspin_residual_rm_printed");
    return unwrap(pspin_rm_value(energy, n, pot, sector, coeffs, 2.0), "pspin_residual_rm_printed");
}

double kg_residual(double energy, int n, const RosenMorseGeneral& pot, int l, double mass,
                   const PekerisCoefficients& coeffs) {
    if (l < 0) throw InvalidArgument("kg_residual: l must be >= 0");
    return unwrap(kg_value(energy, n, pot, l, mass, coeffs), "kg_residual");
}

double spin_residual_reflectionless(double energy, int n, const ReflectionlessParams& pot,
                                    const SymmetrySector& sector, const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::spin, "spin_residual_reflectionless");
    return unwrap(spin_reflectionless_value(energy, n, pot, sector, coeffs), "spin_residual_reflectionless");
}

double pspin_residual_reflectionless(double energy, int n, const ReflectionlessParams& pot,
                                     const SymmetrySector& sector, const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::pspin, "pspin_residual_reflectionless");
    return unwrap(pspin_reflectionless_value(energy, n, pot, sector, coeffs), "pspin_residual_reflectionless");
}

double spin_residual_standard_rm(double energy, int n, const StandardRMParams& pot, const SymmetrySector& sector,
                                 const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::spin, "spin_residual_standard_rm");
    return unwrap(spin_standard_value(energy, n, pot, sector, coeffs), "spin_residual_standard_rm");
}

double pspin_residual_standard_rm(double energy, int n, const StandardRMParams& pot, const SymmetrySector& sector,
                                  const PekerisCoefficients& coeffs) {
    require_kind(sector, Symmetry::pspin, "pspin_residual_standard_rm");
    return unwrap(pspin_standard_value(energy, n, pot, sector, coeffs), "pspin_residual_standard_rm");
}

namespace swave {

double spin_reflectionless(double E, int n, const ReflectionlessParams& pot, double M, double C) {
    const double al2 = pot.alpha * pot.alpha;
    const double rad = 1.0 + 4.0 * pot.a2 / al2 * (M + E - C);
    if (!(rad >= 0.0)) throw DomainError("swave::spin_reflectionless: negative radicand");
    return (M * M - E * E - (M - E) * C - al2 * sq(n + 0.5 - 0.5 * std::sqrt(rad))) / al2;
}

double pspin_reflectionless(double E, int n, const ReflectionlessParams& pot, double M, double C) {
    const double al2 = pot.alpha * pot.alpha;
    const double rad = 1.0 - 4.0 * pot.a2 / al2 * (M - E + C);
    if (!(rad >= 0.0)) throw DomainError("swave::pspin_reflectionless: negative radicand");
    return (M * M - E * E + C * (M + E) - al2 * sq(n + 0.5 - 0.5 * std::sqrt(rad))) / al2;
}

double spin_standard_rm(double E, int n, const StandardRMParams& pot, double M, double C) {
    const double al2 = pot.alpha * pot.alpha;
    const double bs = M + E - C;
    const double rad = 1.0 + 4.0 * pot.a * (pot.a + pot.alpha) / al2 * bs;
    if (!(rad >= 0.0)) throw DomainError("swave::spin_standard_rm: negative radicand");
    const double nb = n + 0.5 - 0.5 * std::sqrt(rad);
    if (nb == 0.0) throw PoleError("swave::spin_standard_rm: quantization denominator vanishes");
    return (M * M - E * E - C * (M - E) + 2.0 * pot.b * bs - al2 * sq(nb + pot.b * bs / (al2 * nb))) / al2;
}

double pspin_standard_rm(double E, int n, const StandardRMParams& pot, double M, double C) {
    const double al2 = pot.alpha * pot.alpha;
    const double bps = M - E + C;
    const double rad = 1.0 - 4.0 * pot.a * (pot.a + pot.alpha) / al2 * bps;
    if (!(rad >= 0.0)) throw DomainError("swave::pspin_standard_rm: negative radicand");
    const double nb = n + 0.5 - 0.5 * std::sqrt(rad);
    if (nb == 0.0) throw PoleError("swave::pspin_standard_rm: quantization denominator vanishes");
    return (M * M - E * E + C * (M + E) - 2.0 * pot.b * bps - al2 * sq(nb - pot.b * bps / (al2 * nb))) / al2;
}

}  // namespace swave

double swave_trig_rm_residual(double energy, int n, const TrigRMParams& pot, const SymmetrySector& sector,
                              TrigBranch branch) {
    require_trig_sector(sector);
    const TrigEval t = trig_eval(energy, n, pot, sector, branch);
    if (t.status == Status::imaginary) throw DomainError("swave_trig_rm_residual: 4 v1 (M + E - C) exceeds alpha^2");
    if (t.status == Status::pole) throw PoleError("swave_trig_rm_residual: quantization denominator vanishes");
    return t.residual;
}

double residual(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs, int n,
                double energy, TrigBranch branch) {
    return unwrap(dispatch(pot, sector, coeffs, n, energy, branch), "residual");
}

std::optional<double> try_residual(const PotentialSpec& pot, const SymmetrySector& sector,
                                   const PekerisCoefficients& coeffs, int n, double energy, TrigBranch branch) {
    const Value v = dispatch(pot, sector, coeffs, n, energy, branch);
    if (v.status != Status::ok) return std::nullopt;
    return v.v;
}

NUParameters nu_parameters(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                           int n, double energy, TrigBranch branch) {
    if (const auto* trig = std::get_if<TrigRMParams>(&pot)) {
        require_trig_sector(sector);
        const TrigEval t = trig_eval(energy, n, *trig, sector, branch);
        if (t.status == Status::imaginary) throw DomainError("nu_parameters: q is imaginary at this energy");
        NUParameters nu;
        nu.q = t.q;
        nu.shift = t.shift;
        // Wall exponent of the chosen branch: (1 + q)/2 regular, (1 - q)/2 printed.
        nu.a0 = branch == TrigBranch::regular ? 0.5 * (1.0 + t.q) : 0.5 * (1.0 - t.q);
        nu.bracket = t.shift;
        return nu;
    }
    const SpinFormEval ev = eval_spin_form(spin_form(to_general(pot), sector, energy), coeffs, n);
    if (ev.status == Status::imaginary) throw DomainError("nu_parameters: q is imaginary at this energy");
    return ev.nu;
}

AdmissibilityFlags admissibility(const PotentialSpec& pot, const NUParameters& nu) {
    AdmissibilityFlags f;
    f.q_real = std::isfinite(nu.q);
    f.a0_positive = std::isfinite(nu.a0) && nu.a0 > 0.0;
    if (is_trigonometric(pot)) {
        f.bracket_negative = nu.shift != 0.0;
        f.left_decay = true;
        return f;
    }
    f.bracket_negative = nu.shift != 0.0 && nu.bracket < 0.0;
    f.left_decay = f.a0_positive && nu.shift + nu.a0 < 0.0;
    return f;
}

EnergyLevel make_level(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                       int n, double energy, TrigBranch branch) {
    EnergyLevel lv;
    lv.n = n;
    lv.kappa = sector.kappa;
    lv.energy = energy;
    lv.residual = residual(pot, sector, coeffs, n, energy, branch);
    lv.nu = nu_parameters(pot, sector, coeffs, n, energy, branch);
    lv.flags = admissibility(pot, lv.nu);
    lv.admissible = lv.flags.q_real && lv.flags.a0_positive && lv.flags.bracket_negative && lv.flags.left_decay;
    return lv;
}

// ---------------------------------------------------------------------------

namespace {

struct NonrelParts {
    double shift, bracket;
};

NonrelParts nonrel_parts(int n, int l, double strength_v1, double b, double alpha, double mu,
                         const PekerisCoefficients& c, double denom_factor) {
    if (n < 0 || l < 0) throw InvalidArgument("nonrel_energy: n and l must be >= 0");
    if (!(mu > 0.0)) throw InvalidArgument("nonrel_energy: mu must be > 0");
    const double s = l * (l + 1.0);
    const double al2 = alpha * alpha;
    const double re2 = c.r_e * c.r_e;
    const double rad = 1.0 + s * c.d2 / (al2 * re2) + 8.0 * mu * strength_v1 / al2;
    if (!(rad >= 0.0)) throw NoBoundStateError("nonrel_energy: q is imaginary");
    const double shift = n + 0.5 - 0.5 * std::sqrt(rad);
    if (shift == 0.0) throw PoleError("nonrel_energy: quantization denominator vanishes");
    if (!(shift < 0.0)) throw NoBoundStateError("nonrel_energy: n + 1/2 - q/2 must be negative");
    const double bracket = shift + (s * (c.d1 - c.d2) / re2 + 8.0 * mu * b) / (denom_factor * al2 * shift);
    return {shift, bracket};
}

double nonrel_finish(const NonrelParts& p, int l, double b, double alpha, double mu, const PekerisCoefficients& c) {
    const double s = l * (l + 1.0);
    // Decay exponent s1 = -bracket / 2 must be positive and dominate the
    // polynomial growth at the far side.
    if (!(p.bracket < 0.0)) throw NoBoundStateError("nonrel_energy: decay exponent is not positive");
    if (!(p.shift - 0.5 * p.bracket < 0.0)) throw NoBoundStateError("nonrel_energy: solution not normalizable");
    return s * c.d0 / (2.0 * mu * c.r_e * c.r_e) + 2.0 * b - alpha * alpha / (2.0 * mu) * sq(p.bracket);
}

}  // namespace

double nonrel_energy_reflectionless(int n, int l, double a2, double alpha, double mu,
                                    const PekerisCoefficients& coeffs) {
    if (!(a2 > 0.0) || !(alpha > 0.0)) throw InvalidArgument("nonrel_energy_reflectionless: a2, alpha must be > 0");
    const NonrelParts p = nonrel_parts(n, l, a2, 0.0, alpha, mu, coeffs, 4.0);
    return nonrel_finish(p, l, 0.0, alpha, mu, coeffs);
}

double nonrel_energy_rm(int n, int l, const StandardRMParams& params, double mu, const PekerisCoefficients& coeffs) {
    validate(PotentialSpec{params});
    const NonrelParts p =
        nonrel_parts(n, l, params.a * (params.a + params.alpha), params.b, params.alpha, mu, coeffs, 4.0);
    return nonrel_finish(p, l, params.b, params.alpha, mu, coeffs);
}

double nonrel_energy_rm_printed(int n, int l, const StandardRMParams& params, double mu,
                                const PekerisCoefficients& coeffs) {
    validate(PotentialSpec{params});
    const NonrelParts p =
        nonrel_parts(n, l, params.a * (params.a + params.alpha), params.b, params.alpha, mu, coeffs, 1.0);
    return coeffs.d0 * l * (l + 1.0) / (2.0 * mu * coeffs.r_e * coeffs.r_e) + 2.0 * params.b -
           params.alpha * params.alpha / (2.0 * mu) * sq(p.bracket);
}

// ---------------------------------------------------------------------------

std::pair<double, double> energy_window(const PotentialSpec& pot, const SymmetrySector& sector,
                                        const PekerisCoefficients& coeffs, int n_max, const SearchConfig& search) {
    const double M = sector.mass, C = sector.c_const;
    const double guard = search.guard * std::max(1.0, M);
    double lo = 0.0, hi = 0.0;
    if (const auto* trig = std::get_if<TrigRMParams>(&pot)) {
        const double al = trig->alpha();
        lo = -M + C + guard;
        const double clip = al * al / (4.0 * trig->v1) - M + C;
        const double growth = 0.5 * C + std::sqrt(sq(M - 0.5 * C) + sq(al * (n_max + 2.0)));
        hi = std::min(clip, growth);
    } else {
        const RosenMorseGeneral g = to_general(pot);
        const double s = sector.centrifugal_strength();
        const double cent = std::abs(s * coeffs.d0) / (coeffs.r_e * coeffs.r_e);
        if (sector.kind == Symmetry::spin) {
            lo = -M + C + guard;
            hi = M + std::abs(g.v2) + cent / std::max(std::abs(2.0 * M - C), 1e-300) + guard;
        } else {
            lo = -(M + std::abs(g.v2) + cent / std::max(std::abs(2.0 * M + C), 1e-300) + guard);
            hi = M + C - guard;
        }
    }
    if (search.e_min) lo = *search.e_min;
    if (search.e_max) hi = *search.e_max;
    return {lo, hi};
}

namespace {

struct ScanPoint {
    double e;
    bool defined;
    double res;
    double shift;
};

double shift_at(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs, int n,
                double e, TrigBranch branch, bool& ok) {
    try {
        ok = true;
        return nu_parameters(pot, sector, coeffs, n, e, branch).shift;
    } catch (const DomainError&) {
        ok = false;
        return 0.0;
    }
}

ScanPoint sample(const PotentialSpec& pot, const SymmetrySector& sector, const PekerisCoefficients& coeffs, int n,
                 double e, TrigBranch branch) {
    ScanPoint p{e, false, 0.0, 0.0};
    bool ok = false;
    p.shift = shift_at(pot, sector, coeffs, n, e, branch, ok);
    if (!ok) return p;
    const auto r = try_residual(pot, sector, coeffs, n, e, branch);
    if (r && std::isfinite(*r)) {
        p.defined = true;
        p.res = *r;
    }
    return p;
}

bool converged(double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    return hi - lo <= tol || mid <= lo || mid >= hi;
}

// Bisection on a sign change of f between lo and hi (f(lo) has sign of flo).
template <class F>
std::pair<double, double> bisect(F&& f, double lo, double hi, double flo, double tol, int max_iter) {
    for (int it = 0; !converged(lo, hi, tol); ++it) {
        if (it >= max_iter) throw ConvergenceError("find_levels: bisection exceeded its iteration cap");
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return {mid, mid};
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

std::vector<EnergyLevel> levels_for_n(const PotentialSpec& pot, const SymmetrySector& sector,
                                      const PekerisCoefficients& coeffs, int n, double lo, double hi,
                                      const SearchConfig& search) {
    const TrigBranch br = search.trig_branch;
    auto res = [&](double e) {
        const auto r = try_residual(pot, sector, coeffs, n, e, br);
        return r ? *r : std::numeric_limits<double>::quiet_NaN();
    };

    std::vector<ScanPoint> grid;
    grid.reserve(static_cast<std::size_t>(search.scan_points));
    for (int i = 0; i < search.scan_points; ++i) {
        const double e = lo + (hi - lo) * i / (search.scan_points - 1.0);
        grid.push_back(sample(pot, sector, coeffs, n, e, br));
    }

    std::vector<double> roots;
    auto refine = [&](double a, double b, double fa, double fb) {
        if (!(std::isfinite(fa) && std::isfinite(fb))) return;
        if (fa == 0.0) {
            roots.push_back(a);
            return;
        }
        if ((fa < 0.0) == (fb < 0.0)) return;
        const auto [l, h] = bisect(res, a, b, fa, search.tol, search.max_bisection);
        const double root = 0.5 * (l + h);
        // A sign change produced by a jump through infinity is not a root.
        const double fr = res(root);
        if (std::isfinite(fr) && std::abs(fr) <= std::max(std::abs(fa), std::abs(fb))) roots.push_back(root);
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const ScanPoint& p = grid[i];
        const ScanPoint& q = grid[i + 1];
        if (!(p.defined && q.defined)) continue;
        if ((p.shift < 0.0) != (q.shift < 0.0)) {
            // Split at the zero of the quantization denominator.
            auto shift_fn = [&](double e) {
                bool ok = false;
                const double s = shift_at(pot, sector, coeffs, n, e, br, ok);
                return ok ? s : std::numeric_limits<double>::quiet_NaN();
            };
            const auto [pl, ph] = bisect(shift_fn, p.e, q.e, p.shift, search.tol, search.max_bisection);
            refine(p.e, pl, p.res, res(pl));
            refine(ph, q.e, res(ph), q.res);
        } else {
            refine(p.e, q.e, p.res, q.res);
        }
    }
    if (!grid.empty() && grid.back().defined && grid.back().res == 0.0) roots.push_back(grid.back().e);

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<EnergyLevel> out;
    for (double e : roots) out.push_back(make_level(pot, sector, coeffs, n, e, br));
    return out;
}

}  // namespace

std::vector<EnergyLevel> find_levels(const PotentialSpec& pot, const SymmetrySector& sector,
                                     const PekerisCoefficients& coeffs, int n_max, const SearchConfig& search) {
    validate(pot);
    validate(sector);
    if (n_max < 0) throw InvalidArgument("find_levels: n_max must be >= 0");
    if (search.scan_points < 2) throw InvalidArgument("find_levels: scan_points must be >= 2");
    if (!(search.tol > 0.0)) throw InvalidArgument("find_levels: tol must be > 0");
    if (is_trigonometric(pot)) require_trig_sector(sector);
    if (!is_trigonometric(pot) && sector.centrifugal_strength() != 0.0 &&
        std::abs(coeffs.alpha - range_parameter(pot)) > 1e-12 * range_parameter(pot))
        throw InvalidArgument("find_levels: Pekeris coefficients were built for a different alpha");

    const auto [lo, hi] = energy_window(pot, sector, coeffs, n_max, search);
    if (!(hi > lo)) return {};

    std::vector<std::vector<EnergyLevel>> per_n(static_cast<std::size_t>(n_max) + 1);
    if (search.parallel) {
        std::vector<std::future<std::vector<EnergyLevel>>> jobs;
        for (int n = 0; n <= n_max; ++n)
            jobs.push_back(std::async(std::launch::async, levels_for_n, std::cref(pot), std::cref(sector),
                                      std::cref(coeffs), n, lo, hi, std::cref(search)));
        for (int n = 0; n <= n_max; ++n) per_n[static_cast<std::size_t>(n)] = jobs[static_cast<std::size_t>(n)].get();
    } else {
        for (int n = 0; n <= n_max; ++n) per_n[static_cast<std::size_t>(n)] = levels_for_n(pot, sector, coeffs, n, lo, hi, search);
    }

    std::vector<EnergyLevel> all;
    for (auto& v : per_n) all.insert(all.end(), v.begin(), v.end());
    std::stable_sort(all.begin(), all.end(), [](const EnergyLevel& a, const EnergyLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.n < b.n;
    });
    return all;
}

}  // namespace rmdirac
