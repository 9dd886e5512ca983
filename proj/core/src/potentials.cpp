#include "rmdirac/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rmdirac/errors.hpp"

namespace rmdirac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

double sech2_tanh_form(double v1, double v2, double x) {
    const double c = std::cosh(x);
    return -v1 / (c * c) + v2 * std::tanh(x);
}

}  // namespace

ReflectionlessParams ReflectionlessParams::from_lambda(int lambda, double alpha) {
    require(lambda >= 1, "reflectionless: lambda must be a positive integer");
    return ReflectionlessParams{0.5 * lambda * (lambda + 1.0), alpha, lambda};
}

double TrigRMParams::alpha() const { return std::numbers::pi / (2.0 * half_width); }

void validate(const PotentialSpec& spec) {
    std::visit(
        overloaded{
            [](const RosenMorseGeneral& p) {
                require(std::isfinite(p.v1) && std::isfinite(p.v2), "rosen_morse: v1, v2 must be finite");
                require(std::isfinite(p.alpha) && p.alpha > 0.0, "rosen_morse: alpha must be > 0");
            },
            [](const ReflectionlessParams& p) {
                require(std::isfinite(p.a2) && p.a2 > 0.0, "reflectionless: a2 must be > 0");
                require(std::isfinite(p.alpha) && p.alpha > 0.0, "reflectionless: alpha must be > 0");
                if (p.lambda) {
                    require(*p.lambda >= 1, "reflectionless: lambda must be a positive integer");
                    const double expected = 0.5 * *p.lambda * (*p.lambda + 1.0);
                    require(std::abs(p.a2 - expected) <= 1e-12 * expected,
                            "reflectionless: a2 must equal lambda (lambda + 1) / 2");
                }
            },
            [](const StandardRMParams& p) {
                require(std::isfinite(p.a) && std::isfinite(p.b), "standard_rm: a, b must be finite");
                require(std::isfinite(p.alpha) && p.alpha > 0.0, "standard_rm: alpha must be > 0");
                require(p.a * (p.a + p.alpha) > 0.0, "standard_rm: a (a + alpha) must be > 0");
            },
            [](const TrigRMParams& p) {
                require(std::isfinite(p.v1) && std::isfinite(p.v2), "trig_rm: v1, v2 must be finite");
                require(p.v1 > 0.0, "trig_rm: v1 must be > 0");
                require(std::isfinite(p.half_width) && p.half_width > 0.0, "trig_rm: half_width must be > 0");
            },
        },
        spec);
}

std::string potential_kind(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const RosenMorseGeneral&) { return std::string("rosen_morse"); },
                          [](const ReflectionlessParams&) { return std::string("reflectionless"); },
                          [](const StandardRMParams&) { return std::string("standard_rm"); },
                          [](const TrigRMParams&) { return std::string("trig_rm"); },
                      },
                      spec);
}

double range_parameter(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const TrigRMParams& p) { return p.alpha(); },
                          [](const auto& p) { return p.alpha; },
                      },
                      spec);
}

bool is_trigonometric(const PotentialSpec& spec) { return std::holds_alternative<TrigRMParams>(spec); }

RosenMorseGeneral to_general(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [](const RosenMorseGeneral& p) { return p; },
                          [](const ReflectionlessParams& p) { return RosenMorseGeneral{p.a2, 0.0, p.alpha}; },
                          [](const StandardRMParams& p) {
                              return RosenMorseGeneral{p.a * (p.a + p.alpha), 2.0 * p.b, p.alpha};
                          },
                          [](const TrigRMParams&) -> RosenMorseGeneral {
                              throw InvalidArgument("trig_rm has no hyperbolic (v1, v2, alpha) form");
                          },
                      },
                      spec);
}

double eval_potential(const PotentialSpec& spec, double r, const PotentialEvalOptions& opts) {
    if (!std::isfinite(r)) throw DomainError("potential: r must be finite");
    if (const auto* trig = std::get_if<TrigRMParams>(&spec)) {
        if (std::abs(r) > trig->half_width) {
            std::ostringstream os;
            os << "trig_rm: x=" << r << " outside [-" << trig->half_width << ", " << trig->half_width << "]";
            throw DomainError(os.str());
        }
        const double c = std::cos(trig->alpha() * r);
        const double sec2 = 1.0 / (c * c);
        if (!(sec2 <= opts.sec2_cap)) throw DomainError("trig_rm: sec^2 exceeds cap near the wall");
        return -trig->v1 * sec2 + trig->v2 * std::tan(trig->alpha() * r);
    }
    if (r < 0.0 && !opts.full_line) throw DomainError("potential: radial argument must be >= 0");
    const RosenMorseGeneral g = to_general(spec);
    return sech2_tanh_form(g.v1, g.v2, g.alpha * r);
}

double eval_potential_exponential(const RosenMorseGeneral& pot, double r) {
    if (r < 0.0) throw DomainError("potential: radial argument must be >= 0");
    const double z = std::exp(-2.0 * pot.alpha * r);
    const double opz = 1.0 + z;
    return -4.0 * pot.v1 * z / (opz * opz) + pot.v2 * (1.0 - z) / opz;
}

std::string to_string(PekerisSource source) {
    return source == PekerisSource::formulas ? "formulas" : "taylor";
}

PekerisSource pekeris_source_from_string(const std::string& name) {
    if (name == "formulas") return PekerisSource::formulas;
    if (name == "taylor") return PekerisSource::taylor;
    throw InvalidArgument("pekeris.source must be 'formulas' or 'taylor', got '" + name + "'");
}

PekerisCoefficients pekeris_from_formulas(double alpha, double r_e, double exponent_cap) {
    require(alpha > 0.0, "pekeris: alpha must be > 0");
    require(r_e > 0.0, "pekeris: r_e must be > 0");
    const double x = alpha * r_e;
    if (2.0 * x > exponent_cap) throw DomainError("pekeris: 2 alpha r_e exceeds the exponent cap");

    const double em = std::exp(-2.0 * x);
    const double ep = std::exp(2.0 * x);
    const double f = (1.0 + em) / (2.0 * x);

    PekerisCoefficients c;
    c.d0 = 1.0 - f * f * (8.0 * x / (1.0 + em) - (3.0 + 2.0 * x));
    c.d1 = -2.0 * (ep + 1.0) * (3.0 * f - (3.0 + 2.0 * x) * f);
    c.d2 = (ep + 1.0) * (ep + 1.0) * f * f * (3.0 + 2.0 * x - 4.0 * x / (1.0 + em));
    c.r_e = r_e;
    c.alpha = alpha;
    c.source = PekerisSource::formulas;
    return c;
}

double pekeris_variable(double alpha, double r) { return -1.0 / (1.0 + std::exp(2.0 * alpha * r)); }

namespace {

// u and its first two r-derivatives; u' = -2 alpha u (1 + u).
struct UDerivs {
    double u, du, d2u;
};

UDerivs u_derivs(double alpha, double r) {
    const double u = pekeris_variable(alpha, r);
    const double du = -2.0 * alpha * u * (1.0 + u);
    const double d2u = -2.0 * alpha * du * (1.0 + 2.0 * u);
    return {u, du, d2u};
}

}  // namespace

PekerisCoefficients pekeris_from_taylor_match(double alpha, double r_e) {
    require(alpha > 0.0, "pekeris: alpha must be > 0");
    require(r_e > 0.0, "pekeris: r_e must be > 0");
    const auto [u, du, d2u] = u_derivs(alpha, r_e);

    // Rows: value, first and second derivative of d0 + d1 u + d2 u^2 against
    // r_e^2 / r^2.  The lower 2x2 block has determinant 2 u'^3.
    const double rhs1 = -2.0 / r_e;
    const double rhs2 = 6.0 / (r_e * r_e);
    const double det = 2.0 * du * du * du;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) throw DomainError("pekeris: singular matching system");

    PekerisCoefficients c;
    c.d2 = (du * rhs2 - d2u * rhs1) / det;
    c.d1 = (rhs1 * (2.0 * du * du + 2.0 * u * d2u) - 2.0 * u * du * rhs2) / det;
    c.d0 = 1.0 - c.d1 * u - c.d2 * u * u;
    c.r_e = r_e;
    c.alpha = alpha;
    c.source = PekerisSource::taylor;
    return c;
}

std::array<double, 3> taylor_match_mismatch(const PekerisCoefficients& c) {
    const auto [u, du, d2u] = u_derivs(c.alpha, c.r_e);
    const double re2 = c.r_e * c.r_e;
    const double value = (c.d0 + c.d1 * u + c.d2 * u * u) / re2;
    const double first = (c.d1 * du + 2.0 * c.d2 * u * du) / re2;
    const double second = (c.d1 * d2u + c.d2 * (2.0 * du * du + 2.0 * u * d2u)) / re2;

    const double t0 = 1.0 / re2;
    const double t1 = -2.0 / (re2 * c.r_e);
    const double t2 = 6.0 / (re2 * re2);
    return {std::abs(value - t0) / std::abs(t0), std::abs(first - t1) / std::abs(t1),
            std::abs(second - t2) / std::abs(t2)};
}

double taylor_match_system_residual(const PekerisCoefficients& c) {
    const auto [u, du, d2u] = u_derivs(c.alpha, c.r_e);
    const double r0 = c.d0 + c.d1 * u + c.d2 * u * u - 1.0;
    const double r1 = c.d1 * du + 2.0 * c.d2 * u * du + 2.0 / c.r_e;
    const double r2 = c.d1 * d2u + c.d2 * (2.0 * du * du + 2.0 * u * d2u) - 6.0 / (c.r_e * c.r_e);
    return std::max({std::abs(r0), std::abs(r1), std::abs(r2)});
}

double equilibrium_radius(const RosenMorseGeneral& pot) {
    require(pot.v1 > 0.0, "equilibrium_radius: v1 must be > 0");
    require(pot.alpha > 0.0, "equilibrium_radius: alpha must be > 0");
    const double ratio = -pot.v2 / (2.0 * pot.v1);
    if (!(ratio > 0.0 && ratio < 1.0)) {
        std::ostringstream os;
        os << "equilibrium_radius: no interior minimum for r > 0 (tanh(alpha r_e) = " << ratio
           << "); supply r_e explicitly";
        throw DomainError(os.str());
    }
    return std::atanh(ratio) / pot.alpha;
}

double centrifugal_approx(const PekerisCoefficients& c, double strength, double r) {
    if (strength == 0.0) return 0.0;
    const double u = pekeris_variable(c.alpha, r);
    const double v = strength * (c.d0 + c.d1 * u + c.d2 * u * u) / (c.r_e * c.r_e);
    if (!std::isfinite(v)) throw DomainError("centrifugal_approx: overflow");
    return v;
}

}  // namespace rmdirac
