#include "rmdirac/spinors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rmdirac/errors.hpp"
#include "rmdirac/quadrature.hpp"
#include "rmdirac/specfun.hpp"

namespace rmdirac {

SpinorModel::SpinorModel(const EnergyLevel& level, const PotentialSpec& pot, const SymmetrySector& sector,
                         const PekerisCoefficients& coeffs)
    : level_(level), pot_(pot), sector_(sector), coeffs_(coeffs) {
    if (is_trigonometric(pot)) throw InvalidArgument("spinors: no closed-form wavefunction for trig_rm");
    if (level.kappa != sector.kappa) throw InvalidArgument("spinors: level and sector disagree on kappa");
    alpha_ = range_parameter(pot);
    const NUParameters nu = nu_parameters(pot, sector, coeffs, level.n, level.energy);
    if (!(std::isfinite(nu.q))) throw DomainError("spinors: q is not real for this level");
    if (!(std::isfinite(nu.a0) && nu.a0 > 0.0)) throw DomainError("spinors: a0 must be real and > 0");
    a0_ = nu.a0;
    nu_ = 0.5 * (1.0 - nu.q);
    b_ = level.n + 2.0 * a0_ + 1.0 - nu.q;
    c_ = 1.0 + 2.0 * a0_;
    eff_ = effective_coefficients(sector, level.energy);
    partner_den_ = eff_.b_lin;
}

double SpinorModel::polynomial(double z) const { return specfun::hyp2f1_terminating(level_.n, b_, c_, -z); }

SpinorModel::Sample SpinorModel::solved(double r) const {
    const double z = std::exp(-2.0 * alpha_ * r);
    const int n = level_.n;
    const double y = polynomial(z);
    // d/dz 2F1(-n, b; c; -z) = (n b / c) 2F1(1 - n, b + 1; c + 1; -z)
    const double yz = n == 0 ? 0.0 : n * b_ / c_ * specfun::hyp2f1_terminating(n - 1, b_ + 1.0, c_ + 1.0, -z);
    const double env = std::exp(-2.0 * alpha_ * a0_ * r) * std::pow(1.0 + z, nu_);
    Sample s;
    s.value = env * y;
    s.derivative = env * (-2.0 * alpha_ * (a0_ + nu_ * z / (1.0 + z)) * y - 2.0 * alpha_ * z * yz);
    return s;
}

double SpinorModel::partner(double r) const {
    if (partner_den_ == 0.0) {
        throw DomainError(sector_.kind == Symmetry::spin ? "lower_from_upper: M + E - C- vanishes"
                                                         : "upper_from_lower: M - E + C+ vanishes");
    }
    const Sample s = solved(r);
    const double k = sector_.kappa;
    if (sector_.kind == Symmetry::spin) return (s.derivative + k * s.value / r) / partner_den_;
    return (s.derivative - k * s.value / r) / partner_den_;
}

double SpinorModel::upper(double r) const {
    return sector_.kind == Symmetry::spin ? solved(r).value : partner(r);
}

double SpinorModel::lower(double r) const {
    return sector_.kind == Symmetry::spin ? partner(r) : solved(r).value;
}

double SpinorModel::effective_potential(double r) const {
    const double w = eval_potential(pot_, r, {.full_line = true});
    const double sign = sector_.kind == Symmetry::spin ? 1.0 : -1.0;
    return centrifugal_approx(coeffs_, sector_.centrifugal_strength(), r) + eff_.a_sq + eff_.b_lin * sign * w;
}

std::vector<double> make_radial_grid(double r_scale, double r_max, int points, double r_min_factor) {
    if (!(r_scale > 0.0)) throw InvalidArgument("grid: r_scale must be > 0");
    if (!(r_min_factor > 0.0 && r_min_factor < 1.0)) throw InvalidArgument("grid: r_min_factor must be in (0, 1)");
    if (points < 16) throw InvalidArgument("grid: need at least 16 points");
    if (!(r_max > r_scale)) throw InvalidArgument("grid: r_max must exceed r_scale");
    const int n_log = points / 4;
    const int n_lin = points - n_log;
    const double r_min = r_min_factor * r_scale;
    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(points));
    const double ratio = std::log(r_scale / r_min);
    for (int i = 0; i < n_log; ++i) r.push_back(r_min * std::exp(ratio * i / n_log));
    for (int i = 0; i < n_lin; ++i) r.push_back(r_scale + (r_max - r_scale) * i / (n_lin - 1.0));
    return r;
}

namespace {

std::vector<double> sample(const std::vector<double>& grid, double (SpinorModel::*f)(double) const,
                           const SpinorModel& m) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double r : grid) out.push_back((m.*f)(r));
    return out;
}

}  // namespace

std::vector<double> upper_component_rm(const EnergyLevel& level, const PotentialSpec& pot,
                                       const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                                       const std::vector<double>& grid) {
    if (sector.kind != Symmetry::spin) throw InvalidArgument("upper_component_rm: spin sector required");
    const SpinorModel m(level, pot, sector, coeffs);
    return sample(grid, &SpinorModel::upper, m);
}

std::vector<double> lower_component_pspin(const EnergyLevel& level, const PotentialSpec& pot,
                                          const SymmetrySector& sector, const PekerisCoefficients& coeffs,
                                          const std::vector<double>& grid) {
    if (sector.kind != Symmetry::pspin) throw InvalidArgument("lower_component_pspin: pspin sector required");
    const SpinorModel m(level, pot, sector, coeffs);
    return sample(grid, &SpinorModel::lower, m);
}

std::vector<double> lower_from_upper(const SpinorModel& model, const std::vector<double>& grid) {
    if (model.sector().kind != Symmetry::spin) throw InvalidArgument("lower_from_upper: spin sector required");
    return sample(grid, &SpinorModel::partner, model);
}

std::vector<double> upper_from_lower(const SpinorModel& model, const std::vector<double>& grid) {
    if (model.sector().kind != Symmetry::pspin) throw InvalidArgument("upper_from_lower: pspin sector required");
    return sample(grid, &SpinorModel::partner, model);
}

double cutoff_radius(const SpinorModel& model, double r_scale, double rel) {
    const double step = std::min(r_scale, 1.0 / model.decay_rate()) / 8.0;
    double peak = 0.0;
    for (double r = step; r <= r_scale; r += step) peak = std::max(peak, std::abs(model.solved(r).value));
    for (double r = r_scale;; r += step) {
        const double f = std::abs(model.solved(r).value);
        peak = std::max(peak, f);
        if (r > 2.0 * r_scale && f < rel * peak && std::abs(model.partner(r)) < rel * peak) return r;
        if (r > 1e6 * r_scale) throw DomainError("cutoff_radius: wavefunction does not decay");
    }
}

SpinorState build_state(std::shared_ptr<const SpinorModel> model, const GridOptions& opts) {
    if (!model) throw InvalidArgument("build_state: null model");
    SpinorState s;
    s.r_scale = opts.r_scale;
    s.r_cut = cutoff_radius(*model, opts.r_scale, opts.tail_rel);
    s.r = make_radial_grid(opts.r_scale, s.r_cut, opts.points, opts.r_min_factor);
    s.upper = sample(s.r, &SpinorModel::upper, *model);
    s.lower = sample(s.r, &SpinorModel::lower, *model);
    s.scale = 1.0;
    s.model = std::move(model);
    s.norm = norm_integral(*s.model, s.r.front(), s.r_cut, s.r_scale, s.scale);
    return s;
}

double norm_integral(const SpinorModel& model, double r_lo, double r_hi, double r_scale, double scale) {
    // One panel per decade below r_scale (the partner grows like 1/r there),
    // then panels of a few decay lengths.
    std::vector<double> breaks{r_lo};
    for (double b = r_lo * 10.0; b < std::min(r_scale, r_hi); b *= 10.0) breaks.push_back(b);
    double r = std::max(r_lo, std::min(r_scale, r_hi));
    if (r > breaks.back()) breaks.push_back(r);
    const double chunk = std::max(2.0 / model.decay_rate(), r_scale);
    while (r + chunk < r_hi) {
        r += chunk;
        breaks.push_back(r);
    }
    if (r_hi > breaks.back()) breaks.push_back(r_hi);
    auto density = [&](double x) {
        const double f = model.upper(x), g = model.lower(x);
        return f * f + g * g;
    };
    const quad::QuadResult q = quad::adaptive_gauss_legendre(density, breaks);
    return scale * scale * q.value;
}

SpinorState normalize(const SpinorState& state) {
    const bool all_zero = std::all_of(state.upper.begin(), state.upper.end(), [](double v) { return v == 0.0; }) &&
                          std::all_of(state.lower.begin(), state.lower.end(), [](double v) { return v == 0.0; });
    if (all_zero || state.scale == 0.0 || !state.model) throw DomainError("normalize: zero norm");
    const double integral = norm_integral(*state.model, state.r.front(), state.r_cut, state.r_scale, state.scale);
    if (!(integral > 0.0) || !std::isfinite(integral)) throw DomainError("normalize: zero norm");
    const double factor = 1.0 / std::sqrt(integral);
    SpinorState out = state;
    out.scale = state.scale * factor;
    for (double& v : out.upper) v *= factor;
    for (double& v : out.lower) v *= factor;
    out.norm = norm_integral(*out.model, out.r.front(), out.r_cut, out.r_scale, out.scale);
    return out;
}

// --- diagnostics -------------------------------------------------------------

namespace {

double second_derivative(const SpinorModel& m, double r, double h) {
    auto f = [&](double x) { return m.solved(x).value; };
    return (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) / (12 * h * h);
}

double first_derivative(const std::function<double(double)>& f, double r, double h) {
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
}

}  // namespace

double ode_residual(const SpinorModel& model, double r_lo, double r_hi, int samples) {
    if (!(r_hi > r_lo && r_lo > 0.0) || samples < 2) throw InvalidArgument("ode_residual: bad interval");
    // The effective equation is regular through r = 0, so the stencil may reach r < 0.
    const double h = 1e-3 / model.alpha();
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (samples - 1.0);
        const double upp = second_derivative(model, r, h);
        const double res = upp - model.effective_potential(r) * model.solved(r).value;
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, std::abs(upp));
    }
    return scale > 0.0 ? worst / scale : worst;
}

double coupled_residual(const SpinorModel& model, double r_lo, double r_hi, int samples) {
    if (!(r_hi > r_lo && r_lo > 0.0) || samples < 2) throw InvalidArgument("coupled_residual: bad interval");
    const SymmetrySector& sec = model.sector();
    const double k = sec.kappa, E = model.level().energy, M = sec.mass;
    const double strength = sec.centrifugal_strength();
    std::function<double(double)> partner = [&](double x) { return model.partner(x); };
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (samples - 1.0);
        // The partner carries 1/r, so the stencil has to stay inside (0, 2r).
        const double h = std::min(1e-3 / model.alpha(), 0.05 * r);
        const double u = model.solved(r).value;
        const double w = model.partner(r);
        const double v = eval_potential(model.potential(), r, {.full_line = true});
        const double dcent =
            (centrifugal_approx(model.coefficients(), strength, r) - strength / (r * r)) / model.partner_denominator();
        double lhs, rhs;
        if (sec.kind == Symmetry::spin) {
            lhs = first_derivative(partner, r, h) - k * w / r;
            rhs = (M - E + v) * u + dcent * u;
        } else {
            lhs = first_derivative(partner, r, h) + k * w / r;
            rhs = (M + E - v) * u + dcent * u;
        }
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
    }
    return scale > 0.0 ? worst / scale : worst;
}

int full_line_node_count(const SpinorModel& model) {
    const int n = model.level().n;
    if (n == 0) return 0;
    // Coefficients of y as a polynomial in z: c_m = term_m evaluated at -z = -1.
    std::vector<double> c;
    for (const auto& t : specfun::hyp2f1_terms(n, model.poly_b(), model.poly_c(), -1.0)) c.push_back(t.value);
    double hi_bound = 0.0, lo_tail = 0.0;
    for (int m = 0; m < n; ++m) hi_bound = std::max(hi_bound, std::abs(c[static_cast<std::size_t>(m)] / c.back()));
    for (int m = 1; m <= n; ++m) lo_tail = std::max(lo_tail, std::abs(c[static_cast<std::size_t>(m)]));
    const double t_hi = 2.0 * (1.0 + hi_bound);
    const double t_lo = 0.5 * std::abs(c[0]) / (std::abs(c[0]) + lo_tail);
    const double decades = std::log10(t_hi / t_lo);
    const int samples = std::max(2000, static_cast<int>(400 * decades));
    int count = 0;
    double prev = model.polynomial(t_lo);
    for (int i = 1; i <= samples; ++i) {
        const double t = t_lo * std::pow(10.0, decades * i / samples);
        const double y = model.polynomial(t);
        if (y != 0.0 && prev != 0.0 && (y < 0.0) != (prev < 0.0)) ++count;
        if (y != 0.0) prev = y;
    }
    return count;
}

int half_line_node_count(const SpinorState& state) {
    const std::vector<double>& u = state.model && state.model->sector().kind == Symmetry::pspin ? state.lower : state.upper;
    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    int count = 0;
    double prev = 0.0;
    for (double v : u) {
        if (std::abs(v) <= 1e-10 * peak) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++count;
        prev = v;
    }
    return count;
}

double decay_fit_start(const SpinorModel& model, double r_scale) {
    return std::max(4.0 * r_scale, std::log(1e6) / (2.0 * model.alpha()));
}

double decay_slope(const SpinorModel& model, double r_lo, double r_hi, int samples) {
    if (!(r_hi > r_lo) || samples < 3) throw InvalidArgument("decay_slope: bad interval");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int i = 0; i < samples; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (samples - 1.0);
        const double f = std::abs(model.solved(r).value);
        if (!(f > std::numeric_limits<double>::min())) continue;
        const double y = std::log(f);
        sx += r;
        sy += y;
        sxx += r * r;
        sxy += r * y;
        ++used;
    }
    if (used < 3) throw DomainError("decay_slope: wavefunction underflows on the fit interval");
    return (used * sxy - sx * sy) / (used * sxx - sx * sx);
}

NormalizationFormula normalization_constant_formula(const EnergyLevel& level, double alpha, int max_terms) {
    const int n = level.n;
    const double a0 = level.nu.a0, q = level.nu.q;
    if (n == 0) throw PoleError("normalization_constant_formula: Gamma(n) pole at n = 0");
    const specfun::LnGamma g1 = specfun::ln_gamma(2.0 - q);
    const specfun::LnGamma g2 = specfun::ln_gamma(1.0 - 2.0 * a0);
    const double pref = g1.sign * g2.sign * std::exp(g1.value + g2.value) / (2.0 * alpha);

    auto is_pole = [](double x) { return x <= 0.0 && x == std::floor(x); };
    const double x = n - 2.0 * a0 + 1.0 - q;
    // S_m = (-1)^m (x)_m (n)_m / (m! Gamma(m - 2 a0 + 1) Gamma(m - 2 a0 - q + 2)); Gamma(n) cancels.
    double s = specfun::reciprocal_gamma(1.0 - 2.0 * a0) * specfun::reciprocal_gamma(2.0 - 2.0 * a0 - q);
    NormalizationFormula out;
    specfun::NeumaierSum sum;
    int small_run = 0;
    std::vector<double> mags;
    for (int m = 0; m < max_terms; ++m) {
        if (is_pole(m - 2.0 * a0 - q + 2.0) || is_pole(1.0 - 2.0 * a0))
            throw PoleError("normalization_constant_formula: 3F2 denominator vanishes");
        const double f = specfun::hyp3f2_unit(-2.0 * a0 + m, -static_cast<double>(n), n + 1.0 - 2.0 * a0 - q,
                                              m - 2.0 * a0 - q + 2.0, 1.0 - 2.0 * a0, n);
        const double term = s * f;
        sum.add(term);
        mags.push_back(std::abs(term));
        out.terms = m + 1;
        if (std::abs(term) < 1e-16 * std::abs(sum.value())) {
            if (++small_run >= 3) {
                out.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        const double d1 = m - 2.0 * a0 + 1.0, d2 = m - 2.0 * a0 - q + 2.0;
        if (d1 == 0.0 || d2 == 0.0) throw PoleError("normalization_constant_formula: Gamma denominator pole");
        s *= -(x + m) * (n + m) / ((m + 1.0) * d1 * d2);
    }
    if (mags.size() >= 5) {
        out.monotone_tail = true;
        for (std::size_t i = mags.size() - 4; i < mags.size(); ++i)
            if (!(mags[i] <= mags[i - 1])) out.monotone_tail = false;
    }
    out.bracket = pref * sum.value();
    out.value = out.bracket > 0.0 ? 1.0 / std::sqrt(out.bracket) : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace rmdirac
