#include "rmdirac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "rmdirac/errors.hpp"
#include "rmdirac/tridiagonal.hpp"

namespace rmdirac {

std::string to_string(CentrifugalMode mode) { return mode == CentrifugalMode::exact ? "exact" : "pekeris"; }

CentrifugalMode centrifugal_mode_from_string(const std::string& name) {
    if (name == "exact") return CentrifugalMode::exact;
    if (name == "pekeris") return CentrifugalMode::pekeris;
    throw InvalidArgument("oracle.centrifugal must be 'exact' or 'pekeris', got '" + name + "'");
}

std::string to_string(OracleDomain domain) {
    switch (domain) {
        case OracleDomain::automatic: return "auto";
        case OracleDomain::half_line: return "half_line";
        case OracleDomain::full_line: return "full_line";
        case OracleDomain::interval: return "interval";
    }
    return "auto";
}

OracleDomain oracle_domain_from_string(const std::string& name) {
    if (name == "auto") return OracleDomain::automatic;
    if (name == "half_line") return OracleDomain::half_line;
    if (name == "full_line") return OracleDomain::full_line;
    if (name == "interval") return OracleDomain::interval;
    throw InvalidArgument("oracle.domain must be auto, half_line, full_line or interval, got '" + name + "'");
}

void validate(const OracleConfig& c) {
    if (c.grid_points < 500) throw InvalidArgument("oracle: grid_points must be >= 500");
    if (!(c.r_max >= 0.0)) throw InvalidArgument("oracle: r_max must be >= 0 (0 selects the default)");
    if (c.r_min && !(*c.r_min >= 0.0)) throw InvalidArgument("oracle: r_min must be >= 0");
    if (!(c.fp_tol > 0.0)) throw InvalidArgument("oracle: fp_tol must be > 0");
    if (c.fp_max_iter < 1) throw InvalidArgument("oracle: fp_max_iter must be >= 1");
    if (!(c.damping > 0.0 && c.damping <= 1.0)) throw InvalidArgument("oracle: damping must be in (0, 1]");
    if (c.richardson_levels < 1 || c.richardson_levels > 5)
        throw InvalidArgument("oracle: richardson_levels must be in [1, 5]");
    if (!(c.tail_tol > 0.0)) throw InvalidArgument("oracle: tail_tol must be > 0");
}

namespace {

struct Bounds {
    double a = 0.0, b = 0.0;
    bool open_left = false, open_right = false;
};

Bounds resolve_bounds(const PotentialSpec& pot, double strength, const PekerisCoefficients& coeffs,
                      const OracleConfig& cfg) {
    if (const auto* trig = std::get_if<TrigRMParams>(&pot)) {
        if (cfg.domain != OracleDomain::automatic && cfg.domain != OracleDomain::interval)
            throw InvalidArgument("oracle: trig_rm is solved on its own interval");
        return {-trig->half_width, trig->half_width, false, false};
    }
    if (cfg.domain == OracleDomain::interval) throw InvalidArgument("oracle: interval domain is for trig_rm only");
    const double alpha = range_parameter(pot);
    const double r_max = cfg.r_max > 0.0 ? cfg.r_max : 30.0 / alpha;
    const bool exact_term = strength != 0.0 && cfg.centrifugal == CentrifugalMode::exact;
    OracleDomain d = cfg.domain;
    if (d == OracleDomain::automatic) d = exact_term ? OracleDomain::half_line : OracleDomain::full_line;
    if (d == OracleDomain::full_line) {
        if (exact_term) throw InvalidArgument("oracle: the exact centrifugal term is singular at r = 0; use half_line");
        return {-r_max, r_max, true, true};
    }
    const double r_min = cfg.r_min ? *cfg.r_min : (strength != 0.0 ? 1e-6 * coeffs.r_e : 0.0);
    if (!(r_max > r_min)) throw InvalidArgument("oracle: r_max must exceed r_min");
    return {r_min, r_max, false, true};
}

// Pieces of -u'' + [cent(x) + B w(x)] u on one grid.
struct Grid {
    std::vector<double> x;
    double h = 0.0;
    std::vector<double> cent;
    std::vector<double> w;
};

Grid make_grid(const Bounds& bd, int interior, const PotentialSpec& pot, double strength, double w_sign,
               const PekerisCoefficients& coeffs, CentrifugalMode mode) {
    Grid g;
    g.h = (bd.b - bd.a) / (interior + 1.0);
    g.x.resize(static_cast<std::size_t>(interior));
    g.cent.resize(g.x.size());
    g.w.resize(g.x.size());
    PotentialEvalOptions opts;
    opts.full_line = true;
    opts.sec2_cap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < interior; ++i) {
        const double x = bd.a + (i + 1.0) * g.h;
        const auto k = static_cast<std::size_t>(i);
        g.x[k] = x;
        if (strength == 0.0) {
            g.cent[k] = 0.0;
        } else if (mode == CentrifugalMode::exact) {
            g.cent[k] = strength / (x * x);
        } else {
            g.cent[k] = centrifugal_approx(coeffs, strength, x);
        }
        g.w[k] = w_sign * eval_potential(pot, x, opts);
    }
    return g;
}

tridiag::SymTridiagonal assemble(const Grid& g, double b_lin) {
    tridiag::SymTridiagonal t;
    const double ih2 = 1.0 / (g.h * g.h);
    t.d.resize(g.x.size());
    t.e.assign(g.x.size() - 1, -ih2);
    for (std::size_t i = 0; i < g.x.size(); ++i) t.d[i] = 2.0 * ih2 + g.cent[i] + b_lin * g.w[i];
    return t;
}

void check_tail(const std::vector<double>& v, const Bounds& bd, double tol) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    const std::size_t edge = std::max<std::size_t>(1, v.size() / 20);
    auto edge_max = [&](std::size_t from, std::size_t to) {
        double m = 0.0;
        for (std::size_t i = from; i < to; ++i) m = std::max(m, std::abs(v[i]));
        return m;
    };
    if ((bd.open_left && edge_max(0, edge) > tol * peak) || (bd.open_right && edge_max(v.size() - edge, v.size()) > tol * peak)) {
        std::ostringstream os;
        os << "oracle: wavefunction tail exceeds " << tol << " of its peak at the box edge [" << bd.a << ", " << bd.b
           << "]; increase oracle.r_max";
        throw DiscretizationError(os.str());
    }
}

// Eigenvalue k on a hierarchy of grids h, h/2, ... with Richardson extrapolation.
// Smooth problems expand in h^2, h^4, ...  At the inverse-square walls of the
// trigonometric form, -u'' - (g / d^2) u has u ~ d^s with s = (1 + p) / 2,
// p = sqrt(1 - 4 g), and the central-difference error picks up h^p and h^(2p)
// ahead of h^2.
class Ladder {
public:
    Ladder(const PotentialSpec& pot, double strength, double w_sign, const PekerisCoefficients& coeffs,
           const OracleConfig& cfg)
        : bounds_(resolve_bounds(pot, strength, coeffs, cfg)), tail_tol_(cfg.tail_tol), check_(cfg.check_tail) {
        if (const auto* trig = std::get_if<TrigRMParams>(&pot)) {
            const double a = trig->alpha();
            wall_ = w_sign * trig->v1 / (a * a);
        }
        int interior = cfg.grid_points;
        for (int j = 0; j < cfg.richardson_levels; ++j) {
            grids_.push_back(make_grid(bounds_, interior, pot, strength, w_sign, coeffs, cfg.centrifugal));
            interior = 2 * interior + 1;
        }
    }

    double eigenvalue(int k, double b_lin) const {
        const std::vector<double> orders = error_orders(b_lin);
        std::vector<std::vector<double>> table;
        for (std::size_t j = 0; j < grids_.size(); ++j) {
            std::vector<double> row{tridiag::kth_eigenvalue(assemble(grids_[j], b_lin), k)};
            for (std::size_t m = 1; m <= j; ++m) {
                const double f = std::pow(2.0, orders[m - 1]);
                row.push_back(row[m - 1] + (row[m - 1] - table[j - 1][m - 1]) / (f - 1.0));
            }
            table.push_back(std::move(row));
        }
        return table.back().back();
    }

    EigenPair pair(int k, double b_lin) const {
        const Grid& g = grids_.front();
        const tridiag::SymTridiagonal t = assemble(g, b_lin);
        EigenPair p;
        p.lambda = tridiag::kth_eigenvalue(t, k);
        p.vector = tridiag::eigenvector(t, p.lambda);
        p.nodes = tridiag::count_sign_changes(p.vector);
        p.x = g.x;
        if (check_) check_tail(p.vector, bounds_, tail_tol_);
        return p;
    }

    const Bounds& bounds() const { return bounds_; }

private:
    std::vector<double> error_orders(double b_lin) const {
        std::vector<double> orders;
        const double disc = 1.0 - 4.0 * b_lin * wall_;
        if (wall_ != 0.0 && disc > 0.0) {
            const double p = std::sqrt(disc);
            orders = {p, 2.0 * p, 3.0 * p, 2.0, 2.0 + p, 4.0};
        } else {
            orders = {2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
        }
        std::sort(orders.begin(), orders.end());
        // Coinciding orders would divide by zero further down the table.
        orders.erase(std::unique(orders.begin(), orders.end(),
                                 [](double x, double y) { return std::abs(x - y) < 1e-6; }),
                     orders.end());
        while (orders.size() < grids_.size()) orders.push_back(orders.back() + 2.0);
        return orders;
    }

    Bounds bounds_;
    double wall_ = 0.0;
    double tail_tol_;
    bool check_;
    std::vector<Grid> grids_;
};

double w_sign(const SymmetrySector& sector) { return sector.kind == Symmetry::spin ? 1.0 : -1.0; }

}  // namespace

std::vector<EigenPair> solve_fixed_E_eigen(const PotentialSpec& pot, const SymmetrySector& sector,
                                           const PekerisCoefficients& coeffs, double energy, int count,
                                           const OracleConfig& config) {
    validate(pot);
    validate(sector);
    validate(config);
    if (count < 1) throw InvalidArgument("solve_fixed_E_eigen: count must be >= 1");
    OracleConfig single = config;
    single.richardson_levels = 1;
    const Ladder ladder(pot, sector.centrifugal_strength(), w_sign(sector), coeffs, single);
    const double b_lin = effective_coefficients(sector, energy).b_lin;
    std::vector<EigenPair> out;
    for (int k = 0; k < count; ++k) out.push_back(ladder.pair(k, b_lin));
    return out;
}

std::vector<OracleLevel> self_consistent_levels(const PotentialSpec& pot, const SymmetrySector& sector,
                                                const PekerisCoefficients& coeffs, int n_max,
                                                const OracleConfig& config) {
    validate(pot);
    validate(sector);
    validate(config);
    if (n_max < 0) throw InvalidArgument("self_consistent_levels: n_max must be >= 0");
    const Ladder ladder(pot, sector.centrifugal_strength(), w_sign(sector), coeffs, config);
    const double M = sector.mass, C = sector.c_const;
    const bool spin = sector.kind == Symmetry::spin;
    // lambda = -A^2(E) inverted: spin E = C/2 + sqrt((M - C/2)^2 + lambda),
    // pspin E = C/2 - sqrt((M + C/2)^2 + lambda).
    const double vertex_shift = spin ? M - 0.5 * C : M + 0.5 * C;

    // Each branch is iterated on its own; `sign` picks the root of the quadratic.
    struct Run {
        bool converged = false;
        double energy = 0.0;
        double disc = 0.0;
        double damping = 1.0;
        int iterations = 0;
    };
    auto iterate = [&](int n, double E, int sign, std::vector<double>& trace) {
        Run run;
        run.damping = config.damping;
        double prev_step = 0.0;
        for (int it = 1; it <= config.fp_max_iter; ++it) {
            const double lambda = ladder.eigenvalue(n, effective_coefficients(sector, E).b_lin);
            run.disc = vertex_shift * vertex_shift + lambda;
            // Clamped to the vertex; a negative disc at the end means this branch has no root.
            const double root = run.disc > 0.0 ? std::sqrt(run.disc) : 0.0;
            const double step = 0.5 * C + sign * root - E;
            if (it > 1 && ((step * prev_step < 0.0 && std::abs(step) > 0.5 * std::abs(prev_step)) ||
                           (it > 3 && std::abs(step) > std::abs(prev_step)))) {
                run.damping *= 0.5;
            }
            prev_step = step;
            E += run.damping * step;
            trace.push_back(E);
            run.iterations = it;
            if (std::abs(run.damping * step) < config.fp_tol) {
                run.converged = true;
                break;
            }
        }
        run.energy = E;
        return run;
    };
    const int primary = spin ? 1 : -1;

    auto mismatch = [&](int n, double E) {
        const EffectiveCoefficients ec = effective_coefficients(sector, E);
        return ladder.eigenvalue(n, ec.b_lin) + ec.a_sq;
    };
    // Scans outward from the vertex to the edge of the binding window and
    // refines the first sign change by Illinois regula falsi.
    auto bracket_other_branch = [&](int n, std::vector<double>& trace) -> std::optional<double> {
        const double vertex = 0.5 * C;
        const double edge = spin ? C - M : M + C;
        constexpr int scan = 48;
        double ea = vertex, fa = mismatch(n, ea);
        for (int k = 1; k <= scan; ++k) {
            const double eb = vertex + (edge - vertex) * k / scan;
            const double fb = mismatch(n, eb);
            trace.push_back(eb);
            if (fa == 0.0) return ea;
            if (fa * fb < 0.0) {
                double lo = ea, flo = fa, hi = eb, fhi = fb;
                int side = 0;
                for (int it = 0; it < config.fp_max_iter; ++it) {
                    const double e = (lo * fhi - hi * flo) / (fhi - flo);
                    const double f = mismatch(n, e);
                    trace.push_back(e);
                    if (f == 0.0 || std::abs(hi - lo) < config.fp_tol) return e;
                    if (f * fhi < 0.0) {
                        lo = hi;
                        flo = fhi;
                        hi = e;
                        fhi = f;
                        if (side == -1) flo *= 0.5;
                        side = -1;
                    } else {
                        hi = e;
                        fhi = f;
                        flo *= 0.5;
                        side = 1;
                    }
                    if (std::abs(hi - lo) < config.fp_tol) return hi;
                }
                return std::nullopt;
            }
            ea = eb;
            fa = fb;
        }
        return std::nullopt;
    };

    std::vector<OracleLevel> out;
    for (int n = 0; n <= n_max; ++n) {
        OracleLevel lv;
        lv.index_by_nodes = n;
        const double start = static_cast<std::size_t>(n) < config.initial_energies.size()
                                 ? config.initial_energies[static_cast<std::size_t>(n)]
                                 : (spin ? M : -M);
        lv.trace.push_back(start);
        Run run = iterate(n, start, primary, lv.trace);
        bool other_branch = false;
        if (run.converged && run.disc < 0.0) {
            // Pinned at the vertex: the level sits on the other root, where the
            // plain fixed point is unstable.  Bracket lambda_n(E) + A^2(E) instead.
            other_branch = true;
            if (const auto e = bracket_other_branch(n, lv.trace)) {
                run.energy = *e;
                run.disc = 0.0;
                run.converged = true;
            }
        }
        lv.fp_iterations = static_cast<int>(lv.trace.size()) - 1;
        lv.final_damping = run.damping;
        if (!run.converged) {
            std::ostringstream os;
            os.precision(17);
            os << "self_consistent_levels: n=" << n << " did not converge in " << config.fp_max_iter
               << " iterations; last iterates:";
            for (std::size_t i = lv.trace.size() > 8 ? lv.trace.size() - 8 : 0; i < lv.trace.size(); ++i)
                os << ' ' << lv.trace[i];
            throw ConvergenceError(os.str());
        }
        if (run.disc < 0.0) {
            std::ostringstream os;
            os << "self_consistent_levels: n=" << n << " lambda = -A^2(E) has no real solution (branch ambiguity)";
            throw ConvergenceError(os.str());
        }
        lv.converged = true;
        lv.energy = run.energy;
        if (config.both_branches && !other_branch) {
            std::vector<double> scratch;
            const auto alt = bracket_other_branch(n, scratch);
            if (alt && std::abs(*alt - run.energy) > 10 * config.fp_tol) lv.alt_energy = *alt;
        }
        const EigenPair p = ladder.pair(n, effective_coefficients(sector, run.energy).b_lin);
        lv.nodes_counted = p.nodes;
        out.push_back(lv);
    }
    return out;
}

std::vector<double> schrodinger_levels(const PotentialSpec& pot, int l, double mu, const PekerisCoefficients& coeffs,
                                       int n_max, const OracleConfig& config) {
    validate(pot);
    validate(config);
    if (l < 0 || n_max < 0) throw InvalidArgument("schrodinger_levels: l and n_max must be >= 0");
    if (!(mu > 0.0)) throw InvalidArgument("schrodinger_levels: mu must be > 0");
    // -u'' + [l(l+1)/r^2 + 2 mu V] u = 2 mu E u
    const Ladder ladder(pot, l * (l + 1.0), 1.0, coeffs, config);
    std::vector<double> out;
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(ladder.eigenvalue(n, 2.0 * mu) / (2.0 * mu));
        if (config.check_tail) (void)ladder.pair(n, 2.0 * mu);
    }
    return out;
}

ComparisonReport compare(const std::vector<EnergyLevel>& closed, const std::vector<OracleLevel>& numeric,
                         double tolerance, const std::string& mode) {
    ComparisonReport rep;
    rep.mode = mode;
    std::map<int, const EnergyLevel*> by_n;
    for (const auto& c : closed) {
        if (!c.admissible) continue;
        if (by_n.count(c.n)) {
            rep.warnings.push_back("several admissible closed-form roots for n=" + std::to_string(c.n) +
                                   "; the lowest is compared");
            continue;
        }
        by_n[c.n] = &c;
    }
    std::map<int, const OracleLevel*> oracle_by_n;
    for (const auto& o : numeric) oracle_by_n[o.index_by_nodes] = &o;

    for (const auto& [n, c] : by_n) {
        const auto it = oracle_by_n.find(n);
        if (it == oracle_by_n.end()) {
            rep.warnings.push_back("closed-form level n=" + std::to_string(n) + " has no oracle partner");
            continue;
        }
        const OracleLevel& o = *it->second;
        double e = o.energy;
        if (o.alt_energy && std::abs(*o.alt_energy - c->energy) < std::abs(e - c->energy)) e = *o.alt_energy;
        ComparisonEntry entry;
        entry.n = n;
        entry.e_closed = c->energy;
        entry.e_oracle = e;
        entry.delta_abs = std::abs(e - c->energy);
        entry.delta_rel = c->energy != 0.0 ? entry.delta_abs / std::abs(c->energy) : entry.delta_abs;
        rep.per_level.push_back(entry);
        rep.max_delta_abs = std::max(rep.max_delta_abs, entry.delta_abs);
    }
    for (const auto& [n, o] : oracle_by_n) {
        (void)o;
        if (!by_n.count(n))
            rep.warnings.push_back("oracle level n=" + std::to_string(n) + " has no admissible closed-form partner");
    }
    rep.pass = !rep.per_level.empty() && rep.max_delta_abs <= tolerance;
    return rep;
}

}  // namespace rmdirac
