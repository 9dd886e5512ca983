#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "rmdirac/errors.hpp"
#include "rmdirac/spinors.hpp"

using namespace rmdirac;

namespace {

struct Case {
    PotentialSpec pot;
    SymmetrySector sector;
    PekerisCoefficients pc;
};

std::vector<Case> cases() {
    return {
        {ReflectionlessParams{4.0, 0.8, std::nullopt}, {Symmetry::spin, -1, 5.0, 0.0}, pekeris_from_taylor_match(0.8, 1.0)},
        {StandardRMParams{3.0, 0.3, 0.8}, {Symmetry::spin, -2, 5.0, 0.0}, pekeris_from_taylor_match(0.8, 1.5)},
        {RosenMorseGeneral{-11.4, 0.6, 0.8}, {Symmetry::pspin, 1, 5.0, 0.0}, pekeris_from_taylor_match(0.8, 1.5)},
        {RosenMorseGeneral{-11.4, 0.6, 0.8}, {Symmetry::pspin, 2, 5.0, 0.0}, pekeris_from_taylor_match(0.8, 1.5)},
    };
}

std::vector<std::shared_ptr<const SpinorModel>> models(const Case& c, int n_max) {
    std::vector<std::shared_ptr<const SpinorModel>> out;
    for (const auto& l : find_levels(c.pot, c.sector, c.pc, n_max))
        if (l.admissible) out.push_back(std::make_shared<const SpinorModel>(l, c.pot, c.sector, c.pc));
    return out;
}

}  // namespace

TEST(Spinors, AnalyticDerivativeMatchesDifferences) {
    for (const auto& c : cases())
        for (const auto& m : models(c, 2))
            for (double r : {0.1, 0.7, 2.0, 4.0}) {
                const double h = 1e-5;
                const double fd = (m->solved(r + h).value - m->solved(r - h).value) / (2 * h);
                EXPECT_NEAR(m->solved(r).derivative, fd, 1e-7 * std::max(1.0, std::abs(fd)));
            }
}

TEST(Spinors, EffectiveOdeResidual) {
    for (const auto& c : cases()) {
        const auto ms = models(c, 3);
        ASSERT_FALSE(ms.empty());
        for (const auto& m : ms) {
            const double rs = 1.0 / m->alpha();
            EXPECT_LT(ode_residual(*m, 1e-6 * rs, cutoff_radius(*m, rs)), 1e-6) << "n=" << m->level().n;
        }
    }
}

TEST(Spinors, PartnerFollowsFirstOrderRelation) {
    for (const auto& c : cases())
        for (const auto& m : models(c, 1)) {
            const double k = c.sector.kappa;
            for (double r : {0.3, 1.0, 2.5}) {
                const auto s = m->solved(r);
                const double want = c.sector.kind == Symmetry::spin ? (s.derivative + k * s.value / r) / m->partner_denominator()
                                                                     : (s.derivative - k * s.value / r) / m->partner_denominator();
                EXPECT_DOUBLE_EQ(m->partner(r), want);
                if (c.sector.kind == Symmetry::spin) {
                    EXPECT_EQ(m->upper(r), s.value);
                    EXPECT_EQ(m->lower(r), m->partner(r));
                } else {
                    EXPECT_EQ(m->lower(r), s.value);
                }
            }
        }
}

TEST(Spinors, NormalizationAgreesWithIndependentQuadrature) {
    using boost::math::quadrature::gauss_kronrod;
    for (const auto& c : cases())
        for (const auto& m : models(c, 3)) {
            GridOptions go;
            go.r_scale = 1.0 / m->alpha();
            const SpinorState st = normalize(build_state(m, go));
            EXPECT_NEAR(st.norm, 1.0, 1e-10);
            // Independent check: Gauss-Kronrod over decades near the origin, then the tail.
            auto dens = [&](double r) {
                const double f = m->upper(r), g = m->lower(r);
                return st.scale * st.scale * (f * f + g * g);
            };
            double total = 0.0;
            double a = st.r.front();
            while (a < st.r_cut) {
                const double b = std::min(a < go.r_scale ? a * 10.0 : a + go.r_scale, st.r_cut);
                total += gauss_kronrod<double, 61>::integrate(dens, a, b, 15, 1e-14);
                a = b;
            }
            EXPECT_NEAR(total, 1.0, 1e-8) << "n=" << m->level().n;
        }
}

TEST(Spinors, NodesAndDecay) {
    for (const auto& c : cases())
        for (const auto& m : models(c, 3)) {
            const int n = m->level().n;
            EXPECT_EQ(full_line_node_count(*m), n);
            GridOptions go;
            go.r_scale = 1.0 / m->alpha();
            const SpinorState st = build_state(m, go);
            EXPECT_LE(half_line_node_count(st), n);
            const double r0 = decay_fit_start(*m, go.r_scale);
            const double slope = decay_slope(*m, r0, r0 + 5.0 / m->decay_rate());
            EXPECT_NEAR(slope, -m->decay_rate(), 0.02 * m->decay_rate());
        }
}

TEST(Spinors, GridAndSampling) {
    const auto g = make_radial_grid(2.0, 20.0, 400, 1e-6);
    ASSERT_EQ(g.size(), 400u);
    EXPECT_DOUBLE_EQ(g.front(), 2e-6);
    EXPECT_DOUBLE_EQ(g.back(), 20.0);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    EXPECT_THROW(make_radial_grid(2.0, 1.0), InvalidArgument);
    EXPECT_THROW(make_radial_grid(-1.0, 10.0), InvalidArgument);

    const auto cs = cases();
    const auto spin_models = models(cs[0], 0);
    ASSERT_EQ(spin_models.size(), 1u);
    const auto& m = *spin_models[0];
    const std::vector<double> grid{0.5, 1.0, 2.0};
    const auto f = upper_component_rm(m.level(), cs[0].pot, cs[0].sector, cs[0].pc, grid);
    const auto gl = lower_from_upper(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_DOUBLE_EQ(f[i], m.upper(grid[i]));
        EXPECT_DOUBLE_EQ(gl[i], m.lower(grid[i]));
    }
    EXPECT_THROW(upper_from_lower(m, grid), InvalidArgument);
    EXPECT_THROW(lower_component_pspin(m.level(), cs[0].pot, cs[0].sector, cs[0].pc, grid), InvalidArgument);
}

TEST(Spinors, NormalizationFormulaPoleAtGroundState) {
    const auto cs = cases();
    const auto ms = models(cs[0], 2);
    ASSERT_GE(ms.size(), 2u);
    EXPECT_THROW(normalization_constant_formula(ms[0]->level(), ms[0]->alpha()), PoleError);
    const auto f = normalization_constant_formula(ms[1]->level(), ms[1]->alpha());
    EXPECT_TRUE(f.converged);
    EXPECT_GT(f.terms, 0);
}

TEST(Spinors, TrigRejected) {
    EnergyLevel lv;
    lv.n = 0;
    lv.energy = 4.9;
    EXPECT_THROW(SpinorModel(lv, TrigRMParams{0.02, 0.5, 1.0}, SymmetrySector{}, PekerisCoefficients{}), InvalidArgument);
}
