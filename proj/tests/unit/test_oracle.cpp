#include <cmath>

#include <gtest/gtest.h>

#include "rmdirac/errors.hpp"
#include "rmdirac/oracle.hpp"

using namespace rmdirac;

namespace {

OracleConfig box_config(int points, double r_max) {
    OracleConfig c;
    c.domain = OracleDomain::half_line;
    c.r_min = 0.0;
    c.r_max = r_max;
    c.grid_points = points;
    c.richardson_levels = 1;
    c.check_tail = false;
    return c;
}

const RosenMorseGeneral kFree{0.0, 0.0, 1.0};
const SymmetrySector kSwave{Symmetry::spin, -1, 1.0, 0.0};

}  // namespace

TEST(Oracle, ParticleInABox) {
    const double R = 2.0;
    const auto pairs = solve_fixed_E_eigen(kFree, kSwave, PekerisCoefficients{}, 0.3, 4, box_config(1001, R));
    ASSERT_EQ(pairs.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        const double exact = std::pow((k + 1) * std::numbers::pi / R, 2);
        EXPECT_NEAR(pairs[static_cast<std::size_t>(k)].lambda, exact, 1e-4 * exact);
        EXPECT_EQ(pairs[static_cast<std::size_t>(k)].nodes, k);
        if (k) EXPECT_GT(pairs[static_cast<std::size_t>(k)].lambda, pairs[static_cast<std::size_t>(k - 1)].lambda);
    }
}

TEST(Oracle, SecondOrderConvergenceAndRichardson) {
    const double R = 1.0, exact = std::numbers::pi * std::numbers::pi;
    const double e1 = solve_fixed_E_eigen(kFree, kSwave, {}, 0.0, 1, box_config(501, R))[0].lambda - exact;
    const double e2 = solve_fixed_E_eigen(kFree, kSwave, {}, 0.0, 1, box_config(1001, R))[0].lambda - exact;
    EXPECT_NEAR(e1 / e2, 4.0, 0.05);
    // The fixed-E solve keeps a single grid for its eigenvectors; the level
    // searches extrapolate. With mu = 1/2 the box levels are (k pi / R)^2.
    auto c = box_config(501, R);
    const double plain = schrodinger_levels(kFree, 0, 0.5, {}, 0, c)[0] - exact;
    EXPECT_NEAR(plain, e1, 1e-9 * exact);
    c.richardson_levels = 3;
    const double er = schrodinger_levels(kFree, 0, 0.5, {}, 0, c)[0] - exact;
    EXPECT_LT(std::abs(er), 1e-3 * std::abs(e2));
}

TEST(Oracle, NodeLabelsStableUnderRefinement) {
    const ReflectionlessParams pot{4.0, 0.8, std::nullopt};
    const SymmetrySector s{Symmetry::spin, -1, 5.0, 0.0};
    OracleConfig c;
    c.richardson_levels = 1;
    for (int pts : {2001, 4003}) {
        c.grid_points = pts;
        const auto pairs = solve_fixed_E_eigen(pot, s, {}, 2.0, 3, c);
        for (int k = 0; k < 3; ++k) EXPECT_EQ(pairs[static_cast<std::size_t>(k)].nodes, k);
    }
}

TEST(Oracle, SwaveReflectionlessMatchesClosedForm) {
    const ReflectionlessParams pot{4.0, 0.8, std::nullopt};
    const SymmetrySector s{Symmetry::spin, -1, 5.0, 0.0};
    const auto closed = find_levels(pot, s, {}, 2);
    const auto numeric = self_consistent_levels(pot, s, {}, 2, OracleConfig{});
    ASSERT_EQ(numeric.size(), 3u);
    for (const auto& o : numeric) {
        EXPECT_TRUE(o.converged);
        EXPECT_FALSE(o.trace.empty());
    }
    const auto rep = compare(closed, numeric, 1e-6, "exact");
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.per_level.size(), 3u);
    EXPECT_LT(rep.max_delta_abs, 1e-8);
}

TEST(Oracle, NonConvergenceReportsTrace) {
    const ReflectionlessParams pot{4.0, 0.8, std::nullopt};
    const SymmetrySector s{Symmetry::spin, -1, 5.0, 0.0};
    OracleConfig c;
    c.fp_max_iter = 1;
    c.fp_tol = 1e-15;
    try {
        self_consistent_levels(pot, s, {}, 0, c);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("last iterates"), std::string::npos) << e.what();
    }
}

TEST(Oracle, SchrodingerBox) {
    const auto ev = schrodinger_levels(kFree, 0, 0.5, {}, 2, box_config(2001, 1.0));
    ASSERT_EQ(ev.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(ev[static_cast<std::size_t>(k)], std::pow((k + 1) * std::numbers::pi, 2), 1e-3);
}

TEST(Oracle, ConfigValidation) {
    OracleConfig c;
    EXPECT_NO_THROW(validate(c));
    c.grid_points = 100;
    EXPECT_THROW(validate(c), InvalidArgument);
    c = {};
    c.damping = 0.0;
    EXPECT_THROW(validate(c), InvalidArgument);
    c = {};
    c.richardson_levels = 9;
    EXPECT_THROW(validate(c), InvalidArgument);
    EXPECT_EQ(centrifugal_mode_from_string("pekeris"), CentrifugalMode::pekeris);
    EXPECT_EQ(to_string(OracleDomain::full_line), "full_line");
    EXPECT_EQ(oracle_domain_from_string("auto"), OracleDomain::automatic);
    EXPECT_THROW(oracle_domain_from_string("sphere"), InvalidArgument);
}

TEST(Oracle, TailCheckFlagsShortBox) {
    const ReflectionlessParams pot{4.0, 0.8, std::nullopt};
    const SymmetrySector s{Symmetry::spin, -1, 5.0, 0.0};
    OracleConfig c;
    c.r_max = 2.0;
    EXPECT_THROW(solve_fixed_E_eigen(pot, s, {}, 2.0, 1, c), DiscretizationError);
}

TEST(Compare, IdenticalAndMismatched) {
    EnergyLevel a;
    a.n = 0;
    a.energy = 1.25;
    a.admissible = true;
    OracleLevel o;
    o.index_by_nodes = 0;
    o.energy = 1.25;
    auto rep = compare({a}, {o}, 1e-12, "exact");
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.max_delta_abs, 0.0);
    EXPECT_TRUE(rep.warnings.empty());

    rep = compare({}, {o}, 1e-6, "exact");
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.warnings.size(), 1u);

    OracleLevel o2 = o;
    o2.energy = 1.5;
    rep = compare({a}, {o2}, 1e-6, "exact");
    EXPECT_FALSE(rep.pass);
    EXPECT_DOUBLE_EQ(rep.per_level[0].delta_rel, 0.2);

    o2.alt_energy = 1.25 + 1e-9;
    rep = compare({a}, {o2}, 1e-6, "exact");
    EXPECT_TRUE(rep.pass);
}
