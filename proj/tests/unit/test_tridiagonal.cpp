#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rmdirac/errors.hpp"
#include "rmdirac/tridiagonal.hpp"

using namespace rmdirac;
using namespace rmdirac::tridiag;

namespace {

// -u'' on (0, 1) with Dirichlet ends, N interior points.
SymTridiagonal laplacian(int n) {
    const double h = 1.0 / (n + 1), s = 1.0 / (h * h);
    return {std::vector<double>(static_cast<std::size_t>(n), 2.0 * s), std::vector<double>(static_cast<std::size_t>(n - 1), -s)};
}

}  // namespace

TEST(Tridiagonal, DiscreteLaplacianSpectrum) {
    const int n = 200;
    const auto t = laplacian(n);
    const double h = 1.0 / (n + 1);
    for (int k = 0; k < 5; ++k) {
        const double exact = 4.0 / (h * h) * std::pow(std::sin((k + 1) * std::numbers::pi * h / 2.0), 2);
        EXPECT_NEAR(kth_eigenvalue(t, k), exact, 1e-9 * exact);
    }
    EXPECT_EQ(sturm_count(t, 0.0), 0);
    EXPECT_EQ(sturm_count(t, 1e9), n);
}

TEST(Tridiagonal, EigenvectorNodesAndResidual) {
    const auto t = laplacian(300);
    for (int k = 0; k < 6; ++k) {
        const double lam = kth_eigenvalue(t, k);
        const auto v = eigenvector(t, lam);
        EXPECT_EQ(count_sign_changes(v), k);
        double nrm = 0.0, res = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            nrm += v[i] * v[i];
            double av = t.d[i] * v[i];
            if (i > 0) av += t.e[i - 1] * v[i - 1];
            if (i + 1 < v.size()) av += t.e[i] * v[i + 1];
            res = std::max(res, std::abs(av - lam * v[i]));
        }
        EXPECT_NEAR(nrm, 1.0, 1e-12);
        EXPECT_LT(res, 1e-8 * lam);
    }
}

TEST(Tridiagonal, SortedAndInsideGershgorin) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g;
    SymTridiagonal t;
    for (int i = 0; i < 60; ++i) t.d.push_back(g(rng));
    for (int i = 0; i < 59; ++i) t.e.push_back(g(rng));
    double lo, hi;
    gershgorin(t, lo, hi);
    double prev = lo;
    for (int k = 0; k < 60; ++k) {
        const double lam = kth_eigenvalue(t, k);
        EXPECT_GE(lam, prev);
        EXPECT_LE(lam, hi);
        prev = lam;
    }
    EXPECT_THROW(kth_eigenvalue(t, 60), InvalidArgument);
    EXPECT_THROW(sturm_count(SymTridiagonal{{1.0}, {1.0}}, 0.0), InvalidArgument);
}
