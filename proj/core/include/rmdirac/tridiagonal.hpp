#pragma once

#include <vector>

namespace rmdirac::tridiag {

/// Symmetric tridiagonal matrix: diagonal `d` (size N), off-diagonal `e` (size N-1).
struct SymTridiagonal {
    std::vector<double> d;
    std::vector<double> e;
};

/// Number of eigenvalues strictly below x (Sturm sequence of the LDL^T pivots).
int sturm_count(const SymTridiagonal& t, double x);

/// Gershgorin interval containing the whole spectrum.
void gershgorin(const SymTridiagonal& t, double& lo, double& hi);

/// k-th smallest eigenvalue (0-based) by Sturm bisection to absolute tolerance `tol`.
double kth_eigenvalue(const SymTridiagonal& t, int k, double tol = 0.0);

/// Unit eigenvector for an (accurate) eigenvalue by inverse iteration.
std::vector<double> eigenvector(const SymTridiagonal& t, double lambda, int iterations = 3);

/// Sign changes of v, ignoring entries below rel * max|v|.
int count_sign_changes(const std::vector<double>& v, double rel = 1e-10);

}  // namespace rmdirac::tridiag
