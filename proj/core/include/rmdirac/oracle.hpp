#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmdirac/potentials.hpp"
#include "rmdirac/spectrum.hpp"

namespace rmdirac {

enum class CentrifugalMode { exact, pekeris };

std::string to_string(CentrifugalMode mode);
CentrifugalMode centrifugal_mode_from_string(const std::string& name);

/// Where the effective equation is discretized.
///  - half_line: [r_min, r_max], Dirichlet at both ends.
///  - full_line: [-r_max, r_max]; the hyperbolic potentials (and the Pekeris
///    term) are continued to r < 0.  This is the problem whose eigenvalues the
///    closed forms reproduce exactly.
///  - interval: the trigonometric form's own (-half_width, half_width).
///  - automatic: interval for trig_rm, half_line when an exact centrifugal
///    term is present, full_line otherwise.
enum class OracleDomain { automatic, half_line, full_line, interval };

std::string to_string(OracleDomain domain);
OracleDomain oracle_domain_from_string(const std::string& name);

struct OracleConfig {
    double r_max = 0.0;  ///< 0 selects 30 / alpha
    std::optional<double> r_min;  ///< half-line start; default 1e-6 r_e with a centrifugal term, else 0
    int grid_points = 8001;
    CentrifugalMode centrifugal = CentrifugalMode::exact;
    OracleDomain domain = OracleDomain::automatic;
    double fp_tol = 1e-10;
    int fp_max_iter = 200;
    double damping = 1.0;
    /// Number of grids (h, h/2, ...) combined by Richardson extrapolation; 1 disables it.
    int richardson_levels = 3;
    double tail_tol = 1e-10;
    bool check_tail = true;
    /// Also iterate on the second root of lambda = -A^2(E) and report it as alt_energy.
    bool both_branches = false;
    /// Starting energies per node count; default is the threshold M (spin) / -M (pspin).
    std::vector<double> initial_energies;
};

void validate(const OracleConfig& config);

struct EigenPair {
    double lambda = 0.0;
    int nodes = 0;
    std::vector<double> x;
    std::vector<double> vector;
};

/// Lowest `count` eigenpairs of -u'' + [centrifugal + B(E) W] u = lambda u at
/// fixed E (W = V for spin, -V for pspin) on a single grid of config.grid_points.
/// Throws DiscretizationError when an open end of the box still carries the
/// wavefunction tail.
std::vector<EigenPair> solve_fixed_E_eigen(const PotentialSpec& pot, const SymmetrySector& sector,
                                           const PekerisCoefficients& coeffs, double energy, int count,
                                           const OracleConfig& config);

struct OracleLevel {
    int index_by_nodes = 0;
    int nodes_counted = 0;
    double energy = 0.0;
    /// Self-consistent solution on the second root of lambda = -A^2(E), when
    /// requested and inside the binding window.
    std::optional<double> alt_energy;
    int fp_iterations = 0;
    bool converged = false;
    double final_damping = 1.0;
    std::vector<double> trace;
};

/// Damped fixed point E <- E + d (E_root(lambda_n(E)) - E) for n = 0..n_max.
/// E_root takes the root above (spin) or below (pspin) the vertex C/2 first
/// and falls back to the other root when the iteration pins at the vertex.
/// Throws ConvergenceError (with the iteration trace in the message) after
/// fp_max_iter iterations.
std::vector<OracleLevel> self_consistent_levels(const PotentialSpec& pot, const SymmetrySector& sector,
                                                const PekerisCoefficients& coeffs, int n_max,
                                                const OracleConfig& config);

/// Nonrelativistic check: eigenvalues E of -(1/2 mu) u'' + [l(l+1)/(2 mu r^2) + V] u = E u
/// (centrifugal per config.centrifugal), no self-consistency involved.
std::vector<double> schrodinger_levels(const PotentialSpec& pot, int l, double mu, const PekerisCoefficients& coeffs,
                                       int n_max, const OracleConfig& config);

struct ComparisonEntry {
    int n = 0;
    double e_closed = 0.0;
    double e_oracle = 0.0;
    double delta_abs = 0.0;
    double delta_rel = 0.0;
};

struct ComparisonReport {
    std::string mode;
    std::vector<ComparisonEntry> per_level;
    double max_delta_abs = 0.0;
    bool pass = false;
    std::vector<std::string> warnings;
};

/// Matches admissible closed-form levels to oracle levels by n.
ComparisonReport compare(const std::vector<EnergyLevel>& closed, const std::vector<OracleLevel>& numeric,
                         double tolerance, const std::string& mode);

}  // namespace rmdirac
