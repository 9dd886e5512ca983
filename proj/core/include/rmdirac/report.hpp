#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmdirac/oracle.hpp"
#include "rmdirac/potentials.hpp"
#include "rmdirac/spectrum.hpp"
#include "rmdirac/spinors.hpp"

namespace rmdirac::report {

/// 17 significant digits, C locale.
std::string format_double(double x);

/// RFC 4180 table (CRLF line ends) from a header and equally long columns.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

std::string potential_csv(const std::vector<double>& r, const std::vector<double>& v);

struct MappingCheck {
    int n = 0;
    double e_direct = 0.0;
    double e_mapped = 0.0;
    double delta = 0.0;
};

struct SpectrumDocument {
    PotentialSpec potential;
    SymmetrySector sector;
    PekerisCoefficients pekeris;
    std::vector<EnergyLevel> levels;
    std::optional<std::vector<MappingCheck>> mapping_check;
};

std::string spectrum_json(const SpectrumDocument& doc);
SpectrumDocument parse_spectrum_json(const std::string& text);
std::string spectrum_csv(const SpectrumDocument& doc);

/// Potential block `{"kind": ..., parameters...}` used by spectrum files and run configs.
std::string potential_json(const PotentialSpec& pot);
PotentialSpec parse_potential_json(const std::string& text);

struct WavefunctionMeta {
    EnergyLevel level;
    double norm = 0.0;
    double scale = 0.0;
    double r_min = 0.0;
    double r_cut = 0.0;
    int points = 0;
    double ode_residual = 0.0;
    double coupled_residual = 0.0;
    double decay_slope = 0.0;
    double expected_slope = 0.0;
    int nodes_full_line = 0;
    int nodes_half_line = 0;
    std::optional<double> formula_constant;
    std::optional<double> quadrature_constant;
    std::string formula_note;
};

std::string wavefunction_csv(const SpinorState& state);
std::string wavefunction_json(const WavefunctionMeta& meta);
WavefunctionMeta parse_wavefunction_json(const std::string& text);

std::string comparison_json(const ComparisonReport& rep);
ComparisonReport parse_comparison_json(const std::string& text);

}  // namespace rmdirac::report
