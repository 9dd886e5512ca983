#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rmdirac/oracle.hpp"
#include "rmdirac/potentials.hpp"
#include "rmdirac/spectrum.hpp"

namespace rmdirac::cli {

using Json = nlohmann::ordered_json;

/// Every accepted key with its default.  Null marks an optional value.
Json default_config();

/// Keys a potential block may carry for its kind (besides "kind").
std::vector<std::string> potential_keys(const std::string& kind);

/// Recursively overlays `layer` on `base`.  A "potential" block in the layer
/// replaces the base block, since its keys depend on the kind.  Throws
/// InvalidArgument naming the first unknown key.
void merge_config(Json& base, const Json& layer, const std::string& path = "");

/// Applies `--a.b.c=value` (or `--a.b.c value`) tokens.  Values parse as JSON
/// when they can, else as plain strings.
void apply_overrides(Json& config, const std::vector<std::string>& tokens);

/// Reads a JSON file; throws InvalidArgument with the parser message on failure.
Json read_json_file(const std::string& path);

/// Validated, typed view of a merged configuration.
struct RunConfig {
    Json raw;
    PotentialSpec potential;
    SymmetrySector sector;
    /// Coefficients used by every command; a dummy r_e = 1 when the
    /// centrifugal strength vanishes and nothing was supplied.
    PekerisCoefficients pekeris;
    bool pekeris_re_given = false;
    int n_max = 4;
    SearchConfig search;
    bool mapping_check = false;
    OracleConfig oracle;
    std::string output_dir;
    std::string output_format = "both";
};

/// Builds the typed view; output_dir falls back to $RMDIRAC_OUTPUT_DIR, then ".".
RunConfig resolve(const Json& merged);

/// Default output directory from the environment.
std::string default_output_dir();

/// Pekeris coefficients for a given source and r_e.
PekerisCoefficients make_pekeris(const std::string& source, double alpha, double r_e);

}  // namespace rmdirac::cli
