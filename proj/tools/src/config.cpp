#include "config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rmdirac/errors.hpp"

namespace rmdirac::cli {

Json default_config() {
    return Json::parse(R"({
  "potential": {"kind": "reflectionless", "a2": 4.0, "alpha": 0.8},
  "sector": {"kind": "spin", "kappa": -1, "M": 5.0, "C": 0.0},
  "pekeris": {"source": "taylor", "re": null},
  "search": {
    "n_max": 4, "scan_points": 2000, "tol": 1e-12, "max_bisection": 200,
    "e_min": null, "e_max": null, "guard": 1e-9, "trig_branch": "regular",
    "parallel": false, "mapping_check": false
  },
  "oracle": {
    "r_max": 0.0, "r_min": null, "grid_points": 8001, "centrifugal": "exact", "domain": "auto",
    "fp_tol": 1e-10, "fp_max_iter": 200, "damping": 1.0, "richardson_levels": 3,
    "tail_tol": 1e-10, "check_tail": true, "both_branches": false
  },
  "scan": {"r_min": 0.0, "r_max": 5.0, "points": 501},
  "wavefunction": {"n": 0, "points": 4096, "r_min_factor": 1e-6, "r_scale": null, "tail_rel": 1e-12},
  "validate": {"n_max": 2, "tolerance": 1e-6, "fault_d1": 0.05, "inject_d1_fault": 0.0, "exact_vs_pekeris": true},
  "output": {"dir": null, "format": "both"}
})");
}

std::vector<std::string> potential_keys(const std::string& kind) {
    if (kind == "rosen_morse") return {"v1", "v2", "alpha"};
    if (kind == "reflectionless") return {"a2", "lambda", "alpha"};
    if (kind == "standard_rm") return {"a", "b", "alpha"};
    if (kind == "trig_rm") return {"v1", "v2", "half_width"};
    throw InvalidArgument("potential.kind: unknown kind '" + kind + "'");
}

namespace {

void check_potential_block(const Json& block) {
    if (!block.is_object()) throw InvalidArgument("potential: must be an object");
    if (!block.contains("kind") || !block["kind"].is_string()) throw InvalidArgument("potential.kind: string required");
    const auto keys = potential_keys(block["kind"].get<std::string>());
    for (const auto& [k, v] : block.items()) {
        if (k == "kind") continue;
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw InvalidArgument("potential." + k + ": unknown key for kind '" + block["kind"].get<std::string>() + "'");
    }
}

}  // namespace

void merge_config(Json& base, const Json& layer, const std::string& path) {
    if (!layer.is_object()) throw InvalidArgument((path.empty() ? std::string("config") : path) + ": must be an object");
    for (const auto& [key, value] : layer.items()) {
        const std::string here = path.empty() ? key : path + "." + key;
        if (path.empty() && key == "potential") {
            check_potential_block(value);
            base[key] = value;
            continue;
        }
        if (!base.contains(key)) throw InvalidArgument(here + ": unknown key");
        Json& slot = base[key];
        if (slot.is_object()) {
            merge_config(slot, value, here);
        } else {
            if (value.is_object()) throw InvalidArgument(here + ": expected a value, got an object");
            slot = value;
        }
    }
}

void apply_overrides(Json& config, const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (tok.rfind("--", 0) != 0) throw InvalidArgument("unexpected argument '" + tok + "'");
        std::string key = tok.substr(2), text;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            text = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else if (i + 1 < tokens.size() && tokens[i + 1].rfind("--", 0) != 0) {
            text = tokens[++i];
        } else {
            throw InvalidArgument("--" + key + ": missing value");
        }
        if (key.find('.') == std::string::npos) throw InvalidArgument("--" + key + ": unknown option");

        Json value;
        try {
            value = Json::parse(text);
        } catch (const nlohmann::json::exception&) {
            value = text;
        }
        // Build {"a": {"b": value}} and merge it, so unknown keys are caught the same way.
        Json layer = value;
        std::string rest = key;
        std::vector<std::string> parts;
        std::stringstream ss(rest);
        for (std::string part; std::getline(ss, part, '.');) parts.push_back(part);
        if (parts.front() == "potential") {
            if (parts.size() != 2) throw InvalidArgument("--" + key + ": unknown option");
            Json block = config["potential"];
            if (parts[1] == "kind") {
                // Switching kind drops the parameters of the old one.
                block = Json{{"kind", value}};
            } else {
                // a2 and lambda are two spellings of one parameter.
                if (parts[1] == "lambda") block.erase("a2");
                if (parts[1] == "a2") block.erase("lambda");
                block[parts[1]] = value;
            }
            check_potential_block(block);
            config["potential"] = block;
            continue;
        }
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) layer = Json{{*it, layer}};
        merge_config(config, layer);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("config: cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config: " + path + ": " + e.what());
    }
}

std::string default_output_dir() {
    const char* env = std::getenv("RMDIRAC_OUTPUT_DIR");
    return env && *env ? env : ".";
}

PekerisCoefficients make_pekeris(const std::string& source, double alpha, double r_e) {
    const PekerisSource src = pekeris_source_from_string(source);
    return src == PekerisSource::formulas ? pekeris_from_formulas(alpha, r_e) : pekeris_from_taylor_match(alpha, r_e);
}

namespace {

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw InvalidArgument(path + ": number required");
    return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InvalidArgument(path + ": integer required");
    return j.get<int>();
}

bool boolean(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InvalidArgument(path + ": true or false required");
    return j.get<bool>();
}

std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InvalidArgument(path + ": string required");
    return j.get<std::string>();
}

PotentialSpec parse_potential(const Json& p) {
    const std::string kind = string(p["kind"], "potential.kind");
    auto need = [&](const char* key) {
        if (!p.contains(key)) throw InvalidArgument(std::string("potential.") + key + ": required for kind '" + kind + "'");
        return number(p[key], std::string("potential.") + key);
    };
    if (kind == "rosen_morse") return RosenMorseGeneral{need("v1"), need("v2"), need("alpha")};
    if (kind == "standard_rm") return StandardRMParams{need("a"), need("b"), need("alpha")};
    if (kind == "trig_rm") return TrigRMParams{need("v1"), need("v2"), need("half_width")};
    if (p.contains("lambda") && !p["lambda"].is_null()) {
        const int lambda = integer(p["lambda"], "potential.lambda");
        if (lambda < 1) throw InvalidArgument("potential.lambda: must be a positive integer");
        auto r = ReflectionlessParams::from_lambda(lambda, need("alpha"));
        if (p.contains("a2")) r.a2 = number(p["a2"], "potential.a2");
        return r;
    }
    return ReflectionlessParams{need("a2"), need("alpha"), std::nullopt};
}

}  // namespace

RunConfig resolve(const Json& merged) {
    RunConfig rc;
    rc.raw = merged;
    rc.potential = parse_potential(merged["potential"]);
    validate(rc.potential);

    const Json& s = merged["sector"];
    rc.sector.kind = symmetry_from_string(string(s["kind"], "sector.kind"));
    rc.sector.kappa = integer(s["kappa"], "sector.kappa");
    rc.sector.mass = number(s["M"], "sector.M");
    rc.sector.c_const = number(s["C"], "sector.C");
    validate(rc.sector);

    const Json& pk = merged["pekeris"];
    const std::string source = string(pk["source"], "pekeris.source");
    (void)pekeris_source_from_string(source);
    if (is_trigonometric(rc.potential)) {
        rc.pekeris.alpha = range_parameter(rc.potential);
    } else {
        const double alpha = range_parameter(rc.potential);
        double r_e = 1.0;
        if (!pk["re"].is_null()) {
            r_e = number(pk["re"], "pekeris.re");
            if (!(r_e > 0.0)) throw InvalidArgument("pekeris.re: must be > 0");
            rc.pekeris_re_given = true;
        } else if (rc.sector.centrifugal_strength() != 0.0) {
            try {
                r_e = equilibrium_radius(to_general(rc.potential));
                rc.pekeris_re_given = true;
            } catch (const Error&) {
                throw InvalidArgument("pekeris.re: required, the potential has no interior minimum for r > 0");
            }
        }
        rc.pekeris = make_pekeris(source, alpha, r_e);
    }

    const Json& se = merged["search"];
    rc.n_max = integer(se["n_max"], "search.n_max");
    if (rc.n_max < 0) throw InvalidArgument("search.n_max: must be >= 0");
    rc.search.scan_points = integer(se["scan_points"], "search.scan_points");
    if (rc.search.scan_points < 10) throw InvalidArgument("search.scan_points: must be >= 10");
    rc.search.tol = number(se["tol"], "search.tol");
    if (!(rc.search.tol > 0.0)) throw InvalidArgument("search.tol: must be > 0");
    rc.search.max_bisection = integer(se["max_bisection"], "search.max_bisection");
    if (!se["e_min"].is_null()) rc.search.e_min = number(se["e_min"], "search.e_min");
    if (!se["e_max"].is_null()) rc.search.e_max = number(se["e_max"], "search.e_max");
    rc.search.guard = number(se["guard"], "search.guard");
    const std::string branch = string(se["trig_branch"], "search.trig_branch");
    if (branch == "regular") {
        rc.search.trig_branch = TrigBranch::regular;
    } else if (branch == "printed") {
        rc.search.trig_branch = TrigBranch::printed;
    } else {
        throw InvalidArgument("search.trig_branch: 'regular' or 'printed'");
    }
    rc.search.parallel = boolean(se["parallel"], "search.parallel");
    rc.mapping_check = boolean(se["mapping_check"], "search.mapping_check");

    const Json& o = merged["oracle"];
    rc.oracle.r_max = number(o["r_max"], "oracle.r_max");
    if (!o["r_min"].is_null()) rc.oracle.r_min = number(o["r_min"], "oracle.r_min");
    rc.oracle.grid_points = integer(o["grid_points"], "oracle.grid_points");
    rc.oracle.centrifugal = centrifugal_mode_from_string(string(o["centrifugal"], "oracle.centrifugal"));
    rc.oracle.domain = oracle_domain_from_string(string(o["domain"], "oracle.domain"));
    rc.oracle.fp_tol = number(o["fp_tol"], "oracle.fp_tol");
    rc.oracle.fp_max_iter = integer(o["fp_max_iter"], "oracle.fp_max_iter");
    rc.oracle.damping = number(o["damping"], "oracle.damping");
    rc.oracle.richardson_levels = integer(o["richardson_levels"], "oracle.richardson_levels");
    rc.oracle.tail_tol = number(o["tail_tol"], "oracle.tail_tol");
    rc.oracle.check_tail = boolean(o["check_tail"], "oracle.check_tail");
    rc.oracle.both_branches = boolean(o["both_branches"], "oracle.both_branches");
    validate(rc.oracle);

    const Json& out = merged["output"];
    rc.output_dir = out["dir"].is_null() ? default_output_dir() : string(out["dir"], "output.dir");
    rc.output_format = string(out["format"], "output.format");
    if (rc.output_format != "json" && rc.output_format != "csv" && rc.output_format != "both")
        throw InvalidArgument("output.format: 'json', 'csv' or 'both'");
    return rc;
}

}  // namespace rmdirac::cli
