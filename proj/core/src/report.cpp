#include "rmdirac/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "rmdirac/errors.hpp"

namespace rmdirac::report {

using Json = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// NaN and infinities have no JSON literal; they travel as null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double get_num(const Json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("json: missing key '") + key + "'");
    const Json& v = j.at(key);
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw InvalidArgument(std::string("json: '") + key + "' must be a number");
    return v.get<double>();
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("json: ") + e.what());
    }
}

Json potential_to_json(const PotentialSpec& pot) {
    Json j;
    j["kind"] = potential_kind(pot);
    std::visit(overloaded{
                   [&](const RosenMorseGeneral& p) {
                       j["v1"] = p.v1;
                       j["v2"] = p.v2;
                       j["alpha"] = p.alpha;
                   },
                   [&](const ReflectionlessParams& p) {
                       j["a2"] = p.a2;
                       j["alpha"] = p.alpha;
                       if (p.lambda) j["lambda"] = *p.lambda;
                   },
                   [&](const StandardRMParams& p) {
                       j["a"] = p.a;
                       j["b"] = p.b;
                       j["alpha"] = p.alpha;
                   },
                   [&](const TrigRMParams& p) {
                       j["v1"] = p.v1;
                       j["v2"] = p.v2;
                       j["half_width"] = p.half_width;
                   },
               },
               pot);
    return j;
}

PotentialSpec potential_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw InvalidArgument("potential: object with a string 'kind' required");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rosen_morse") return RosenMorseGeneral{get_num(j, "v1"), get_num(j, "v2"), get_num(j, "alpha")};
    if (kind == "reflectionless") {
        ReflectionlessParams p{get_num(j, "a2"), get_num(j, "alpha"), std::nullopt};
        if (j.contains("lambda")) p.lambda = j.at("lambda").get<int>();
        return p;
    }
    if (kind == "standard_rm") return StandardRMParams{get_num(j, "a"), get_num(j, "b"), get_num(j, "alpha")};
    if (kind == "trig_rm") return TrigRMParams{get_num(j, "v1"), get_num(j, "v2"), get_num(j, "half_width")};
    throw InvalidArgument("potential: unknown kind '" + kind + "'");
}

Json level_to_json(const EnergyLevel& lv) {
    Json j;
    j["n"] = lv.n;
    j["kappa"] = lv.kappa;
    j["E"] = num(lv.energy);
    j["residual"] = num(lv.residual);
    j["a0"] = num(lv.nu.a0);
    j["q"] = num(lv.nu.q);
    j["admissible"] = lv.admissible;
    j["a1"] = num(lv.nu.a1);
    j["a2"] = num(lv.nu.a2);
    j["shift"] = num(lv.nu.shift);
    j["bracket"] = num(lv.nu.bracket);
    j["flags"] = Json{{"q_real", lv.flags.q_real},
                      {"a0_positive", lv.flags.a0_positive},
                      {"bracket_negative", lv.flags.bracket_negative},
                      {"left_decay", lv.flags.left_decay}};
    return j;
}

EnergyLevel level_from_json(const Json& j) {
    EnergyLevel lv;
    lv.n = j.at("n").get<int>();
    lv.kappa = j.at("kappa").get<int>();
    lv.energy = get_num(j, "E");
    lv.residual = get_num(j, "residual");
    lv.nu.a0 = get_num(j, "a0");
    lv.nu.q = get_num(j, "q");
    lv.admissible = j.at("admissible").get<bool>();
    if (j.contains("a1")) lv.nu.a1 = get_num(j, "a1");
    if (j.contains("a2")) lv.nu.a2 = get_num(j, "a2");
    if (j.contains("shift")) lv.nu.shift = get_num(j, "shift");
    if (j.contains("bracket")) lv.nu.bracket = get_num(j, "bracket");
    if (j.contains("flags")) {
        const Json& f = j.at("flags");
        lv.flags.q_real = f.at("q_real").get<bool>();
        lv.flags.a0_positive = f.at("a0_positive").get<bool>();
        lv.flags.bracket_negative = f.at("bracket_negative").get<bool>();
        lv.flags.left_decay = f.at("left_decay").get<bool>();
    }
    return lv;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw InvalidArgument("csv: header and column count differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns)
        if (c.size() != rows) throw InvalidArgument("csv: columns differ in length");
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\r\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += "\r\n";
    }
    return out;
}

std::string potential_csv(const std::vector<double>& r, const std::vector<double>& v) { return csv({"r", "V"}, {r, v}); }

std::string potential_json(const PotentialSpec& pot) { return potential_to_json(pot).dump(); }

PotentialSpec parse_potential_json(const std::string& text) { return potential_from_json(parse(text)); }

std::string spectrum_json(const SpectrumDocument& doc) {
    Json j;
    j["potential"] = potential_to_json(doc.potential);
    j["sector"] = Json{{"kind", to_string(doc.sector.kind)},
                       {"kappa", doc.sector.kappa},
                       {"M", doc.sector.mass},
                       {"C", doc.sector.c_const}};
    j["pekeris"] = Json{{"d0", num(doc.pekeris.d0)},
                        {"d1", num(doc.pekeris.d1)},
                        {"d2", num(doc.pekeris.d2)},
                        {"re", num(doc.pekeris.r_e)},
                        {"source", to_string(doc.pekeris.source)}};
    Json levels = Json::array();
    for (const auto& lv : doc.levels) levels.push_back(level_to_json(lv));
    j["levels"] = levels;
    if (doc.mapping_check) {
        Json m = Json::array();
        for (const auto& c : *doc.mapping_check)
            m.push_back(Json{{"n", c.n}, {"E_direct", num(c.e_direct)}, {"E_mapped", num(c.e_mapped)}, {"delta", num(c.delta)}});
        j["mapping_check"] = m;
    }
    return j.dump(2) + "\n";
}

SpectrumDocument parse_spectrum_json(const std::string& text) {
    const Json j = parse(text);
    SpectrumDocument doc;
    doc.potential = potential_from_json(j.at("potential"));
    const Json& s = j.at("sector");
    doc.sector.kind = symmetry_from_string(s.at("kind").get<std::string>());
    doc.sector.kappa = s.at("kappa").get<int>();
    doc.sector.mass = get_num(s, "M");
    doc.sector.c_const = get_num(s, "C");
    const Json& p = j.at("pekeris");
    doc.pekeris.d0 = get_num(p, "d0");
    doc.pekeris.d1 = get_num(p, "d1");
    doc.pekeris.d2 = get_num(p, "d2");
    doc.pekeris.r_e = get_num(p, "re");
    doc.pekeris.source = pekeris_source_from_string(p.at("source").get<std::string>());
    doc.pekeris.alpha = is_trigonometric(doc.potential) ? 1.0 : range_parameter(doc.potential);
    for (const auto& lv : j.at("levels")) doc.levels.push_back(level_from_json(lv));
    if (j.contains("mapping_check")) {
        std::vector<MappingCheck> m;
        for (const auto& c : j.at("mapping_check"))
            m.push_back({c.at("n").get<int>(), get_num(c, "E_direct"), get_num(c, "E_mapped"), get_num(c, "delta")});
        doc.mapping_check = m;
    }
    return doc;
}

std::string spectrum_csv(const SpectrumDocument& doc) {
    std::string out = "n,kappa,E,residual,a0,q,admissible";
    if (doc.mapping_check) out += ",mapped_delta";
    out += "\r\n";
    for (const auto& lv : doc.levels) {
        out += std::to_string(lv.n) + "," + std::to_string(lv.kappa) + "," + format_double(lv.energy) + "," +
               format_double(lv.residual) + "," + format_double(lv.nu.a0) + "," + format_double(lv.nu.q) + "," +
               (lv.admissible ? "true" : "false");
        if (doc.mapping_check) {
            double delta = std::numeric_limits<double>::quiet_NaN();
            for (const auto& c : *doc.mapping_check)
                if (c.n == lv.n && c.e_direct == lv.energy) delta = c.delta;
            out += "," + format_double(delta);
        }
        out += "\r\n";
    }
    return out;
}

std::string wavefunction_csv(const SpinorState& state) { return csv({"r", "F", "G"}, {state.r, state.upper, state.lower}); }

std::string wavefunction_json(const WavefunctionMeta& m) {
    Json j;
    j["level"] = level_to_json(m.level);
    j["norm"] = num(m.norm);
    j["scale"] = num(m.scale);
    j["r_min"] = num(m.r_min);
    j["r_cut"] = num(m.r_cut);
    j["points"] = m.points;
    j["ode_residual"] = num(m.ode_residual);
    j["coupled_residual"] = num(m.coupled_residual);
    j["decay_slope"] = num(m.decay_slope);
    j["expected_slope"] = num(m.expected_slope);
    j["nodes_full_line"] = m.nodes_full_line;
    j["nodes_half_line"] = m.nodes_half_line;
    Json f;
    f["formula_constant"] = m.formula_constant ? num(*m.formula_constant) : Json(nullptr);
    f["quadrature_constant"] = m.quadrature_constant ? num(*m.quadrature_constant) : Json(nullptr);
    f["note"] = m.formula_note;
    j["normalization_formula"] = f;
    return j.dump(2) + "\n";
}

WavefunctionMeta parse_wavefunction_json(const std::string& text) {
    const Json j = parse(text);
    WavefunctionMeta m;
    m.level = level_from_json(j.at("level"));
    m.norm = get_num(j, "norm");
    m.scale = get_num(j, "scale");
    m.r_min = get_num(j, "r_min");
    m.r_cut = get_num(j, "r_cut");
    m.points = j.at("points").get<int>();
    m.ode_residual = get_num(j, "ode_residual");
    m.coupled_residual = get_num(j, "coupled_residual");
    m.decay_slope = get_num(j, "decay_slope");
    m.expected_slope = get_num(j, "expected_slope");
    m.nodes_full_line = j.at("nodes_full_line").get<int>();
    m.nodes_half_line = j.at("nodes_half_line").get<int>();
    const Json& f = j.at("normalization_formula");
    if (!f.at("formula_constant").is_null()) m.formula_constant = f.at("formula_constant").get<double>();
    if (!f.at("quadrature_constant").is_null()) m.quadrature_constant = f.at("quadrature_constant").get<double>();
    m.formula_note = f.at("note").get<std::string>();
    return m;
}

std::string comparison_json(const ComparisonReport& rep) {
    Json j;
    j["mode"] = rep.mode;
    Json levels = Json::array();
    for (const auto& e : rep.per_level)
        levels.push_back(Json{{"n", e.n},
                              {"E_closed", num(e.e_closed)},
                              {"E_oracle", num(e.e_oracle)},
                              {"delta_abs", num(e.delta_abs)},
                              {"delta_rel", num(e.delta_rel)}});
    j["per_level"] = levels;
    j["max_delta_abs"] = num(rep.max_delta_abs);
    j["pass"] = rep.pass;
    j["warnings"] = rep.warnings;
    return j.dump(2) + "\n";
}

ComparisonReport parse_comparison_json(const std::string& text) {
    const Json j = parse(text);
    ComparisonReport rep;
    rep.mode = j.at("mode").get<std::string>();
    for (const auto& e : j.at("per_level"))
        rep.per_level.push_back(
            {e.at("n").get<int>(), get_num(e, "E_closed"), get_num(e, "E_oracle"), get_num(e, "delta_abs"), get_num(e, "delta_rel")});
    rep.max_delta_abs = get_num(j, "max_delta_abs");
    rep.pass = j.at("pass").get<bool>();
    if (j.contains("warnings")) rep.warnings = j.at("warnings").get<std::vector<std::string>>();
    return rep;
}

}  // namespace rmdirac::report
