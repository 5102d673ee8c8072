#include "ptvsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ptvsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Best-effort source anchor for a schema error: first occurrence of the
// quoted key in the raw text.
struct Locator {
    std::string_view text;

    std::pair<std::size_t, std::size_t> at_offset(std::size_t off) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < off && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const auto pos = text.find("\"" + key + "\"");
        if (pos == std::string_view::npos) throw ConfigError(msg, 0, 0);
        const auto [line, col] = at_offset(pos);
        throw ConfigError(msg, line, col);
    }
};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                    const Locator& loc) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) loc.fail(key, "unknown key '" + key + "' in " + where);
    }
}

const json& require_object(const json& j, const std::string& key, const Locator& loc) {
    if (!j.contains(key)) loc.fail(key, "missing required key '" + key + "'");
    const json& v = j.at(key);
    if (!v.is_object()) loc.fail(key, "'" + key + "' must be an object");
    return v;
}

double get_number(const json& j, const std::string& key, const Locator& loc) {
    const json& v = j.at(key);
    if (!v.is_number()) loc.fail(key, "'" + key + "' must be a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& key, const Locator& loc) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) loc.fail(key, "'" + key + "' must be an integer");
    return v.get<int>();
}

ptv::Vec3 get_vec3(const json& j, const std::string& key, const Locator& loc) {
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
        loc.fail(key, "'" + key + "' must be an array of three numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

ptv::PolySinusoidChannel parse_channel(const json& j, const Locator& loc, const std::string& key) {
    if (!j.is_object()) loc.fail(key, "poly_sinusoid channels must be objects");
    reject_unknown(j, {"poly", "amplitude", "frequency", "phase"}, "poly_sinusoid channel", loc);
    ptv::PolySinusoidChannel ch;
    if (j.contains("poly")) {
        const json& p = j.at("poly");
        if (!p.is_array()) loc.fail("poly", "'poly' must be an array of numbers");
        for (const auto& c : p) {
            if (!c.is_number()) loc.fail("poly", "'poly' must be an array of numbers");
            ch.poly.push_back(c.get<double>());
        }
    }
    if (j.contains("amplitude")) ch.amplitude = get_number(j, "amplitude", loc);
    if (j.contains("frequency")) ch.frequency = get_number(j, "frequency", loc);
    if (j.contains("phase")) ch.phase = get_number(j, "phase", loc);
    return ch;
}

std::array<ptv::PolySinusoidChannel, 3> parse_channels(const json& j, const std::string& key,
                                                       const Locator& loc) {
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 3) loc.fail(key, "'" + key + "' must hold three channels");
    return {parse_channel(v[0], loc, key), parse_channel(v[1], loc, key),
            parse_channel(v[2], loc, key)};
}

ptv::MotionProfile parse_profile(const json& j, double horizon, const Locator& loc) {
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        loc.fail("profile", "profile needs a string 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    ptv::MotionProfile profile;
    profile.horizon = horizon;
    if (kind == "constant") {
        reject_unknown(j, {"kind", "omega", "specific_force"}, "constant profile", loc);
        ptv::ConstantMotion m;
        if (j.contains("omega")) m.omega = get_vec3(j, "omega", loc);
        if (j.contains("specific_force")) m.specific_force = get_vec3(j, "specific_force", loc);
        profile.motion = m;
    } else if (kind == "coning") {
        reject_unknown(j, {"kind", "half_angle", "frequency", "thrust", "thrust_frequency"},
                       "coning profile", loc);
        ptv::ConingMotion m;
        if (j.contains("half_angle")) m.half_angle = get_number(j, "half_angle", loc);
        if (j.contains("frequency")) m.frequency = get_number(j, "frequency", loc);
        if (j.contains("thrust")) m.thrust = get_vec3(j, "thrust", loc);
        if (j.contains("thrust_frequency")) m.thrust_frequency = get_number(j, "thrust_frequency", loc);
        profile.motion = m;
    } else if (kind == "poly_sinusoid") {
        reject_unknown(j, {"kind", "omega", "specific_force"}, "poly_sinusoid profile", loc);
        ptv::PolySinusoidMotion m;
        if (j.contains("omega")) m.omega = parse_channels(j, "omega", loc);
        if (j.contains("specific_force")) m.specific_force = parse_channels(j, "specific_force", loc);
        profile.motion = m;
    } else {
        loc.fail("kind", "unknown profile kind '" + kind + "'");
    }
    return profile;
}

ordered_json vec_json(const ptv::Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

ordered_json channel_json(const ptv::PolySinusoidChannel& c) {
    return ordered_json{{"poly", c.poly},
                        {"amplitude", c.amplitude},
                        {"frequency", c.frequency},
                        {"phase", c.phase}};
}

ordered_json profile_json(const ptv::MotionProfile& p) {
    struct Visitor {
        ordered_json operator()(const ptv::ConstantMotion& m) const {
            return {{"kind", "constant"},
                    {"omega", vec_json(m.omega)},
                    {"specific_force", vec_json(m.specific_force)}};
        }
        ordered_json operator()(const ptv::ConingMotion& m) const {
            return {{"kind", "coning"},
                    {"half_angle", m.half_angle},
                    {"frequency", m.frequency},
                    {"thrust", vec_json(m.thrust)},
                    {"thrust_frequency", m.thrust_frequency}};
        }
        ordered_json operator()(const ptv::PolySinusoidMotion& m) const {
            ordered_json om = ordered_json::array(), sf = ordered_json::array();
            for (const auto& c : m.omega) om.push_back(channel_json(c));
            for (const auto& c : m.specific_force) sf.push_back(channel_json(c));
            return {{"kind", "poly_sinusoid"}, {"omega", om}, {"specific_force", sf}};
        }
    };
    return std::visit(Visitor{}, p.motion);
}

}  // namespace

ConfigError::ConfigError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + msg
                                  : msg),
      line_(line),
      column_(column) {}

ScenarioConfig parse_config(std::string_view text) {
    const Locator loc{text};
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = loc.at_offset(e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError(std::string("malformed JSON: ") + e.what(), line, col);
    }
    if (!root.is_object()) throw ConfigError("config root must be an object", 1, 1);
    reject_unknown(root,
                   {"profile", "horizon", "steps", "formulations", "refine_factor", "output",
                    "tolerances"},
                   "config", loc);

    ScenarioConfig cfg;
    if (!root.contains("horizon")) throw ConfigError("missing required key 'horizon'", 0, 0);
    const double horizon = get_number(root, "horizon", loc);
    if (!(horizon > 0.0)) loc.fail("horizon", "'horizon' must be positive");
    cfg.profile = parse_profile(require_object(root, "profile", loc), horizon, loc);

    if (root.contains("steps")) cfg.steps = get_int(root, "steps", loc);
    if (cfg.steps < 1) loc.fail("steps", "'steps' must be >= 1");
    if (root.contains("refine_factor")) cfg.refine_factor = get_int(root, "refine_factor", loc);
    if (cfg.refine_factor < 8) loc.fail("refine_factor", "'refine_factor' must be >= 8");

    if (root.contains("formulations")) {
        const json& f = root.at("formulations");
        if (!f.is_array() || f.empty()) loc.fail("formulations", "'formulations' must be a non-empty array");
        cfg.formulations.clear();
        for (const auto& item : f) {
            const auto parsed = item.is_string() ? ptv::parse_formulation(item.get<std::string>())
                                                 : std::nullopt;
            if (!parsed || *parsed == ptv::Formulation::AttitudeOnly) {
                loc.fail("formulations", "formulations must be among ptv-thrust, ptv-vtv, savage-vtv");
            }
            if (std::find(cfg.formulations.begin(), cfg.formulations.end(), *parsed) !=
                cfg.formulations.end()) {
                loc.fail("formulations", "duplicate formulation '" + item.get<std::string>() + "'");
            }
            cfg.formulations.push_back(*parsed);
        }
    }
    if (root.contains("output")) {
        const json& o = require_object(root, "output", loc);
        reject_unknown(o, {"dir", "prefix"}, "output", loc);
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) loc.fail("dir", "'dir' must be a string");
            cfg.output.dir = o.at("dir").get<std::string>();
        }
        if (o.contains("prefix")) {
            if (!o.at("prefix").is_string()) loc.fail("prefix", "'prefix' must be a string");
            cfg.output.prefix = o.at("prefix").get<std::string>();
        }
    }
    if (root.contains("tolerances")) {
        const json& t = require_object(root, "tolerances", loc);
        reject_unknown(t, {"terminal_relative", "formulation_discrepancy", "oracle_refinement"},
                       "tolerances", loc);
        if (t.contains("terminal_relative"))
            cfg.tolerances.terminal_relative = get_number(t, "terminal_relative", loc);
        if (t.contains("formulation_discrepancy"))
            cfg.tolerances.formulation_discrepancy = get_number(t, "formulation_discrepancy", loc);
        if (t.contains("oracle_refinement"))
            cfg.tolerances.oracle_refinement = get_number(t, "oracle_refinement", loc);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ordered_json to_json(const ScenarioConfig& c) {
    ordered_json forms = ordered_json::array();
    for (auto f : c.formulations) forms.push_back(std::string(ptv::name(f)));
    return {{"profile", profile_json(c.profile)},
            {"horizon", c.profile.horizon},
            {"steps", c.steps},
            {"formulations", forms},
            {"refine_factor", c.refine_factor},
            {"output", {{"dir", c.output.dir}, {"prefix", c.output.prefix}}},
            {"tolerances",
             {{"terminal_relative", c.tolerances.terminal_relative},
              {"formulation_discrepancy", c.tolerances.formulation_discrepancy},
              {"oracle_refinement", c.tolerances.oracle_refinement}}}};
}

std::string serialize(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

}  // namespace ptvsim
