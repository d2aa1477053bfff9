#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctraj/errors.hpp"
#include "ctraj/fields.hpp"
#include "ctraj/integrator.hpp"

namespace ctraj {

enum class ProjectionChoice { none, stereographic, ball, half_space };

/// External form of a scenario: flat key = value text with dotted keys.
/// Unknown keys are hard errors, as are duplicates.
struct ScenarioConfig {
    std::string space_form;
    std::string field_kind;
    std::vector<double> field_a;
    double q{std::nan("")};
    std::vector<double> initial_position;
    std::vector<double> initial_velocity;
    double s_max{std::nan("")};
    double step{1e-3};
    int sample_stride{10};
    bool normalize_velocity{true};
    std::string projection{"none"};
    std::vector<double> pole;
    std::string output_csv;
    std::string output_report;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_real(const std::string& text, const std::string& key, int line_no) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw config_error("line " + std::to_string(line_no) + ": key '" + key +
                           "': cannot parse real value '" + t + "'");
    }
    return v;
}

inline std::vector<double> parse_real_list(const std::string& text, const std::string& key,
                                           int line_no) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_real(item, key, line_no));
    }
    if (out.empty()) {
        throw config_error("line " + std::to_string(line_no) + ": key '" + key +
                           "': empty list");
    }
    return out;
}

inline bool parse_bool(const std::string& text, const std::string& key, int line_no) {
    const std::string t = trim(text);
    if (t == "true") return true;
    if (t == "false") return false;
    throw config_error("line " + std::to_string(line_no) + ": key '" + key +
                       "': expected true or false, got '" + t + "'");
}

inline int parse_int(const std::string& text, const std::string& key, int line_no) {
    const double v = parse_real(text, key, line_no);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw config_error("line " + std::to_string(line_no) + ": key '" + key +
                           "': expected an integer, got '" + trim(text) + "'");
    }
    return i;
}

}  // namespace detail

/// Parses the config text. Every recognized key is listed here once;
/// anything else is rejected with its line number.
inline ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) +
                               ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + key +
                               "'");
        }
        if (key == "space_form") {
            cfg.space_form = value;
        } else if (key == "field.kind") {
            cfg.field_kind = value;
        } else if (key == "field.a") {
            cfg.field_a = detail::parse_real_list(value, key, line_no);
        } else if (key == "q") {
            cfg.q = detail::parse_real(value, key, line_no);
        } else if (key == "initial.position") {
            cfg.initial_position = detail::parse_real_list(value, key, line_no);
        } else if (key == "initial.velocity") {
            cfg.initial_velocity = detail::parse_real_list(value, key, line_no);
        } else if (key == "s_max") {
            cfg.s_max = detail::parse_real(value, key, line_no);
        } else if (key == "step") {
            cfg.step = detail::parse_real(value, key, line_no);
        } else if (key == "sample_stride") {
            cfg.sample_stride = detail::parse_int(value, key, line_no);
        } else if (key == "normalize_velocity") {
            cfg.normalize_velocity = detail::parse_bool(value, key, line_no);
        } else if (key == "projection") {
            cfg.projection = value;
        } else if (key == "pole") {
            cfg.pole = detail::parse_real_list(value, key, line_no);
        } else if (key == "output.csv") {
            cfg.output_csv = value;
        } else if (key == "output.report") {
            cfg.output_report = value;
        } else {
            throw config_error("line " + std::to_string(line_no) + ": unknown key '" + key +
                               "'");
        }
    }
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

inline ProjectionChoice projection_from_name(const std::string& name) {
    if (name == "none") return ProjectionChoice::none;
    if (name == "stereographic") return ProjectionChoice::stereographic;
    if (name == "ball") return ProjectionChoice::ball;
    if (name == "half_space") return ProjectionChoice::half_space;
    throw config_error("projection must be one of none|stereographic|ball|half_space, got '" +
                       name + "'");
}

namespace detail {

inline AmbientVector vector_from_list(const std::vector<double>& list, Signature sig,
                                      const std::string& key) {
    if (static_cast<int>(list.size()) != dimension(sig)) {
        throw config_error("key '" + key + "': expected " + std::to_string(dimension(sig)) +
                           " components, got " + std::to_string(list.size()));
    }
    AmbientVector v = AmbientVector::zero(sig);
    for (std::size_t i = 0; i < list.size(); ++i) v[static_cast<int>(i)] = list[i];
    return v;
}

}  // namespace detail

/// Validates the parsed config into a Scenario. Field-level messages name
/// the offending key.
inline Scenario build_scenario(const ScenarioConfig& cfg) {
    SpaceForm form;
    if (cfg.space_form == "euclidean") {
        form = SpaceForm::euclidean();
    } else if (cfg.space_form == "sphere") {
        form = SpaceForm::sphere();
    } else if (cfg.space_form == "hyperbolic") {
        form = SpaceForm::hyperbolic();
    } else {
        throw config_error("key 'space_form': must be euclidean|sphere|hyperbolic, got '" +
                           cfg.space_form + "'");
    }
    if (cfg.field_kind.empty()) throw config_error("key 'field.kind' is required");

    FieldSpec field;
    try {
        field = field_from_name(cfg.field_kind, cfg.field_a);
    } catch (const error& e) {
        throw config_error(std::string("key 'field.kind'/'field.a': ") + e.what());
    }
    if (field.form() != form) {
        throw config_error("key 'field.kind': field '" + cfg.field_kind +
                           "' lives on the " + field.form().name() + " space form, not " +
                           form.name());
    }
    if (!std::isfinite(cfg.q)) throw config_error("key 'q' is required and must be finite");
    if (!std::isfinite(cfg.s_max) || cfg.s_max <= 0.0) {
        throw config_error("key 's_max' is required and must be positive");
    }
    if (!(cfg.step > 0.0)) throw config_error("key 'step' must be positive");
    if (cfg.sample_stride < 1) throw config_error("key 'sample_stride' must be >= 1");

    const ProjectionChoice proj = projection_from_name(cfg.projection);
    if (proj == ProjectionChoice::stereographic && form.kind != SpaceFormKind::sphere) {
        throw config_error("key 'projection': stereographic requires space_form = sphere");
    }
    if ((proj == ProjectionChoice::ball || proj == ProjectionChoice::half_space) &&
        form.kind != SpaceFormKind::hyperbolic) {
        throw config_error("key 'projection': '" + cfg.projection +
                           "' requires space_form = hyperbolic");
    }
    if (!cfg.pole.empty() && proj != ProjectionChoice::stereographic) {
        throw config_error("key 'pole': only meaningful with projection = stereographic");
    }

    Scenario sc;
    sc.form = form;
    sc.field = field;
    sc.q = cfg.q;
    sc.initial_position =
        detail::vector_from_list(cfg.initial_position, form.signature(), "initial.position");
    sc.initial_velocity =
        detail::vector_from_list(cfg.initial_velocity, form.signature(), "initial.velocity");
    sc.s_max = cfg.s_max;
    sc.step = cfg.step;
    sc.sample_stride = cfg.sample_stride;
    return sc;
}

inline AmbientVector pole_from_config(const ScenarioConfig& cfg) {
    if (cfg.pole.empty()) return AmbientVector::r4(0, 0, 0, 1);
    return detail::vector_from_list(cfg.pole, Signature::euclidean4, "pole");
}

struct ValidatedScenario {
    Scenario scenario;
    ValidationResult validation;
    std::vector<std::string> warnings;
};

/// Shared front-end policy for run and verify: the initial position must be
/// on the manifold to within 1e-6 (a larger projection is a config error,
/// not a silent repair); the velocity is normalized when the config allows
/// it, with a warning once the correction is visible, and must already be
/// exact otherwise. q = 0 runs in geodesic mode with a warning.
inline ValidatedScenario validate_scenario(const ScenarioConfig& cfg) {
    ValidatedScenario out;
    out.scenario = build_scenario(cfg);
    try {
        out.validation = validate_initial(out.scenario);
    } catch (const degenerate_input_error& e) {
        throw config_error(std::string("key 'initial.velocity': ") + e.what());
    } catch (const manifold_error& e) {
        throw config_error(std::string("key 'initial.position': ") + e.what());
    }
    if (out.validation.position_correction > 1e-6) {
        throw config_error("key 'initial.position': off the manifold (projection would move "
                           "it by " + std::to_string(out.validation.position_correction) +
                           ", more than 1e-6)");
    }
    if (cfg.normalize_velocity) {
        if (out.validation.velocity_correction > 1e-6) {
            out.warnings.push_back(
                "initial.velocity was tangent-projected/normalized (correction " +
                std::to_string(out.validation.velocity_correction) + ")");
        }
    } else if (out.validation.velocity_correction > 1e-9) {
        throw config_error("key 'initial.velocity': not unit-length/tangent (correction " +
                           std::to_string(out.validation.velocity_correction) +
                           ") and normalize_velocity = false");
    }
    if (out.scenario.q == 0.0) {
        out.warnings.push_back("q = 0: running in geodesic mode (the trajectory equation "
                               "proper wants q != 0)");
    }
    return out;
}

}  // namespace ctraj
