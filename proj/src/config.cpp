#include "crowdlag/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace crowdlag {

const char* gradient_scheme_name(GradientScheme scheme) {
    return scheme == GradientScheme::LineGradient ? "line" : "paper-literal";
}

GradientScheme gradient_scheme_from_name(const std::string& name) {
    if (name == "line") return GradientScheme::LineGradient;
    if (name == "paper-literal") return GradientScheme::PaperLiteral;
    throw ConfigError("unknown gradient scheme '" + name +
                      "' (expected line or paper-literal)");
}

RunConfig default_config(CaseId scenario) {
    RunConfig cfg;
    cfg.scenario = scenario;
    if (scenario == CaseId::Spiral) {
        cfg.duration = 200.0;
        cfg.snapshot_times = {50.0, 200.0};
        cfg.group_radius = 10.0;
    }
    if (const char* env = std::getenv("CROWDLAG_OUT_DIR"); env && *env) {
        cfg.out_dir = env;
    }
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct ConfigLine {
    std::string section;
    std::string key;
    std::string value;
    int line_no = 0;

    std::string path() const { return section.empty() ? key : section + "." + key; }
};

[[noreturn]] void fail(const ConfigLine& at, const std::string& what) {
    throw ConfigError("line " + std::to_string(at.line_no) + ": " + at.path() + ": " + what);
}

double parse_double(const ConfigLine& at) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(at.value, &pos);
    } catch (const std::exception&) {
        fail(at, "expected a number, got '" + at.value + "'");
    }
    if (pos != at.value.size()) fail(at, "expected a number, got '" + at.value + "'");
    return v;
}

int parse_int(const ConfigLine& at) {
    const double v = parse_double(at);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail(at, "expected an integer, got '" + at.value + "'");
    return i;
}

bool parse_bool(const ConfigLine& at) {
    if (at.value == "true") return true;
    if (at.value == "false") return false;
    fail(at, "expected true or false, got '" + at.value + "'");
}

std::vector<double> parse_double_list(const ConfigLine& at) {
    std::vector<double> out;
    if (trim(at.value).empty()) return out;
    std::stringstream ss(at.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ConfigLine sub = at;
        sub.value = trim(item);
        out.push_back(parse_double(sub));
    }
    return out;
}

std::vector<ConfigLine> tokenize(const std::string& text) {
    std::vector<ConfigLine> lines;
    std::stringstream ss(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto comment = raw.find('#');
        if (comment != std::string::npos) raw.erase(comment);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        ConfigLine cl;
        cl.section = section;
        cl.key = trim(line.substr(0, eq));
        cl.value = trim(line.substr(eq + 1));
        cl.line_no = line_no;
        if (cl.key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        lines.push_back(cl);
    }
    return lines;
}

std::string format_exact(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<CaseId> scenario_override) {
    const std::vector<ConfigLine> lines = tokenize(text);

    CaseId scenario;
    if (scenario_override) {
        scenario = *scenario_override;
    } else {
        const ConfigLine* sc = nullptr;
        for (const auto& l : lines) {
            if (l.section.empty() && l.key == "scenario") sc = &l;
        }
        if (!sc) throw ConfigError("no scenario selected (config key or --scenario)");
        try {
            scenario = case_from_name(sc->value);
        } catch (const std::invalid_argument& e) {
            fail(*sc, e.what());
        }
    }

    RunConfig cfg = default_config(scenario);
    for (const auto& l : lines) {
        if (l.section.empty()) {
            if (l.key == "scenario") {
                if (!scenario_override) {
                    try {
                        cfg.scenario = case_from_name(l.value);
                    } catch (const std::invalid_argument& e) {
                        fail(l, e.what());
                    }
                }
            } else if (l.key == "duration") {
                cfg.duration = parse_double(l);
            } else if (l.key == "snapshots") {
                cfg.snapshot_times = parse_double_list(l);
            } else if (l.key == "out_dir") {
                cfg.out_dir = l.value;
            } else if (l.key == "gradient_scheme") {
                try {
                    cfg.gradient_scheme = gradient_scheme_from_name(l.value);
                } catch (const ConfigError& e) {
                    fail(l, e.what());
                }
            } else if (l.key == "render") {
                cfg.render = parse_bool(l);
            } else if (l.key == "quadrature_depth") {
                cfg.quadrature_depth = parse_int(l);
            } else {
                fail(l, "unknown key");
            }
        } else if (l.section == "model") {
            if (l.key == "v_free") cfg.model.v_free = parse_double(l);
            else if (l.key == "rho_jam") cfg.model.rho_jam = parse_double(l);
            else if (l.key == "beta_dyn") cfg.model.beta_dyn = parse_double(l);
            else if (l.key == "zigzag_a") cfg.model.zigzag_a = parse_double(l);
            else if (l.key == "zigzag_b") cfg.model.zigzag_b = parse_double(l);
            else if (l.key == "spiral_center_x") cfg.model.spiral_center.x = parse_double(l);
            else if (l.key == "spiral_center_y") cfg.model.spiral_center.y = parse_double(l);
            else if (l.key == "spiral_b") cfg.model.spiral_b = parse_double(l);
            else fail(l, "unknown key");
        } else if (l.section == "initial") {
            if (l.key == "x0") cfg.group_center.x = parse_double(l);
            else if (l.key == "y0") cfg.group_center.y = parse_double(l);
            else if (l.key == "r0") cfg.group_radius = parse_double(l);
            else if (l.key == "frame") {
                if (l.value == "centre") cfg.group_frame = GroupFrame::DomainCentre;
                else if (l.value == "absolute") cfg.group_frame = GroupFrame::Absolute;
                else fail(l, "expected centre or absolute, got '" + l.value + "'");
            } else fail(l, "unknown key");
        } else if (l.section == "numerical") {
            if (l.key == "dt") cfg.numerics.dt = parse_double(l);
            else if (l.key == "alpha") cfg.numerics.remesh_alpha = parse_double(l);
            else if (l.key == "cell_area") cfg.numerics.cell_area = parse_double(l);
            else if (l.key == "x_min") cfg.numerics.domain_x.lo = parse_double(l);
            else if (l.key == "x_max") cfg.numerics.domain_x.hi = parse_double(l);
            else if (l.key == "y_min") cfg.numerics.domain_y.lo = parse_double(l);
            else if (l.key == "y_max") cfg.numerics.domain_y.hi = parse_double(l);
            else if (l.key == "remesh_margin") {
                if (l.value == "auto") cfg.numerics.remesh_margin = -1.0;
                else cfg.numerics.remesh_margin = parse_double(l);
            } else fail(l, "unknown key");
        } else {
            fail(l, "unknown section");
        }
    }

    validate_config(cfg);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "scenario = " << case_name(cfg.scenario) << '\n';
    out << "duration = " << format_exact(cfg.duration) << '\n';
    out << "snapshots = ";
    for (size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
        if (i) out << ',';
        out << format_exact(cfg.snapshot_times[i]);
    }
    out << '\n';
    out << "out_dir = " << cfg.out_dir << '\n';
    out << "gradient_scheme = " << gradient_scheme_name(cfg.gradient_scheme) << '\n';
    out << "render = " << (cfg.render ? "true" : "false") << '\n';
    out << "quadrature_depth = " << cfg.quadrature_depth << '\n';
    out << '\n';
    out << "[model]\n";
    out << "v_free = " << format_exact(cfg.model.v_free) << '\n';
    out << "rho_jam = " << format_exact(cfg.model.rho_jam) << '\n';
    out << "beta_dyn = " << format_exact(cfg.model.beta_dyn) << '\n';
    out << "zigzag_a = " << format_exact(cfg.model.zigzag_a) << '\n';
    out << "zigzag_b = " << format_exact(cfg.model.zigzag_b) << '\n';
    out << "spiral_center_x = " << format_exact(cfg.model.spiral_center.x) << '\n';
    out << "spiral_center_y = " << format_exact(cfg.model.spiral_center.y) << '\n';
    out << "spiral_b = " << format_exact(cfg.model.spiral_b) << '\n';
    out << '\n';
    out << "[initial]\n";
    out << "x0 = " << format_exact(cfg.group_center.x) << '\n';
    out << "y0 = " << format_exact(cfg.group_center.y) << '\n';
    out << "r0 = " << format_exact(cfg.group_radius) << '\n';
    out << "frame = " << (cfg.group_frame == GroupFrame::DomainCentre ? "centre" : "absolute")
        << '\n';
    out << '\n';
    out << "[numerical]\n";
    out << "dt = " << format_exact(cfg.numerics.dt) << '\n';
    out << "alpha = " << format_exact(cfg.numerics.remesh_alpha) << '\n';
    out << "cell_area = " << format_exact(cfg.numerics.cell_area) << '\n';
    out << "x_min = " << format_exact(cfg.numerics.domain_x.lo) << '\n';
    out << "x_max = " << format_exact(cfg.numerics.domain_x.hi) << '\n';
    out << "y_min = " << format_exact(cfg.numerics.domain_y.lo) << '\n';
    out << "y_max = " << format_exact(cfg.numerics.domain_y.hi) << '\n';
    if (cfg.numerics.remesh_margin > 0.0) {
        out << "remesh_margin = " << format_exact(cfg.numerics.remesh_margin) << '\n';
    } else {
        out << "remesh_margin = auto\n";
    }
    return out.str();
}

void validate_config(const RunConfig& cfg) {
    const auto check = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    check(std::isfinite(cfg.duration) && cfg.duration >= 0.0, "duration must be >= 0");
    check(cfg.model.v_free > 0.0, "model.v_free must be > 0");
    check(cfg.model.rho_jam > 0.0, "model.rho_jam must be > 0");
    check(cfg.model.beta_dyn >= 0.0, "model.beta_dyn must be >= 0");
    check(cfg.model.zigzag_a > 0.0, "model.zigzag_a must be > 0");
    check(cfg.numerics.dt > 0.0, "numerical.dt must be > 0");
    check(cfg.numerics.remesh_alpha > 0.0 && cfg.numerics.remesh_alpha < 1.0,
          "numerical.alpha must lie in (0,1)");
    check(cfg.numerics.cell_area > 0.0, "numerical.cell_area must be > 0");
    check(cfg.numerics.domain_x.lo < cfg.numerics.domain_x.hi,
          "numerical.x_min must be < numerical.x_max");
    check(cfg.numerics.domain_y.lo < cfg.numerics.domain_y.hi,
          "numerical.y_min must be < numerical.y_max");
    check(cfg.group_radius > 0.0, "initial.r0 must be > 0");
    check(cfg.quadrature_depth >= 0 && cfg.quadrature_depth <= 8,
          "quadrature_depth must lie in [0,8]");
    for (const double t : cfg.snapshot_times) {
        check(t >= 0.0 && t <= cfg.duration + 1e-9,
              "snapshots entries must lie in [0, duration]");
    }
}

ScenarioSpec to_scenario_spec(const RunConfig& cfg) {
    ScenarioSpec spec = scenario_preset(cfg.scenario);
    spec.model = cfg.model;
    spec.numerics = cfg.numerics;
    spec.group_radius = cfg.group_radius;
    spec.quadrature_depth = cfg.quadrature_depth;
    if (cfg.group_frame == GroupFrame::DomainCentre) {
        spec.group_center = Point2{cfg.numerics.domain_x.center(),
                                   cfg.numerics.domain_y.center()} +
                            cfg.group_center;
    } else {
        spec.group_center = cfg.group_center;
    }
    return spec;
}

}  // namespace crowdlag
