#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdlag/scenarios.hpp"

namespace crowdlag {

// Invalid configuration input; mapped to exit code 1 by the CLI.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class GroupFrame {
    DomainCentre,  // group centre given relative to the domain centre
    Absolute,
};

// A fully resolved run configuration. Parsing applies the per-scenario
// defaults, so serialize/parse round-trips losslessly.
struct RunConfig {
    CaseId scenario = CaseId::Straight;
    double duration = 80.0;               // s
    std::vector<double> snapshot_times{20.0, 80.0};
    std::string out_dir = ".";
    GradientScheme gradient_scheme = GradientScheme::LineGradient;
    bool render = true;
    int quadrature_depth = 3;

    ModelParams model;
    Vec2 group_center{-30.0, 0.0};
    GroupFrame group_frame = GroupFrame::DomainCentre;
    double group_radius = 20.0;
    NumericalParams numerics;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Defaults for a scenario: duration 80 s with snapshots at 20 s and 80 s
// (200 s with snapshots at 50 s and 200 s for the spiral case), group radius
// 20 m (10 m for the spiral case). The output directory falls back to
// $CROWDLAG_OUT_DIR, then ".".
RunConfig default_config(CaseId scenario);

// Parses the sectioned key = value format (see README). Unknown keys and
// invalid values are rejected with the line number and key path.
RunConfig parse_config(const std::string& text,
                       std::optional<CaseId> scenario_override = std::nullopt);

std::string serialize_config(const RunConfig& config);

// Throws ConfigError with the offending key on violation.
void validate_config(const RunConfig& config);

ScenarioSpec to_scenario_spec(const RunConfig& config);

const char* gradient_scheme_name(GradientScheme scheme);
GradientScheme gradient_scheme_from_name(const std::string& name);

}  // namespace crowdlag
