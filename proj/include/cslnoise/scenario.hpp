#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cslnoise/bounds.hpp"
#include "cslnoise/montecarlo.hpp"
#include "cslnoise/optimize.hpp"

namespace csl::io {

inline constexpr int kSchemaVersion = 1;

enum class Dimension {
    length,       // m, µm, nm
    mass,         // kg
    density,      // kg/m3
    stiffness,    // N/m
    frequency,    // Hz
    temperature,  // K
    rate,         // 1/s
    force_psd,    // N2/Hz, aN2/Hz
    damping,      // Hz (gamma / 2 pi) or 1/s (gamma)
};

/// Parses "<number> <unit>" into SI. `key` names the field in errors.
double parse_quantity(std::string_view text, Dimension dim, const std::string& key);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double value);
/// "<shortest SI value> <SI unit>", accepted by parse_quantity.
std::string format_quantity(double si_value, Dimension dim);

struct CollapseSpec {
    std::vector<double> rc_grid;  // m
    double r_c = 1e-7;            // m, single-point target
    double lambda = 1e-8;         // 1/s, only used where eta itself is reported
};

struct ShapesSpec {
    double density = 0.0;
    std::vector<double> aspect_ratios{0.1, 1.0, 10.0};  // L / H
    std::vector<double> masses;                         // kg
    std::vector<double> side_over_rc;                   // grid for the cuboid/cylinder ratio
};

struct SimulationSpec {
    // Times are in units of the resonance period 1 / f0.
    int samples_per_period = 64;
    int periods_per_segment = 1024;
    int n_segments = 64;
    int n_trajectories = 1;
    std::uint64_t seed = 0;
    std::optional<double> quality_factor;  // replaces the resonator damping
    bool include_csl = true;
    double band_lo = 0.5;  // residual band, in units of f0
    double band_hi = 2.0;
};

struct ScenarioFile {
    int schema_version = kSchemaVersion;
    std::string label;
    PhysicalConstants constants;
    std::map<std::string, double> materials;  // name -> density
    std::optional<Geometry> geometry;
    std::optional<StackConfig> stack_config;  // set for mass-constrained multilayers
    std::optional<Resonator> resonator;
    CollapseSpec collapse;
    std::optional<ExcessNoise> excess;
    std::optional<SearchSpace> search;
    std::optional<ShapesSpec> shapes;
    std::optional<SimulationSpec> simulation;

    /// Normalized input: every quantity in SI with its unit, defaults filled.
    /// Parsing it again yields the same scenario and the same echo.
    nlohmann::json echo;

    /// Bundles the pieces needed by exclusion_curve; throws when missing.
    Scenario exclusion_scenario() const;
    const Geometry& require_geometry() const;
    const Resonator& require_resonator() const;
    const ExcessNoise& require_excess() const;
    /// Resonator (damping replaced when a quality factor is set) driven by
    /// thermal noise plus, optionally, the collapse noise of the geometry.
    SimConfig simulation_config() const;
};

ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile load_scenario(const std::filesystem::path& path);

}  // namespace csl::io
