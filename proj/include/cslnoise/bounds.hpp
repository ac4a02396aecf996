#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cslnoise/diffusion.hpp"
#include "cslnoise/spectra.hpp"

namespace csl {

/// n points log-spaced over [lo, hi]. Grid 2n-1 contains grid n bit-exactly.
std::vector<double> log_grid(double lo, double hi, int n);

/// Default r_c grid: 200 points over [1 nm, 1 mm].
std::vector<double> default_rc_grid();

struct Scenario {
    std::string label;
    Geometry geometry;
    std::optional<Resonator> resonator;
    ExcessNoise excess;
    std::vector<double> rc_grid;
    PhysicalConstants constants;

    void validate() const;
};

struct CurvePoint {
    double r_c = 0.0;
    double lambda_bound = 0.0;
    double eta_bar = 0.0;
};

struct ExclusionCurve {
    std::string label;
    std::vector<CurvePoint> points;

    /// Indices of interior strict local minima of lambda_bound.
    std::vector<std::size_t> local_minima() const;
    std::size_t global_minimum() const;
    /// The local minimum whose r_c is closest (in log) to `r_c`.
    std::optional<std::size_t> minimum_near(double r_c) const;
};

/// Evaluates lambda_bound on every grid point. Per-point failures are
/// rethrown with the grid index in the message.
ExclusionCurve exclusion_curve(const Scenario& s, int threads = 1);

enum class ShapeMatch {
    equal_mass_density,  // same M, L and density; heights differ
    equal_mass_height,   // same M, L and height; densities differ
};

/// eta_cuboid / eta_cylinder for a cuboid of side L and a cylinder of radius L.
/// The cuboid height is M / (density L^2); the cylinder height follows `match`.
double cuboid_cylinder_ratio(double side, double r_c, double mass, double density,
                             ShapeMatch match, const PhysicalConstants& c = {});

struct ShapeRow {
    double mass = 0.0;
    double sphere = 0.0;
    std::vector<double> cuboid;    // per aspect ratio
    std::vector<double> cylinder;  // per aspect ratio
};

struct ShapeComparison {
    std::vector<double> aspect_ratios;  // L / H
    std::vector<ShapeRow> rows;         // S_csl = hbar^2 eta, N^2/Hz
};

/// S_csl against mass for a sphere, and cuboids and cylinders of each L/H.
ShapeComparison compare_shapes(double density, const std::vector<double>& aspect_ratios,
                               const CollapseParams& p, const std::vector<double>& masses,
                               const PhysicalConstants& c = {});

struct StackConfig {
    std::string label;
    double side = 0.0;
    double mass = 0.0;
    int n_lay = 0;
    double epsilon = 1.0;
    double density_a = 0.0;
    double density_b = 0.0;

    LayerStack build() const;
};

struct StackStudy {
    StackConfig config;
    double a = 0.0;
    double height = 0.0;
    ExclusionCurve curve;
    std::size_t global_minimum = 0;
    /// Local minimum nearest r_c = a, the layering signature.
    std::optional<std::size_t> layer_minimum;
};

/// Exclusion curves for a set of mass-constrained alternating stacks.
std::vector<StackStudy> bigger_mass_study(const std::vector<StackConfig>& configs,
                                          const ExcessNoise& excess,
                                          const std::vector<double>& rc_grid, int threads = 1,
                                          const PhysicalConstants& c = {});

}  // namespace csl
