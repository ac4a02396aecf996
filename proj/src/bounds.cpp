#include "cslnoise/bounds.hpp"

#include <cmath>
#include <limits>

#include "cslnoise/errors.hpp"
#include "cslnoise/parallel.hpp"

namespace csl {

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw ValidationError("log grid needs 0 < lo < hi and at least 2 points", "rc_grid");
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    const double log_lo = std::log(lo);
    const double log_span = std::log(hi) - log_lo;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        out[i] = std::exp(log_lo + t * log_span);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_rc_grid() { return log_grid(1e-9, 1e-3, 200); }

void Scenario::validate() const {
    if (rc_grid.size() < 2) throw ValidationError("rc_grid needs at least 2 points", "rc_grid");
    for (std::size_t i = 0; i < rc_grid.size(); ++i) {
        if (!(rc_grid[i] > 0.0)) throw ValidationError("rc_grid values must be positive", "rc_grid");
        if (i > 0 && !(rc_grid[i] > rc_grid[i - 1])) {
            throw ValidationError("rc_grid must be strictly increasing", "rc_grid");
        }
    }
    if (!(excess.value >= 0.0)) throw ValidationError("excess noise must be >= 0", "excess_noise");
    if (resonator) resonator->validate();
}

std::vector<std::size_t> ExclusionCurve::local_minima() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const double v = points[i].lambda_bound;
        if (v < points[i - 1].lambda_bound && v < points[i + 1].lambda_bound) out.push_back(i);
    }
    return out;
}

std::size_t ExclusionCurve::global_minimum() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].lambda_bound < points[best].lambda_bound) best = i;
    }
    return best;
}

std::optional<std::size_t> ExclusionCurve::minimum_near(double r_c) const {
    std::optional<std::size_t> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (auto i : local_minima()) {
        const double d = std::abs(std::log(points[i].r_c / r_c));
        if (d < best_distance) {
            best_distance = d;
            best = i;
        }
    }
    return best;
}

ExclusionCurve exclusion_curve(const Scenario& s, int threads) {
    s.validate();
    ExclusionCurve curve;
    curve.label = s.label;
    curve.points.resize(s.rc_grid.size());
    parallel_for(s.rc_grid.size(), threads, [&](std::size_t i) {
        const double r_c = s.rc_grid[i];
        try {
            const double eta_bar = reduced_eta(s.geometry, r_c, s.constants);
            curve.points[i] = {r_c, lambda_bound(s.excess, eta_bar, s.constants), eta_bar};
        } catch (const ValidationError& e) {
            throw ValidationError("grid index " + std::to_string(i) + ": " + e.what(), e.key());
        } catch (const std::exception& e) {
            throw ConvergenceError("grid index " + std::to_string(i) + ": " + e.what());
        }
    });
    return curve;
}

double cuboid_cylinder_ratio(double side, double r_c, double mass, double density,
                             ShapeMatch match, const PhysicalConstants& c) {
    const CollapseParams p{1.0, r_c};
    const double cuboid_height = mass / (density * side * side);
    const double cylinder_height =
        match == ShapeMatch::equal_mass_density ? cuboid_height / kPi : cuboid_height;
    return eta_cuboid_uniform(mass, side, cuboid_height, p, c) /
           eta_cylinder(mass, side, cylinder_height, p, c);
}

ShapeComparison compare_shapes(double density, const std::vector<double>& aspect_ratios,
                               const CollapseParams& p, const std::vector<double>& masses,
                               const PhysicalConstants& c) {
    p.validate();
    if (!(density > 0.0)) throw ValidationError("density must be positive", "density");
    for (double a : aspect_ratios) {
        if (!(a > 0.0)) throw ValidationError("aspect ratios must be positive", "aspect_ratios");
    }
    ShapeComparison out;
    out.aspect_ratios = aspect_ratios;
    const double to_force = c.hbar * c.hbar;
    for (double m : masses) {
        ShapeRow row;
        row.mass = m;
        const auto sphere = Sphere::from_mass(m, density);
        row.sphere = to_force * eta_sphere(m, sphere.radius, p, c);
        for (double alpha : aspect_ratios) {
            // L = alpha H with L^2 H rho = M (cuboid) or pi L^2 H rho = M (cylinder)
            const double hc = std::cbrt(m / (alpha * alpha * density));
            row.cuboid.push_back(to_force * eta_cuboid_uniform(m, alpha * hc, hc, p, c));
            const double hy = std::cbrt(m / (kPi * alpha * alpha * density));
            row.cylinder.push_back(to_force * eta_cylinder(m, alpha * hy, hy, p, c));
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

LayerStack StackConfig::build() const {
    const auto t = solve_thickness_for_mass(mass, side, n_lay, epsilon, density_a, density_b);
    return LayerStack::alternating(side, n_lay, t.a, t.b, density_a, density_b);
}

std::vector<StackStudy> bigger_mass_study(const std::vector<StackConfig>& configs,
                                          const ExcessNoise& excess,
                                          const std::vector<double>& rc_grid, int threads,
                                          const PhysicalConstants& c) {
    std::vector<StackStudy> out;
    for (const auto& cfg : configs) {
        StackStudy study;
        study.config = cfg;
        auto stack = cfg.build();
        study.a = stack.layers().front().thickness;
        study.height = stack.height();
        Scenario s{cfg.label, std::move(stack), std::nullopt, excess, rc_grid, c};
        study.curve = exclusion_curve(s, threads);
        study.global_minimum = study.curve.global_minimum();
        study.layer_minimum = study.curve.minimum_near(study.a);
        out.push_back(std::move(study));
    }
    return out;
}

}  // namespace csl
