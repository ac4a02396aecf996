#include "cslnoise/geometry.hpp"

#include <cmath>
#include <string>

#include "cslnoise/constants.hpp"
#include "cslnoise/errors.hpp"

namespace csl {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be positive and finite", name);
    }
}

}  // namespace

double sinc(double x) noexcept {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

LayerStack::LayerStack(double side, std::vector<Layer> layers)
    : side_(side), layers_(std::move(layers)) {
    require_positive(side_, "side");
    if (layers_.empty()) throw ValidationError("layer stack needs at least one layer", "layers");
    double areal = 0.0;
    for (const auto& l : layers_) {
        require_positive(l.thickness, "thickness");
        if (!(l.density >= 0.0) || !std::isfinite(l.density)) {
            throw ValidationError("density must be non-negative", "density");
        }
        height_ += l.thickness;
        areal += l.thickness * l.density;
    }
    if (!(areal > 0.0)) throw ValidationError("layer stack has zero mass", "layers");
    mass_ = side_ * side_ * areal;

    centers_.reserve(layers_.size());
    double bottom = -0.5 * height_;
    for (const auto& l : layers_) {
        centers_.push_back(bottom + 0.5 * l.thickness);
        bottom += l.thickness;
    }
}

LayerStack LayerStack::alternating(double side, int n_lay, double a, double b,
                                   double density_a, double density_b) {
    if (n_lay < 0) throw ValidationError("n_lay must be >= 0", "n_lay");
    std::vector<Layer> layers;
    layers.reserve(2 * static_cast<std::size_t>(n_lay) + 1);
    for (int i = 0; i < n_lay; ++i) {
        layers.push_back({a, density_a});
        layers.push_back({b, density_b});
    }
    layers.push_back({a, density_a});
    return LayerStack(side, std::move(layers));
}

LayerStack LayerStack::uniform(double side, double height, double density) {
    return LayerStack(side, {{height, density}});
}

double LayerStack::min_thickness() const noexcept {
    double t = layers_.front().thickness;
    for (const auto& l : layers_) t = std::min(t, l.thickness);
    return t;
}

double LayerStack::min_gap() const noexcept {
    double gap = 0.0;
    for (std::size_t i = 1; i + 1 < layers_.size(); ++i) {
        if (layers_[i].density == 0.0 && (gap == 0.0 || layers_[i].thickness < gap)) {
            gap = layers_[i].thickness;
        }
    }
    return gap;
}

int LayerStack::solid_segments() const noexcept {
    int segments = 0;
    bool in_solid = false;
    for (const auto& l : layers_) {
        const bool solid = l.density > 0.0;
        if (solid && !in_solid) ++segments;
        in_solid = solid;
    }
    return segments;
}

LayerStack LayerStack::reversed() const {
    return LayerStack(side_, std::vector<Layer>(layers_.rbegin(), layers_.rend()));
}

LayerStack LayerStack::with_density_scaled(double factor) const {
    auto layers = layers_;
    for (auto& l : layers) l.density *= factor;
    return LayerStack(side_, std::move(layers));
}

LayerStack LayerStack::merged() const {
    std::vector<Layer> out;
    for (const auto& l : layers_) {
        if (!out.empty() && out.back().density == l.density) {
            out.back().thickness += l.thickness;
        } else {
            out.push_back(l);
        }
    }
    return LayerStack(side_, std::move(out));
}

Sphere::Sphere(double r, double rho) : radius(r), density(rho) {
    require_positive(radius, "radius");
    require_positive(density, "density");
}

double Sphere::mass() const noexcept { return 4.0 / 3.0 * kPi * radius * radius * radius * density; }

Sphere Sphere::from_mass(double mass, double density) {
    require_positive(mass, "mass");
    require_positive(density, "density");
    return Sphere(std::cbrt(3.0 * mass / (4.0 * kPi * density)), density);
}

Cylinder::Cylinder(double r, double h, double rho) : radius(r), height(h), density(rho) {
    require_positive(radius, "radius");
    require_positive(height, "height");
    require_positive(density, "density");
}

double Cylinder::mass() const noexcept { return kPi * radius * radius * height * density; }

std::complex<double> mu_z_tilde(const LayerStack& stack, double k_z, double shift) {
    const auto layers = stack.layers();
    const auto centers = stack.centers();
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < layers.size(); ++n) {
        const double t = layers[n].thickness;
        // (2/k) sin(k t/2) = t sinc(k t/2)
        const double amplitude = layers[n].density * t * sinc(0.5 * k_z * t);
        const double phase = k_z * (centers[n] + shift);
        sum += amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

double transverse_factor(double side, double r_c) {
    require_positive(side, "side");
    require_positive(r_c, "r_c");
    const double u = side / (2.0 * r_c);
    if (u < 0.5) {
        // B = sum_{m>=1} (-1)^m u^{2m} / (m! (2m-1))
        const double u2 = u * u;
        double term = 1.0;  // u^{2m}/m!
        double sum = 0.0;
        for (int m = 1; m <= 30; ++m) {
            term *= -u2 / m;
            const double c = term / (2 * m - 1);
            sum += c;
            if (std::abs(c) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return -std::expm1(-u * u) - kSqrtPi * u * std::erf(u);
}

LayerThickness solve_thickness_for_mass(double mass, double side, int n_lay, double eps,
                                        double density_a, double density_b) {
    require_positive(mass, "mass");
    require_positive(side, "side");
    if (n_lay < 0) throw ValidationError("n_lay must be >= 0", "n_lay");
    if (!(eps > 0.0)) throw ValidationError("epsilon must be positive", "epsilon");
    const double effective = (n_lay + 1) * density_a + eps * n_lay * density_b;
    if (!(effective > 0.0)) {
        throw ValidationError("stack has zero effective density", "density");
    }
    const double a = mass / (side * side * effective);
    return {a, eps * a};
}

}  // namespace csl
