#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cslnoise/constants.hpp"
#include "cslnoise/geometry.hpp"
#include "cslnoise/quadrature.hpp"

namespace oracle {

inline double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

/// Composite Gauss-Legendre on [lo, hi].
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        int panels, int order = 20) {
    const csl::GaussLegendre rule(order);
    return rule.integrate(f, lo, hi, panels);
}

/// eta / lambda of a radially symmetric body from the 3D transform:
/// rc^3 / (pi^1.5 m0^2) (4 pi / 3) int k^4 exp(-rc^2 k^2) |mu(k)|^2 dk.
inline double radial_eta_bar(const std::function<double(double)>& transform, double r_c,
                             double m0 = csl::kNucleonMass) {
    const double k_max = 12.0 / r_c;
    auto f = [&](double k) {
        const double mu = transform(k);
        return std::pow(k, 4) * std::exp(-r_c * r_c * k * k) * mu * mu;
    };
    const double integral = integrate(f, 0.0, k_max, 400);
    return std::pow(r_c, 3) / (std::pow(csl::kPi, 1.5) * m0 * m0) * (4.0 * csl::kPi / 3.0) * integral;
}

/// Random stack of 1..max_layers solid layers, thicknesses and optional gaps
/// log-uniform in [0.01, 100] r_c, densities uniform in [0, 20000] kg/m^3.
inline csl::LayerStack random_stack(std::mt19937_64& rng, double r_c, int max_layers) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&] { return r_c * std::pow(10.0, -2.0 + 4.0 * unit(rng)); };
    const int n = 1 + static_cast<int>(unit(rng) * max_layers) % max_layers;
    std::vector<csl::Layer> layers;
    for (int i = 0; i < n; ++i) {
        if (i > 0 && unit(rng) < 0.3) layers.push_back({log_uniform(), 0.0});
        layers.push_back({log_uniform(), 20000.0 * unit(rng)});
    }
    layers.front().density = std::max(layers.front().density, 1.0);
    return csl::LayerStack(r_c * std::pow(10.0, -2.0 + 6.0 * unit(rng)), layers);
}

}  // namespace oracle
