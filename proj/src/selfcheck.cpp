#include "cslnoise/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "cslnoise/diffusion.hpp"
#include "cslnoise/montecarlo.hpp"
#include "cslnoise/special.hpp"

namespace csl {

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string worst(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst relative error %.3g", v);
    return buf;
}

CheckResult slab_routes() {
    const double r = 1e-7;
    double err = 0.0;
    for (double ratio : {0.1, 1.0, 3.0, 10.0, 100.0}) {
        const auto stack = LayerStack::uniform(10e-6, ratio * r, 16000.0);
        const double closed = iz_closed_form(stack, r).total;
        const double quad = iz_quadrature(stack, r).value;
        const double slab = iz_slab(ratio * r, 16000.0, r);
        err = std::max({err, rel(closed, slab), rel(quad, slab), rel(closed, quad)});
    }
    return {"slab closed form, quadrature and slab formula", err < 1e-6, worst(err)};
}

CheckResult random_stacks() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = 1e-7;
    double err = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(unit(rng) * 20);
        std::vector<Layer> layers;
        for (int i = 0; i < n; ++i) {
            const double t = r * std::pow(10.0, -1.0 + 3.0 * unit(rng));
            const double rho = (i % 2 == 0) ? 20000.0 * unit(rng) : 0.0;
            layers.push_back({t, rho});
        }
        layers.front().density = 19000.0;
        const LayerStack stack(20e-6, layers);
        err = std::max(err, rel(iz_closed_form(stack, r).total, iz_quadrature(stack, r).value));
    }
    return {"random stacks: closed form against quadrature", err < 1e-6, worst(err)};
}

CheckResult point_limits() {
    const CollapseParams p{1e-8, 1e-7};
    const double d = p.r_c / 100.0;
    const double rho = 8000.0;
    double err = 0.0;
    const Sphere sphere(d, rho);
    err = std::max(err, rel(eta_sphere(sphere.mass(), d, p), eta_point_mass(sphere.mass(), p)));
    const double cube_mass = rho * d * d * d;
    err = std::max(err, rel(eta_cuboid_uniform(cube_mass, d, d, p), eta_point_mass(cube_mass, p)));
    const Cylinder cyl(d, d, rho);
    err = std::max(err, rel(eta_cylinder(cyl.mass(), d, d, p), eta_point_mass(cyl.mass(), p)));
    const auto stack = LayerStack::alternating(d, 2, d / 5, d / 5, rho, 2000.0);
    err = std::max(err, rel(eta_multilayer(stack, p).eta, eta_point_mass(stack.mass(), p)));
    return {"point-mass limit of every shape", err < 1e-3, worst(err)};
}

CheckResult scaled_bessel() {
    double err = 0.0;
    for (double x : {1e-3, 0.3, 1.0, 5.0, 24.9, 25.1, 60.0, 300.0}) {
        const double e = std::exp(-x);
        err = std::max(err, rel(special::bessel_i0e(x), e * std::cyl_bessel_i(0.0, x)));
        err = std::max(err, rel(special::bessel_i1e(x), e * std::cyl_bessel_i(1.0, x)));
    }
    return {"scaled Bessel functions against std::cyl_bessel_i", err < 1e-12, worst(err)};
}

CheckResult oscillator_variance(int threads) {
    SimConfig cfg;
    cfg.resonator = Resonator::make(1e-10, std::nullopt, 2.0 * kPi * 1000.0, 2.0 * kPi * 10.0, 0.1);
    cfg.force_psd = 1e-33;
    cfg.dt = 1.0 / (64.0 * 1000.0);
    cfg.n_segments = 64;
    cfg.n_trajectories = 4;
    cfg.duration = 64 * 16384 * cfg.dt;
    cfg.seed = 7;
    const auto sim = simulate_psd(cfg, threads);
    const double err = rel(sim.estimate.sample_variance, dns_variance(cfg.resonator, cfg.force_psd));
    return {"simulated oscillator variance", err < 0.15, worst(err)};
}

}  // namespace

std::vector<CheckResult> run_self_checks(int threads) {
    return {slab_routes(), random_stacks(), point_limits(), scaled_bessel(),
            oscillator_variance(threads)};
}

}  // namespace csl
