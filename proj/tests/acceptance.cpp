// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cslnoise/bounds.hpp"
#include "cslnoise/diffusion.hpp"
#include "cslnoise/montecarlo.hpp"
#include "cslnoise/optimize.hpp"
#include "oracles.hpp"

using namespace csl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const ExcessNoise kExcess{2.0e-36, Sidedness::one_sided};
const double kTableMass = 1.159e-10;
const double kRhoA = 16000.0;
const double kRhoB = 2200.0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome table_one() {
    struct Row {
        double side;
        int n_lay;
        int n_tol;
        double lambda;
    };
    bool pass = true;
    std::string detail;
    for (const Row row : {Row{18e-6, 61, 2, 3.1e-10}, Row{50e-6, 7, 1, 2.9e-10}}) {
        SearchSpace s;
        s.sides = {row.side};
        s.n_lay_min = 0;
        s.n_lay_max = 400;
        s.epsilons = {0.25, 1.0, 4.0};
        s.mass = kTableMass;
        s.density_a = kRhoA;
        s.density_b = kRhoB;
        s.r_c = 1e-7;
        s.excess = kExcess;
        const auto t0 = std::chrono::steady_clock::now();
        const auto opt = optimize(s);
        const double elapsed = seconds_since(t0);
        const auto& b = opt.best;
        const bool ok = std::abs(b.n_lay - row.n_lay) <= row.n_tol && b.epsilon == 1.0 &&
                        oracle::rel(b.lambda_bound, row.lambda) <= 0.15 && elapsed < 60.0;
        pass = pass && ok;
        detail += fmt("L=%.0fum: N_lay=%d eps=%.2f lambda=%.4g a=%.4g m H=%.4g m (%.1fs); ", row.side * 1e6,
                      b.n_lay, b.epsilon, b.lambda_bound, b.a, b.height, elapsed);
    }
    return {pass, detail};
}

Outcome slab_triple() {
    const double r = 1e-7, rho = kRhoA;
    double worst = 0.0;
    for (double ratio : {0.1, 1.0, 3.0, 10.0, 100.0}) {
        const double h = ratio * r;
        const auto slab = LayerStack::uniform(10e-6, h, rho);
        const double formula = 2.0 * std::sqrt(kPi) * rho * rho / r * (1.0 - std::exp(-h * h / (4.0 * r * r)));
        const double closed = iz_closed_form(slab, r).total;
        const double quad = iz_quadrature(slab, r).value;
        worst = std::max({worst, oracle::rel(closed, formula), oracle::rel(quad, formula), oracle::rel(closed, quad)});
    }
    return {worst <= 1e-6, fmt("worst pairwise relative difference %.3g", worst)};
}

Outcome point_limit() {
    const double r = 1e-7, d = r / 100.0;
    const CollapseParams p{1.0, r};
    auto target = [&](double m) { return m * m / (2.0 * kNucleonMass * kNucleonMass * r * r); };
    const Sphere sphere(d, kRhoA);
    const auto cube = LayerStack::uniform(d, d, kRhoA);
    const Cylinder cyl(d, d, kRhoA);
    LayerStack five(d, {{d, kRhoA}, {d, kRhoB}, {d, kRhoA}, {d, kRhoB}, {d, kRhoA}});
    const double e_sphere = oracle::rel(reduced_eta(sphere, r), target(sphere.mass()));
    const double e_cube = std::max(oracle::rel(reduced_eta(cube, r), target(cube.mass())),
                                   oracle::rel(eta_cuboid_uniform(cube.mass(), d, d, p), target(cube.mass())));
    const double e_cyl = oracle::rel(reduced_eta(cyl, r), target(cyl.mass()));
    const double e_five = oracle::rel(reduced_eta(five, r), target(five.mass()));
    const double worst = std::max({e_sphere, e_cube, e_cyl, e_five});
    return {worst <= 1e-3, fmt("sphere %.2g, cuboid %.2g, cylinder %.2g, 5-layer %.2g", e_sphere, e_cube, e_cyl, e_five)};
}

Outcome two_layers() {
    const double a = 1e-6, r = a / 50.0;
    const auto merged = LayerStack::uniform(10e-6, 2.0 * a, kRhoA);
    const LayerStack gapped(10e-6, {{a, kRhoA}, {10.0 * a, 0.0}, {a, kRhoA}});
    const LayerStack touching(10e-6, {{a, kRhoA}, {a, kRhoA}});
    const double ref = iz_closed_form(merged, r).total;
    const double ratio_gap = iz_closed_form(gapped, r).total / ref;
    const double ratio_touch = iz_closed_form(touching, r).total / ref;
    const bool pass = std::abs(ratio_gap / 2.0 - 1.0) <= 1e-2 && std::abs(ratio_touch - 1.0) <= 1e-6;
    return {pass, fmt("gap 10a: ratio %.6f; gap 0: ratio %.12f", ratio_gap, ratio_touch)};
}

Outcome shape_asymptote() {
    const double r = 1e-7, rho = kRhoA;
    auto ratio = [&](double x) {
        const double side = x * r;
        // equal M, L and density; cuboid height r_c / 100 fixes the mass
        const double mass = rho * side * side * r / 100.0;
        return cuboid_cylinder_ratio(side, r, mass, rho, ShapeMatch::equal_mass_density);
    };
    const double small = ratio(0.01), mid = ratio(30.0), large = ratio(100.0);
    const bool ok_small = std::abs(small - 1.0) <= 1e-2;
    const bool ok_mid = std::abs(mid / kPi - 1.0) <= 2e-2;
    const bool ok_large = std::abs(large / kPi - 1.0) <= 5e-3;
    return {ok_small && ok_mid && ok_large,
            fmt("L/rc=0.01: %.6f (%s); L/rc=30: %.5f, %.2f%% from pi (%s); L/rc=100: %.5f, %.2f%% from pi (%s)",
                small, ok_small ? "ok" : "out", mid, 100.0 * std::abs(mid / kPi - 1.0), ok_mid ? "ok" : "out",
                large, 100.0 * std::abs(large / kPi - 1.0), ok_large ? "ok" : "out")};
}

Outcome multilayer_gain() {
    const double r = 1e-7, side = 20e-6;
    const StackConfig layered{"gain", side, kTableMass, 64, 1.0, kRhoA, 0.0};
    const StackConfig uniform{"uniform", side, kTableMass, 0, 1.0, kRhoA, 0.0};
    const double lam_layered = lambda_bound(kExcess, reduced_eta(layered.build(), r));
    const double lam_uniform = lambda_bound(kExcess, reduced_eta(uniform.build(), r));
    const double gain = lam_uniform / lam_layered;
    return {gain >= 30.0 && gain <= 300.0,
            fmt("gain %.2f (uniform %.4g, layered %.4g)", gain, lam_uniform, lam_layered)};
}

Outcome second_minimum() {
    const StackConfig cfg{"L18-N61", 18e-6, kTableMass, 61, 1.0, kRhoA, kRhoB};
    const auto stack = cfg.build();
    const double a = stack.layers()[0].thickness;
    const double h = stack.height();
    const Scenario s{"L18-N61", stack, std::nullopt, kExcess, default_rc_grid(), {}};
    const auto curve = exclusion_curve(s);
    std::optional<std::size_t> near_a, near_h;
    for (std::size_t i : curve.local_minima()) {
        const double rc = curve.points[i].r_c;
        if (!near_a && std::abs(std::log(rc / a)) <= std::log(3.0)) {
            near_a = i;
        } else if (!near_h && std::abs(std::log(rc / (h / 3.0))) <= std::log(3.0)) {
            near_h = i;
        }
    }
    std::string detail = fmt("a=%.4g m, H/3=%.4g m; minima at", a, h / 3.0);
    for (std::size_t i : curve.local_minima()) {
        detail += fmt(" %.3g m (%.3g)", curve.points[i].r_c, curve.points[i].lambda_bound);
    }
    return {near_a.has_value() && near_h.has_value(), detail};
}

Outcome bigger_mass() {
    const double side = 60e-6, rho_a = 19410.0;
    const std::vector<StackConfig> configs{{"M1-N12", side, 1.16e-9, 12, 1.0, rho_a, kRhoB},
                                           {"M1-N48", side, 1.16e-9, 48, 1.0, rho_a, kRhoB},
                                           {"M2-N25", side, 2.32e-9, 25, 1.0, rho_a, kRhoB},
                                           {"M2-N98", side, 2.32e-9, 98, 1.0, rho_a, kRhoB}};
    const auto studies = bigger_mass_study(configs, kExcess, log_grid(1e-9, 1e-3, 241));
    double best_layer = std::numeric_limits<double>::infinity();
    double best_global = std::numeric_limits<double>::infinity();
    std::string detail;
    for (const auto& st : studies) {
        const auto& g = st.curve.points[st.global_minimum];
        best_global = std::min(best_global, g.lambda_bound);
        detail += fmt("%s (a=%.3g m, H=%.3g m): global %.3g at %.3g m", st.config.label.c_str(), st.a, st.height,
                      g.lambda_bound, g.r_c);
        if (st.layer_minimum) {
            const auto& l = st.curve.points[*st.layer_minimum];
            best_layer = std::min(best_layer, l.lambda_bound);
            detail += fmt(", layer minimum %.3g at %.3g m", l.lambda_bound, l.r_c);
        }
        detail += "; ";
    }
    detail += fmt("best layer minimum %.3g, best global %.3g", best_layer, best_global);
    return {best_layer <= 2e-11 && best_global <= 2e-11, detail};
}

Outcome monte_carlo() {
    const auto t0 = std::chrono::steady_clock::now();
    const double f0 = 8174.0;
    const double w0 = 2.0 * kPi * f0;
    const Resonator res = Resonator::make(kTableMass, std::nullopt, w0, w0 / 100.0, 0.1);
    const double s_th = thermal_force_psd(res);
    // collapse rate chosen so the collapse noise equals the thermal noise for the sphere
    const Sphere sphere(15.5e-6, 7430.0);
    const double eta_bar = reduced_eta(sphere, 1e-7);
    const double lambda = s_th / (kHbar * kHbar * eta_bar);
    const double s_csl = csl_force_psd(lambda * eta_bar);

    SimConfig cfg;
    cfg.resonator = res;
    cfg.force_psd = s_th + s_csl;
    cfg.dt = 1.0 / (64.0 * f0);
    const int samples = 64 * 1024;
    cfg.n_segments = 16384;
    cfg.n_trajectories = 16;
    cfg.duration = static_cast<double>(cfg.n_segments) * samples * cfg.dt;
    cfg.seed = 0xC5A1;
    const auto with = simulate_psd(cfg, 1, 0.5 * f0, 2.0 * f0);

    double worst = 0.0;
    int bins = 0;
    for (std::size_t k = 0; k < with.estimate.psd.size(); ++k) {
        const double f = with.estimate.frequency[k];
        if (f < 0.5 * f0 || f > 2.0 * f0) continue;
        worst = std::max(worst, oracle::rel(with.estimate.psd[k], dns(2.0 * kPi * f, res, cfg.force_psd)));
        ++bins;
    }

    SimConfig thermal = cfg;
    thermal.force_psd = s_th;
    thermal.seed = 0x7E44;
    thermal.n_segments = 2048;
    thermal.duration = static_cast<double>(thermal.n_segments) * samples * thermal.dt;
    const auto without = simulate_psd(thermal, 1, 0.5 * f0, 2.0 * f0);

    auto stats = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= v.size();
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= (v.size() - 1);
        return std::pair{mean, std::sqrt(var / v.size())};
    };
    const auto [m1, e1] = stats(with.band_values);
    const auto [m2, e2] = stats(without.band_values);
    const double ratio = m1 / m2;
    const double sigma = ratio * std::hypot(e1 / m1, e2 / m2);
    const double expected = (s_th + s_csl) / s_th;
    const double pulls = std::abs(ratio - expected) / sigma;
    const double elapsed = seconds_since(t0);
    const bool pass = worst <= 0.05 && pulls <= 3.0 && elapsed < 300.0 && with.estimate.segments >= 64;
    return {pass, fmt("%d segments, max per-bin deviation %.3f%% over %d bins; plateau ratio %.5f vs %.5f "
                      "(%.2f sigma, sigma %.2g); %.0fs",
                      with.estimate.segments, 100.0 * worst, bins, ratio, expected, pulls, sigma, elapsed)};
}

Outcome fuzzing() {
    const double r = 1e-7;
    std::mt19937_64 rng(0xF022);
    double worst = 0.0;
    bool finite = true;
    for (int trial = 0; trial < 200; ++trial) {
        const auto stack = oracle::random_stack(rng, r, 200);
        const double closed = iz_closed_form(stack, r).total;
        const double quad = iz_quadrature(stack, r).value;
        worst = std::max(worst, oracle::rel(closed, quad));
        const auto eta = eta_multilayer(stack, {1.0, r});
        finite = finite && std::isfinite(eta.eta_bar) && eta.eta_bar > 0.0;
    }
    // wide bodies: scaled Bessel and grouped exponential paths
    for (double x : {1.0, 1e2, 1e3, 1e4}) {
        const double side = x * r;
        const auto stack = LayerStack::alternating(side, 20, 3e-7, 1e-7, 20000.0, 0.0);
        finite = finite && std::isfinite(reduced_eta(stack, r)) && reduced_eta(stack, r) > 0.0;
        const Cylinder cyl(side, 1e-6, 20000.0);
        finite = finite && std::isfinite(reduced_eta(cyl, r)) && reduced_eta(cyl, r) > 0.0;
        const double ratio = cuboid_cylinder_ratio(side, r, 20000.0 * side * side * 1e-6, 20000.0,
                                                   ShapeMatch::equal_mass_density);
        finite = finite && std::isfinite(ratio);
    }
    return {worst <= 1e-6 && finite, fmt("200 stacks, worst relative difference %.3g; all finite: %s", worst,
                                         finite ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments select criteria by number
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Table I reproduction", table_one},
        {"single-slab closed form, quadrature and formula", slab_triple},
        {"point-mass limit", point_limit},
        {"two separated layers double I_z", two_layers},
        {"cuboid/cylinder asymptote", shape_asymptote},
        {"multilayer gain over uniform cuboid", multilayer_gain},
        {"second minimum near r_c = a", second_minimum},
        {"bigger-mass reach", bigger_mass},
        {"Monte-Carlo spectrum", monte_carlo},
        {"oracle fuzzing", fuzzing},
    };
    int failures = 0;
    int run = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) continue;
        ++run;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", run - failures, run);
    return failures == 0 ? 0 : 1;
}
