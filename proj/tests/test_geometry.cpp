#include <doctest.h>

#include <cmath>

#include "cslnoise/errors.hpp"
#include "cslnoise/geometry.hpp"
#include "oracles.hpp"

using namespace csl;

TEST_CASE("stack height, mass and mid-planes") {
    const LayerStack s(2e-6, {{1e-7, 1000.0}, {3e-7, 0.0}, {2e-7, 5000.0}});
    CHECK(s.height() == doctest::Approx(6e-7).epsilon(1e-14));
    CHECK(s.mass() == doctest::Approx(4e-12 * (1e-4 + 1e-3)).epsilon(1e-14));
    const auto z = s.centers();
    REQUIRE(z.size() == 3);
    CHECK(z[0] == doctest::Approx(-2.5e-7).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(-0.5e-7).epsilon(1e-12));
    CHECK(z[2] == doctest::Approx(2e-7).epsilon(1e-12));
}

TEST_CASE("alternating stack layout") {
    const int n = 5;
    const double a = 3e-7, b = 1e-7;
    const auto s = LayerStack::alternating(1e-5, n, a, b, 16000.0, 2200.0);
    CHECK(s.size() == 2 * n + 1);
    CHECK(s.height() == doctest::Approx((n + 1) * a + n * b).epsilon(1e-13));
    const auto l = s.layers();
    for (std::size_t i = 0; i < l.size(); ++i) {
        CHECK(l[i].density == (i % 2 == 0 ? 16000.0 : 2200.0));
    }
    const auto z = s.centers();
    for (std::size_t i = 1; i < z.size(); ++i) {
        CHECK(z[i] > z[i - 1]);
        CHECK(z[i] - z[i - 1] == doctest::Approx(0.5 * (l[i].thickness + l[i - 1].thickness)));
    }
    // symmetric stack is centered
    CHECK(std::abs(z.front() + z.back()) < 1e-20);
}

TEST_CASE("invalid stacks are rejected") {
    CHECK_THROWS_AS(LayerStack(1e-6, {}), ValidationError);
    CHECK_THROWS_AS(LayerStack(1e-6, {{0.0, 1000.0}}), ValidationError);
    CHECK_THROWS_AS(LayerStack(1e-6, {{1e-7, -1.0}}), ValidationError);
    CHECK_THROWS_AS(LayerStack(-1e-6, {{1e-7, 1.0}}), ValidationError);
    CHECK_THROWS_AS(LayerStack(1e-6, {{1e-7, 0.0}}), ValidationError);
    CHECK_THROWS_AS(LayerStack::alternating(1e-6, -1, 1e-7, 1e-7, 1.0, 1.0), ValidationError);
}

TEST_CASE("transform at k = 0 is the areal density") {
    const auto s = LayerStack::alternating(1e-5, 3, 2e-7, 5e-7, 16000.0, 0.0);
    const auto mu = mu_z_tilde(s, 0.0);
    CHECK(mu.real() == doctest::Approx(s.mass() / (s.side() * s.side())).epsilon(1e-13));
    CHECK(mu.imag() == 0.0);
}

TEST_CASE("transform matches direct integration of the density profile") {
    const LayerStack s(1e-5, {{2e-7, 9000.0}, {1e-7, 0.0}, {4e-7, 3000.0}, {1.5e-7, 19000.0}});
    for (double k : {1e5, 3e6, 2e7}) {
        double re = 0.0, im = 0.0;
        double z0 = -0.5 * s.height();
        for (const auto& l : s.layers()) {
            re += oracle::integrate([&](double z) { return l.density * std::cos(k * z); }, z0, z0 + l.thickness, 8);
            im += oracle::integrate([&](double z) { return l.density * std::sin(k * z); }, z0, z0 + l.thickness, 8);
            z0 += l.thickness;
        }
        const auto mu = mu_z_tilde(s, k);
        const double scale = std::hypot(re, im);
        CHECK(std::abs(mu.real() - re) < 1e-11 * scale);
        CHECK(std::abs(mu.imag() - im) < 1e-11 * scale);
    }
}

TEST_CASE("shifting the origin changes only the phase") {
    const auto s = LayerStack::alternating(1e-5, 4, 2e-7, 3e-7, 16000.0, 2200.0);
    for (double k : {1e6, 1e7}) {
        CHECK(std::abs(mu_z_tilde(s, k, 3.7e-6)) == doctest::Approx(std::abs(mu_z_tilde(s, k))).epsilon(1e-12));
    }
}

TEST_CASE("transverse factor") {
    const double r = 1e-7;
    const double expected = 1.0 - std::exp(-1.0) - std::sqrt(kPi) * std::erf(1.0);
    CHECK(transverse_factor(2.0 * r, r) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(transverse_factor(2.0 * r, r) == doctest::Approx(-0.861527).epsilon(1e-6));
    // small side: B -> -u^2 + u^4/6
    const double u = 1e-4;
    CHECK(transverse_factor(2.0 * u * r, r) == doctest::Approx(-u * u + std::pow(u, 4) / 6.0).epsilon(1e-12));
    // series and direct branches meet
    const double below = transverse_factor(2.0 * 0.4999999 * r, r);
    const double above = transverse_factor(2.0 * 0.5000001 * r, r);
    CHECK(below == doctest::Approx(above).epsilon(1e-6));
    const double uu = 0.3;
    CHECK(transverse_factor(2.0 * uu * r, r) ==
          doctest::Approx(1.0 - std::exp(-uu * uu) - std::sqrt(kPi) * uu * std::erf(uu)).epsilon(1e-12));
    CHECK(transverse_factor(1e4 * r, r) < 0.0);
}

TEST_CASE("mass-constrained thickness reproduces the mass") {
    for (int n : {0, 1, 7, 61, 400}) {
        for (double eps : {0.25, 1.0, 4.0}) {
            const auto t = solve_thickness_for_mass(1.159e-10, 18e-6, n, eps, 16000.0, 2200.0);
            CHECK(t.b == doctest::Approx(eps * t.a).epsilon(1e-15));
            const auto s = LayerStack::alternating(18e-6, n, t.a, t.b, 16000.0, 2200.0);
            CHECK(oracle::rel(s.mass(), 1.159e-10) < 1e-12);
        }
    }
    CHECK_THROWS_AS(solve_thickness_for_mass(1e-10, 1e-5, 3, 0.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("stack transformations") {
    const LayerStack s(1e-5, {{1e-7, 100.0}, {2e-7, 100.0}, {3e-7, 0.0}, {4e-7, 50.0}});
    const auto m = s.merged();
    REQUIRE(m.size() == 3);
    CHECK(m.layers()[0].thickness == doctest::Approx(3e-7));
    CHECK(m.mass() == doctest::Approx(s.mass()).epsilon(1e-14));
    const auto r = s.reversed();
    CHECK(r.layers()[0].density == 50.0);
    CHECK(r.mass() == doctest::Approx(s.mass()).epsilon(1e-14));
    CHECK(s.with_density_scaled(2.0).mass() == doctest::Approx(2.0 * s.mass()));
    CHECK(s.solid_segments() == 2);
    CHECK(s.min_gap() == doctest::Approx(3e-7));
    CHECK(s.min_thickness() == doctest::Approx(1e-7));
}

TEST_CASE("sphere and cylinder") {
    const Sphere s(15.5e-6, 7430.0);
    CHECK(s.mass() == doctest::Approx(4.0 / 3.0 * kPi * std::pow(15.5e-6, 3) * 7430.0));
    CHECK(s.mass() == doctest::Approx(1.159e-10).epsilon(1e-3));
    CHECK(Sphere::from_mass(s.mass(), 7430.0).radius == doctest::Approx(15.5e-6).epsilon(1e-14));
    CHECK(Cylinder(2e-6, 3e-6, 1000.0).mass() == doctest::Approx(kPi * 4e-12 * 3e-6 * 1000.0));
    CHECK_THROWS_AS(Sphere(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(Cylinder(1.0, -1.0, 1.0), ValidationError);
}

TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-8) == doctest::Approx(1.0 - 1e-16 / 6.0).epsilon(1e-16));
    CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
}
