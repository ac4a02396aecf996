#include "cslnoise/diffusion.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "cslnoise/errors.hpp"
#include "cslnoise/quadrature.hpp"
#include "cslnoise/special.hpp"

namespace csl {

namespace {

// exp(-x) is exactly 0 in double beyond this.
constexpr double kUnderflowExponent = 750.0;

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// exp(-p) - exp(-(p + d)) without cancellation when d is small.
double gaussian_difference(double p, double d) {
    if (d >= 0.0) return -std::exp(-p) * std::expm1(-d);
    return std::exp(-(p + d)) * std::expm1(d);
}

struct PlacedLayer {
    double half = 0.0;
    double density = 0.0;
    double center = 0.0;
    int body = 0;
};

std::vector<PlacedLayer> place(const LayerStack& stack, double offset, int body) {
    std::vector<PlacedLayer> out;
    out.reserve(stack.size());
    const auto layers = stack.layers();
    const auto centers = stack.centers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        out.push_back({0.5 * layers[i].thickness, layers[i].density, centers[i] + offset, body});
    }
    return out;
}

// Visits every unordered pair n < m (plus n == m) whose Gaussians are not
// all underflowed. Layers must be sorted by center and non-overlapping.
template <class SelfFn, class PairFn>
void for_each_pair(const std::vector<PlacedLayer>& layers, double r_c, SelfFn&& on_self,
                   PairFn&& on_pair) {
    const double cutoff = 2.0 * r_c * std::sqrt(kUnderflowExponent);
    for (std::size_t n = 0; n < layers.size(); ++n) {
        const auto& ln = layers[n];
        if (ln.density == 0.0) continue;
        on_self(n, iz_slab(2.0 * ln.half, ln.density, r_c));
        const double top = ln.center + ln.half;
        for (std::size_t m = n + 1; m < layers.size(); ++m) {
            const auto& lm = layers[m];
            if (lm.center - lm.half - top > cutoff) break;
            if (lm.density == 0.0) continue;
            on_pair(n, m, iz_pair(ln.half, ln.density, lm.half, lm.density, lm.center - ln.center, r_c));
        }
    }
}

void require_rc(double r_c) {
    if (!(r_c > 0.0) || !std::isfinite(r_c)) throw ValidationError("r_c must be positive", "r_c");
}

}  // namespace

void CollapseParams::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("lambda must be >= 0", "lambda");
    }
    require_rc(r_c);
}

double IzDecomposition::self_sum() const noexcept { return sum_of(self_terms); }
double IzDecomposition::cross_sum() const noexcept { return sum_of(cross_terms); }
double EtaResult::self_sum() const noexcept { return sum_of(self_terms); }
double EtaResult::cross_sum() const noexcept { return sum_of(cross_terms); }

double iz_slab(double thickness, double density, double r_c) {
    const double q = thickness * thickness / (4.0 * r_c * r_c);
    return 2.0 * kSqrtPi * density * density / r_c * -std::expm1(-q);
}

double iz_pair(double half_n, double density_n, double half_m, double density_m,
               double separation, double r_c) {
    const double A = half_n;
    const double B = half_m;
    const double D = separation;
    const double scale = 1.0 / (4.0 * r_c * r_c);
    const double r2 = r_c * r_c;
    // [g(A-B+D) - g(A+B+D)] + [g(A-B-D) - g(A+B-D)], g(x) = exp(-x^2/4rc^2)
    const double x1 = A - B + D;
    const double x2 = A - B - D;
    const double bracket = gaussian_difference(x1 * x1 * scale, B * (A + D) / r2) +
                           gaussian_difference(x2 * x2 * scale, B * (A - D) / r2);
    return kSqrtPi * density_n * density_m / r_c * bracket;
}

IzDecomposition iz_closed_form(const LayerStack& stack, double r_c) {
    require_rc(r_c);
    const auto layers = place(stack, 0.0, 0);
    IzDecomposition out;
    out.self_terms.assign(layers.size(), 0.0);
    out.cross_terms.assign(layers.size(), 0.0);
    for_each_pair(
        layers, r_c, [&](std::size_t n, double v) { out.self_terms[n] = v; },
        [&](std::size_t n, std::size_t m, double v) {
            out.cross_terms[n] += v;
            out.cross_terms[m] += v;
        });
    out.total = out.self_sum() + out.cross_sum();
    return out;
}

QuadratureResult iz_quadrature(const LayerStack& stack, double r_c,
                               const QuadratureOptions& options) {
    require_rc(r_c);
    // k mu_z(k) = -i sum_j (rho_{j-1} - rho_j) exp(i k zeta_j) over interfaces zeta_j
    const auto layers = stack.layers();
    std::vector<double> positions;
    std::vector<double> jumps;
    double z = -0.5 * stack.height();
    double below = 0.0;
    for (const auto& l : layers) {
        if (l.density != below) {
            positions.push_back(z);
            jumps.push_back(below - l.density);
        }
        below = l.density;
        z += l.thickness;
    }
    positions.push_back(z);
    jumps.push_back(below);

    const double r2 = r_c * r_c;
    auto integrand = [&](double k) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < positions.size(); ++j) {
            const double phase = k * positions[j];
            re += jumps[j] * std::cos(phase);
            im += jumps[j] * std::sin(phase);
        }
        return std::exp(-r2 * k * k) * (re * re + im * im);
    };

    const GaussLegendre rule(options.order);
    const double k_max = options.k_max_scale / r_c;
    const double span = positions.back() - positions.front();
    // one period of the fastest oscillation, exp(i k H), per panel
    int panels = std::max(options.min_panels,
                          static_cast<int>(std::ceil(k_max * span / (2.0 * kPi))));
    double previous = 2.0 * rule.integrate(integrand, 0.0, k_max, panels);
    double change = 0.0;
    for (int d = 0; d < options.max_doublings; ++d) {
        panels *= 2;
        const double current = 2.0 * rule.integrate(integrand, 0.0, k_max, panels);
        change = std::abs(current - previous) / std::abs(current);
        previous = current;
        if (change <= options.accept_rel) return {current, panels, change};
    }
    if (change > options.fail_rel) {
        throw ConvergenceError("I_z quadrature did not converge: relative change " +
                               std::to_string(change) + " after " + std::to_string(panels) +
                               " panels");
    }
    return {previous, panels, change};
}

EtaResult eta_multilayer(const LayerStack& stack, const CollapseParams& p,
                         const PhysicalConstants& c) {
    p.validate();
    auto iz = iz_closed_form(stack, p.r_c);
    EtaResult out;
    out.B = transverse_factor(stack.side(), p.r_c);
    const double r5 = std::pow(p.r_c, 5);
    out.eta_bar = 16.0 * r5 / (c.m0 * c.m0 * kSqrtPi) * out.B * out.B * iz.total;
    out.eta = p.lambda * out.eta_bar;
    out.I_z = iz.total;
    out.self_terms = std::move(iz.self_terms);
    out.cross_terms = std::move(iz.cross_terms);
    return out;
}

double eta_point_mass(double mass, const CollapseParams& p, const PhysicalConstants& c) {
    p.validate();
    return p.lambda * mass * mass / (2.0 * c.m0 * c.m0 * p.r_c * p.r_c);
}

double eta_sphere(double mass, double radius, const CollapseParams& p,
                  const PhysicalConstants& c) {
    if (!(radius > 0.0)) throw ValidationError("radius must be positive", "radius");
    // eta = 3 lambda M^2 / (m0^2 rc^2) * [s - 2 + exp(-s)(s + 2)] / s^3, s = R^2/rc^2
    const double s = radius * radius / (p.r_c * p.r_c);
    double shape = 0.0;
    if (s < 1.0) {
        // sum_j (-1)^j (j+1) s^j / (j+3)!
        double inv_fact = 1.0 / 6.0;
        double power = 1.0;
        for (int j = 0; j < 40; ++j) {
            const double term = (j % 2 == 0 ? 1.0 : -1.0) * (j + 1) * power * inv_fact;
            shape += term;
            if (std::abs(term) < 1e-18 * shape) break;
            power *= s;
            inv_fact /= (j + 4);
        }
    } else {
        shape = (s - 2.0 + std::exp(-s) * (s + 2.0)) / (s * s * s);
    }
    return 6.0 * eta_point_mass(mass, p, c) * shape;
}

double eta_cuboid_uniform(double mass, double side, double height, const CollapseParams& p,
                          const PhysicalConstants& c) {
    if (!(side > 0.0) || !(height > 0.0)) {
        throw ValidationError("cuboid side and height must be positive", "side");
    }
    // 32 lambda M^2 rc^4 / (L^4 H^2 m0^2) (1 - exp(-h^2)) B^2, regrouped so each
    // factor tends to 1 in the point limit
    const double h2 = height * height / (4.0 * p.r_c * p.r_c);
    const double u = side / (2.0 * p.r_c);
    const double longitudinal = -std::expm1(-h2) / h2;
    const double transverse = transverse_factor(side, p.r_c) / (u * u);
    return eta_point_mass(mass, p, c) * longitudinal * transverse * transverse;
}

double eta_cylinder(double mass, double radius, double height, const CollapseParams& p,
                    const PhysicalConstants& c) {
    if (!(radius > 0.0) || !(height > 0.0)) {
        throw ValidationError("cylinder radius and height must be positive", "radius");
    }
    // 8 lambda M^2 rc^2 / (L^2 H^2 m0^2) (1 - exp(-h^2)) [1 - e^{-x}(I0(x) + I1(x))]
    const double h2 = height * height / (4.0 * p.r_c * p.r_c);
    const double x = radius * radius / (2.0 * p.r_c * p.r_c);
    const double longitudinal = -std::expm1(-h2) / h2;
    const double transverse = 2.0 * special::cylinder_transverse(x) / x;
    return eta_point_mass(mass, p, c) * longitudinal * transverse;
}

double geometry_mass(const Geometry& g) {
    return std::visit([](const auto& shape) { return shape.mass(); }, g);
}

double reduced_eta(const Geometry& g, double r_c, const PhysicalConstants& c) {
    const CollapseParams unit{1.0, r_c};
    struct Visitor {
        const CollapseParams& p;
        const PhysicalConstants& c;
        double operator()(const LayerStack& s) const { return eta_multilayer(s, p, c).eta_bar; }
        double operator()(const Sphere& s) const { return eta_sphere(s.mass(), s.radius, p, c); }
        double operator()(const Cylinder& s) const {
            return eta_cylinder(s.mass(), s.radius, s.height, p, c);
        }
    };
    return std::visit(Visitor{unit, c}, g);
}

namespace {

AssemblyCross split_by_body(const std::vector<PlacedLayer>& layers, double r_c) {
    AssemblyCross out;
    for_each_pair(
        layers, r_c, [&](std::size_t, double v) { out.self += v; },
        [&](std::size_t n, std::size_t m, double v) {
            if (layers[n].body == layers[m].body) {
                out.self += 2.0 * v;
            } else {
                out.cross += 2.0 * v;
            }
        });
    return out;
}

}  // namespace

AssemblyCross eta_assembly_cross(const LayerStack& stack, double r_c) {
    require_rc(r_c);
    if (stack.solid_segments() != 2) {
        throw ValidationError("assembly must contain exactly two separated bodies", "layers");
    }
    auto layers = place(stack, 0.0, 0);
    bool in_solid = false;
    // first solid run is body 0, everything after the first gap is body 1
    int seen = 0;
    for (auto& l : layers) {
        const bool solid = l.density > 0.0;
        if (solid && !in_solid) ++seen;
        in_solid = solid;
        l.body = seen <= 1 ? 0 : 1;
    }
    return split_by_body(layers, r_c);
}

AssemblyCross eta_assembly_cross(const LayerStack& lower, const LayerStack& upper, double gap,
                                 double r_c) {
    require_rc(r_c);
    if (!(gap >= 0.0)) throw ValidationError("gap must be >= 0", "gap");
    const double lower_offset = -0.5 * (gap + upper.height());
    const double upper_offset = 0.5 * (gap + lower.height());
    auto layers = place(lower, lower_offset, 0);
    auto top = place(upper, upper_offset, 1);
    layers.insert(layers.end(), top.begin(), top.end());
    return split_by_body(layers, r_c);
}

double cross_sign_change(const LayerStack& lower, const LayerStack& upper, double gap,
                         double lo, double hi) {
    auto cross = [&](double r_c) { return eta_assembly_cross(lower, upper, gap, r_c).cross; };
    double f_lo = cross(lo);
    const double f_hi = cross(hi);
    if (!(f_lo * f_hi < 0.0)) {
        throw ValidationError("r_c interval does not bracket a sign change of the cross term",
                              "r_c");
    }
    double a = std::log(lo);
    double b = std::log(hi);
    for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
        const double mid = 0.5 * (a + b);
        const double f_mid = cross(std::exp(mid));
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            a = mid;
            f_lo = f_mid;
        } else {
            b = mid;
        }
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace csl
