#pragma once

#include <variant>
#include <vector>

#include "cslnoise/constants.hpp"
#include "cslnoise/geometry.hpp"

namespace csl {

struct CollapseParams {
    double lambda = 0.0;  // 1/s
    double r_c = 1e-7;    // m

    void validate() const;
};

/// I_z split into per-layer pieces. cross_terms[n] is the row sum
/// sum_{m != n} I_nm, so sum(self) + sum(cross) == total.
struct IzDecomposition {
    double total = 0.0;
    std::vector<double> self_terms;
    std::vector<double> cross_terms;

    double self_sum() const noexcept;
    double cross_sum() const noexcept;
};

/// Exact Gaussian pair sum for the z integral of k^2 |mu_z(k)|^2 exp(-rc^2 k^2).
IzDecomposition iz_closed_form(const LayerStack& stack, double r_c);

/// Single slab self term, 2 sqrt(pi) rho^2 / rc (1 - exp(-t^2/4rc^2)).
double iz_slab(double thickness, double density, double r_c);

/// I_nm for layers of half-thickness A, B whose mid-planes are D apart.
double iz_pair(double half_n, double density_n, double half_m, double density_m,
               double separation, double r_c);

struct QuadratureOptions {
    int order = 24;              // Gauss-Legendre points per panel
    double k_max_scale = 8.0;    // integrate |k| <= k_max_scale / rc
    int min_panels = 64;
    int max_doublings = 6;
    double accept_rel = 1e-10;   // stop refining below this change
    double fail_rel = 1e-8;      // non-convergence above this change
};

struct QuadratureResult {
    double value = 0.0;
    int panels = 0;
    double last_rel_change = 0.0;
};

/// Direct numerical integration of I_z over k_z. Test oracle for
/// iz_closed_form; throws ConvergenceError when refinements disagree.
QuadratureResult iz_quadrature(const LayerStack& stack, double r_c,
                               const QuadratureOptions& options = {});

struct EtaResult {
    double eta = 0.0;      // 1/(s m^2)
    double eta_bar = 0.0;  // eta / lambda, 1/m^2
    double I_z = 0.0;      // kg^2/m^7
    double B = 0.0;
    std::vector<double> self_terms;
    std::vector<double> cross_terms;

    double self_sum() const noexcept;
    double cross_sum() const noexcept;
};

EtaResult eta_multilayer(const LayerStack& stack, const CollapseParams& p,
                         const PhysicalConstants& c = {});

double eta_sphere(double mass, double radius, const CollapseParams& p,
                  const PhysicalConstants& c = {});
double eta_cuboid_uniform(double mass, double side, double height, const CollapseParams& p,
                          const PhysicalConstants& c = {});
/// `radius` is the base radius L.
double eta_cylinder(double mass, double radius, double height, const CollapseParams& p,
                    const PhysicalConstants& c = {});
/// lambda M^2 / (2 m0^2 rc^2), the limit every shape approaches when small.
double eta_point_mass(double mass, const CollapseParams& p, const PhysicalConstants& c = {});

using Geometry = std::variant<LayerStack, Sphere, Cylinder>;

double geometry_mass(const Geometry& g);
/// eta / lambda for any supported geometry.
double reduced_eta(const Geometry& g, double r_c, const PhysicalConstants& c = {});

/// Self and cross parts of I_z for an assembly of two separated bodies.
struct AssemblyCross {
    double self = 0.0;   // both bodies' own contributions
    double cross = 0.0;  // both off-body pair orderings
};

/// `stack` must contain exactly two runs of nonzero-density layers.
AssemblyCross eta_assembly_cross(const LayerStack& stack, double r_c);
/// Two bodies placed `gap` >= 0 apart along z (gap 0 allowed).
AssemblyCross eta_assembly_cross(const LayerStack& lower, const LayerStack& upper, double gap,
                                 double r_c);

/// r_c in [lo, hi] at which the assembly cross term changes sign, found by
/// bisection in log r_c. Throws ValidationError if [lo, hi] does not bracket.
double cross_sign_change(const LayerStack& lower, const LayerStack& upper, double gap,
                         double lo, double hi);

}  // namespace csl
