#pragma once

#include <complex>
#include <span>
#include <vector>

namespace csl {

struct Material {
    double density = 0.0;  // kg/m^3, zero for vacuum gaps
};

struct Layer {
    double thickness = 0.0;  // m
    double density = 0.0;    // kg/m^3
};

/// Slabs of common L x L cross-section stacked along z. The origin is the
/// geometric center of the stack, so layer mid-planes are symmetric about 0
/// for a symmetric stack.
class LayerStack {
public:
    LayerStack(double side, std::vector<Layer> layers);

    /// N_lay + 1 layers of A (thickness a) interleaved with N_lay layers of B.
    static LayerStack alternating(double side, int n_lay, double a, double b,
                                  double density_a, double density_b);
    static LayerStack uniform(double side, double height, double density);

    double side() const noexcept { return side_; }
    double height() const noexcept { return height_; }
    double mass() const noexcept { return mass_; }
    std::size_t size() const noexcept { return layers_.size(); }
    std::span<const Layer> layers() const noexcept { return layers_; }
    /// Mid-plane positions z_n, strictly increasing.
    std::span<const double> centers() const noexcept { return centers_; }

    double min_thickness() const noexcept;
    /// Thinnest zero-density layer strictly inside the stack, 0 if none.
    double min_gap() const noexcept;
    /// Count of maximal runs of nonzero-density layers.
    int solid_segments() const noexcept;

    LayerStack reversed() const;
    LayerStack with_density_scaled(double factor) const;
    /// Adjacent layers of equal density fused into one.
    LayerStack merged() const;

private:
    double side_;
    double height_ = 0.0;
    double mass_ = 0.0;
    std::vector<Layer> layers_;
    std::vector<double> centers_;
};

struct Sphere {
    double radius = 0.0;
    double density = 0.0;

    Sphere(double radius, double density);
    double mass() const noexcept;
    static Sphere from_mass(double mass, double density);
};

/// `radius` is the base radius (called L in the cylinder formula).
struct Cylinder {
    double radius = 0.0;
    double height = 0.0;
    double density = 0.0;

    Cylinder(double radius, double height, double density);
    double mass() const noexcept;
};

/// Areal-density transform of the stack along z (kg/m^2):
/// sum_n rho_n (2/k) sin(k t_n / 2) exp(i k (z_n + shift)).
std::complex<double> mu_z_tilde(const LayerStack& stack, double k_z, double shift = 0.0);

/// B = 1 - exp(-L^2/4rc^2) - (L sqrt(pi) / 2rc) erf(L/2rc). Always <= 0.
double transverse_factor(double side, double r_c);

struct LayerThickness {
    double a = 0.0;
    double b = 0.0;
};

/// Thicknesses of an alternating stack with b = eps * a that reach `mass`.
LayerThickness solve_thickness_for_mass(double mass, double side, int n_lay, double eps,
                                        double density_a, double density_b);

/// sin(x)/x with a Taylor branch near 0.
double sinc(double x) noexcept;

}  // namespace csl
