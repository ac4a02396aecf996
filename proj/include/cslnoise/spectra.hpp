#pragma once

#include <optional>

#include "cslnoise/constants.hpp"

namespace csl {

/// Harmonic resonator: mass M, stiffness k = M omega0^2, velocity damping
/// rate gamma and bath temperature T.
struct Resonator {
    double mass = 0.0;         // kg
    double stiffness = 0.0;    // N/m
    double omega0 = 0.0;       // rad/s
    double gamma = 0.0;        // 1/s
    double temperature = 0.0;  // K

    /// Any two of mass, stiffness and omega0 fix the third; all three must
    /// satisfy omega0 = sqrt(k/M) to 1e-9 relative.
    static Resonator make(std::optional<double> mass, std::optional<double> stiffness,
                          std::optional<double> omega0, double gamma, double temperature);

    double quality_factor() const noexcept { return omega0 / gamma; }
    void validate() const;
};

enum class Sidedness { one_sided, two_sided };

/// Measured residual force noise. Experiments usually quote one-sided PSDs;
/// the resonator model uses the symmetrized two-sided convention.
struct ExcessNoise {
    double value = 0.0;  // N^2/Hz
    Sidedness sidedness = Sidedness::one_sided;

    double two_sided() const noexcept {
        return sidedness == Sidedness::one_sided ? 0.5 * value : value;
    }
};

struct NoiseBudget {
    double thermal = 0.0;  // N^2/Hz
    double csl = 0.0;
    double excess = 0.0;
};

/// 2 M gamma k_B T.
double thermal_force_psd(const Resonator& r, const PhysicalConstants& c = {});
/// hbar^2 eta.
double csl_force_psd(double eta, const PhysicalConstants& c = {});

/// Displacement PSD S_F / (M^2 [(omega0^2 - omega^2)^2 + gamma^2 omega^2]).
double dns(double omega, const Resonator& r, double force_psd);
/// Integral of dns over omega / 2 pi: S_F / (2 M^2 gamma omega0^2).
double dns_variance(const Resonator& r, double force_psd);

/// Collapse rate at which hbar^2 eta equals the two-sided excess noise.
/// Throws ValidationError when eta_bar is zero (no sensitivity).
double lambda_bound(const ExcessNoise& excess, double eta_bar, const PhysicalConstants& c = {});

}  // namespace csl
