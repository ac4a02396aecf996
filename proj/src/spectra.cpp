#include "cslnoise/spectra.hpp"

#include <cmath>

#include "cslnoise/errors.hpp"

namespace csl {

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

Resonator Resonator::make(std::optional<double> mass, std::optional<double> stiffness,
                          std::optional<double> omega0, double gamma, double temperature) {
    Resonator r;
    r.gamma = gamma;
    r.temperature = temperature;
    const int given = int(mass.has_value()) + int(stiffness.has_value()) + int(omega0.has_value());
    if (given < 2) {
        throw ValidationError("resonator needs two of mass, stiffness, frequency", "resonator");
    }
    if (mass && !positive(*mass)) throw ValidationError("resonator mass must be positive", "mass");
    if (stiffness && !positive(*stiffness)) {
        throw ValidationError("stiffness must be positive", "stiffness");
    }
    if (omega0 && !positive(*omega0)) {
        throw ValidationError("frequency must be positive", "frequency");
    }
    if (mass && stiffness) {
        r.mass = *mass;
        r.stiffness = *stiffness;
        r.omega0 = std::sqrt(*stiffness / *mass);
        if (omega0 && std::abs(*omega0 - r.omega0) > 1e-9 * r.omega0) {
            throw ValidationError("frequency inconsistent with sqrt(stiffness/mass)", "frequency");
        }
    } else if (mass) {
        r.mass = *mass;
        r.omega0 = *omega0;
        r.stiffness = r.mass * r.omega0 * r.omega0;
    } else {
        r.stiffness = *stiffness;
        r.omega0 = *omega0;
        r.mass = r.stiffness / (r.omega0 * r.omega0);
    }
    r.validate();
    return r;
}

void Resonator::validate() const {
    if (!positive(mass)) throw ValidationError("resonator mass must be positive", "mass");
    if (!positive(stiffness)) throw ValidationError("stiffness must be positive", "stiffness");
    if (!positive(omega0)) throw ValidationError("frequency must be positive", "frequency");
    if (!positive(gamma)) throw ValidationError("damping must be positive", "damping");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw ValidationError("temperature must be >= 0", "temperature");
    }
}

double thermal_force_psd(const Resonator& r, const PhysicalConstants& c) {
    return 2.0 * r.mass * r.gamma * c.k_B * r.temperature;
}

double csl_force_psd(double eta, const PhysicalConstants& c) { return c.hbar * c.hbar * eta; }

double dns(double omega, const Resonator& r, double force_psd) {
    const double detune = r.omega0 * r.omega0 - omega * omega;
    const double denom = detune * detune + r.gamma * r.gamma * omega * omega;
    return force_psd / (r.mass * r.mass * denom);
}

double dns_variance(const Resonator& r, double force_psd) {
    return force_psd / (2.0 * r.mass * r.mass * r.gamma * r.omega0 * r.omega0);
}

double lambda_bound(const ExcessNoise& excess, double eta_bar, const PhysicalConstants& c) {
    if (!(excess.value >= 0.0) || !std::isfinite(excess.value)) {
        throw ValidationError("excess noise must be >= 0", "excess_noise");
    }
    if (!(eta_bar > 0.0)) {
        throw ValidationError("no sensitivity: reduced diffusion constant is zero", "eta_bar");
    }
    return excess.two_sided() / (c.hbar * c.hbar * eta_bar);
}

}  // namespace csl
