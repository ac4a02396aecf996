#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cslnoise/spectra.hpp"

namespace csl {

struct SimConfig {
    Resonator resonator;
    double force_psd = 0.0;  // two-sided, N^2/Hz
    double dt = 0.0;         // s
    double duration = 0.0;   // recorded time after burn-in, s
    int n_segments = 8;
    std::uint64_t seed = 0;
    /// Independent chains, each with its own burn-in and seed stream. Must
    /// divide n_segments. Results do not depend on the thread count.
    int n_trajectories = 1;
    double initial_position = 0.0;
    double initial_velocity = 0.0;
    bool burn_in = true;  // discard 10 / gamma before recording

    void validate() const;
    std::size_t samples_per_segment() const;
    std::size_t burn_in_samples() const;
};

struct TimeSeries {
    double dt = 0.0;
    std::vector<double> position;  // m
};

/// Exact one-step update of the damped oscillator driven by white force
/// noise: the linear part is propagated with exp(A dt) and the noise
/// increment has the exact discrete covariance, so there is no dt bias.
class OscillatorPropagator {
public:
    OscillatorPropagator(const Resonator& r, double force_psd, double dt);

    /// Advances (q, v) using two independent standard normal draws.
    void step(double& q, double& v, double z1, double z2) const noexcept;

    double stationary_position_variance() const noexcept { return var_q_; }
    double stationary_velocity_variance() const noexcept { return var_v_; }

private:
    double phi_[2][2];
    double chol11_ = 0.0;
    double chol21_ = 0.0;
    double chol22_ = 0.0;
    double var_q_ = 0.0;
    double var_v_ = 0.0;
};

/// Deterministic seed of stream `index` derived from `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// One trajectory of the full recorded duration (single stream, seed stream 0).
TimeSeries simulate(const SimConfig& cfg);

struct PsdEstimate {
    double df = 0.0;                 // bin spacing, Hz
    std::vector<double> frequency;   // Hz, 0 .. Nyquist
    std::vector<double> psd;         // two-sided, m^2/Hz
    std::vector<double> std_error;   // of the segment mean, per bin
    int segments = 0;
    double sample_variance = 0.0;    // of the input, about zero mean

    /// Integral over (-inf, inf); approximately the series variance.
    double integral() const;
};

/// Hann-windowed, non-overlapping Welch average. Feed whole segments.
class WelchAccumulator {
public:
    WelchAccumulator(std::size_t segment_length, double dt);
    ~WelchAccumulator();
    WelchAccumulator(WelchAccumulator&&) noexcept;
    WelchAccumulator& operator=(WelchAccumulator&&) noexcept;

    std::size_t segment_length() const noexcept;
    void add_segment(std::span<const double> samples);
    /// Combines another accumulator over the same segment length.
    void merge(const WelchAccumulator& other);
    PsdEstimate result() const;

    /// Per-segment mean of psd / reference over bins whose frequency lies in
    /// [f_lo, f_hi]. Set before adding segments.
    void track_band(double f_lo, double f_hi, std::function<double(double)> reference);
    const std::vector<double>& band_values() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Splits `series` into cfg.n_segments segments of cfg.samples_per_segment().
PsdEstimate estimate_psd(const TimeSeries& series, const SimConfig& cfg);

struct SimulatedPsd {
    PsdEstimate estimate;
    std::vector<double> band_values;  // per segment, see WelchAccumulator::track_band
};

/// Simulates every trajectory and accumulates the PSD without storing the
/// series. With n_trajectories == 1 this equals estimate_psd(simulate(cfg), cfg).
SimulatedPsd simulate_psd(const SimConfig& cfg, int threads = 1, double band_lo = 0.0,
                          double band_hi = 0.0);

}  // namespace csl
