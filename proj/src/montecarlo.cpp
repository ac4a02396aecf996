#include "cslnoise/montecarlo.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <random>
#include <string>

#include "cslnoise/errors.hpp"
#include "cslnoise/parallel.hpp"

namespace csl {

namespace {

// FFTW planning is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void SimConfig::validate() const {
    resonator.validate();
    if (!(force_psd >= 0.0)) throw ValidationError("force PSD must be >= 0", "force_psd");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive", "dt");
    if (dt > 2.0 * kPi / (50.0 * resonator.omega0) * (1.0 + 1e-12)) {
        throw ValidationError("dt must resolve the resonance: dt <= 2 pi / (50 omega0)", "dt");
    }
    if (duration < 50.0 / resonator.gamma) {
        throw ValidationError("duration must be at least 50 / gamma", "duration");
    }
    if (n_segments < 8) throw ValidationError("n_segments must be >= 8", "n_segments");
    if (n_trajectories < 1 || n_segments % n_trajectories != 0) {
        throw ValidationError("n_trajectories must divide n_segments", "n_trajectories");
    }
    if (samples_per_segment() < 16) {
        throw ValidationError("segments shorter than 16 samples", "n_segments");
    }
}

std::size_t SimConfig::samples_per_segment() const {
    return static_cast<std::size_t>(std::floor(duration / dt / n_segments + 1e-6));
}

std::size_t SimConfig::burn_in_samples() const {
    return burn_in ? static_cast<std::size_t>(std::ceil(10.0 / (resonator.gamma * dt))) : 0;
}

OscillatorPropagator::OscillatorPropagator(const Resonator& r, double force_psd, double dt) {
    const double w0 = r.omega0;
    const double g = r.gamma;
    const double s = w0 * w0 - 0.25 * g * g;
    double c = 0.0;   // cos / cosh part
    double sn = 0.0;  // sin(wd dt)/wd or its hyperbolic / critical analogue
    if (s > 0.0) {
        const double wd = std::sqrt(s);
        c = std::cos(wd * dt);
        sn = std::sin(wd * dt) / wd;
    } else if (s < 0.0) {
        const double wd = std::sqrt(-s);
        c = std::cosh(wd * dt);
        sn = std::sinh(wd * dt) / wd;
    } else {
        c = 1.0;
        sn = dt;
    }
    // exp(A dt) = e^{-g dt/2} [c I + sn (A + g/2 I)], A = [[0, 1], [-w0^2, -g]]
    const double decay = std::exp(-0.5 * g * dt);
    phi_[0][0] = decay * (c + 0.5 * g * sn);
    phi_[0][1] = decay * sn;
    phi_[1][0] = -decay * w0 * w0 * sn;
    phi_[1][1] = decay * (c - 0.5 * g * sn);

    // stationary covariance is diagonal; step covariance Q = P - Phi P Phi^T
    const double sigma2 = force_psd / (r.mass * r.mass);
    var_v_ = sigma2 / (2.0 * g);
    var_q_ = var_v_ / (w0 * w0);
    const double q11 = var_q_ - (phi_[0][0] * phi_[0][0] * var_q_ + phi_[0][1] * phi_[0][1] * var_v_);
    const double q12 = -(phi_[0][0] * phi_[1][0] * var_q_ + phi_[0][1] * phi_[1][1] * var_v_);
    const double q22 = var_v_ - (phi_[1][0] * phi_[1][0] * var_q_ + phi_[1][1] * phi_[1][1] * var_v_);
    chol11_ = std::sqrt(std::max(q11, 0.0));
    chol21_ = chol11_ > 0.0 ? q12 / chol11_ : 0.0;
    chol22_ = std::sqrt(std::max(q22 - chol21_ * chol21_, 0.0));
}

void OscillatorPropagator::step(double& q, double& v, double z1, double z2) const noexcept {
    const double nq = phi_[0][0] * q + phi_[0][1] * v + chol11_ * z1;
    const double nv = phi_[1][0] * q + phi_[1][1] * v + chol21_ * z1 + chol22_ * z2;
    q = nq;
    v = nv;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Runs chain `index`, handing each recorded segment to `sink`.
template <class Sink>
void run_chain(const SimConfig& cfg, std::uint64_t index, std::size_t segments, Sink&& sink) {
    const OscillatorPropagator prop(cfg.resonator, cfg.force_psd, cfg.dt);
    std::mt19937_64 rng(derive_seed(cfg.seed, index));
    std::normal_distribution<double> normal(0.0, 1.0);
    double q = cfg.initial_position;
    double v = cfg.initial_velocity;
    const double scale = std::sqrt(prop.stationary_position_variance()) + std::abs(q) +
                         std::abs(v) / cfg.resonator.omega0;
    const double limit = 1e8 * scale;

    for (std::size_t i = 0, n = cfg.burn_in_samples(); i < n; ++i) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        prop.step(q, v, z1, z2);
    }
    const std::size_t length = cfg.samples_per_segment();
    std::vector<double> buffer(length);
    for (std::size_t s = 0; s < segments; ++s) {
        for (std::size_t i = 0; i < length; ++i) {
            const double z1 = normal(rng);
            const double z2 = normal(rng);
            prop.step(q, v, z1, z2);
            buffer[i] = q;
        }
        if (!std::isfinite(q) || std::abs(q) > limit) {
            throw ConvergenceError("oscillator simulation diverged in segment " + std::to_string(s) +
                                   " (|q| = " + std::to_string(std::abs(q)) + " m)");
        }
        sink(std::span<const double>(buffer));
    }
}

}  // namespace

TimeSeries simulate(const SimConfig& cfg) {
    cfg.validate();
    TimeSeries out;
    out.dt = cfg.dt;
    out.position.reserve(cfg.samples_per_segment() * cfg.n_segments);
    run_chain(cfg, 0, static_cast<std::size_t>(cfg.n_segments), [&](std::span<const double> seg) {
        out.position.insert(out.position.end(), seg.begin(), seg.end());
    });
    return out;
}

// ---------------------------------------------------------------------------

struct WelchAccumulator::Impl {
    std::size_t length = 0;
    double dt = 0.0;
    std::vector<double> window;
    double window_power = 0.0;  // sum w^2
    double* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;

    std::vector<double> sum;
    std::vector<double> sum_sq;
    int segments = 0;
    double sq_sum = 0.0;
    std::size_t samples = 0;

    double band_lo = 0.0;
    double band_hi = -1.0;
    std::function<double(double)> reference;
    std::vector<double> band_values;
    std::vector<double> band_reference;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (plan != nullptr) fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
};

WelchAccumulator::WelchAccumulator(std::size_t segment_length, double dt)
    : impl_(std::make_unique<Impl>()) {
    if (segment_length < 16) throw ValidationError("segment length must be >= 16", "segment");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive", "dt");
    auto& s = *impl_;
    s.length = segment_length;
    s.dt = dt;
    s.window.resize(segment_length);
    for (std::size_t n = 0; n < segment_length; ++n) {
        s.window[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * n / segment_length));
        s.window_power += s.window[n] * s.window[n];
    }
    const std::size_t bins = segment_length / 2 + 1;
    s.sum.assign(bins, 0.0);
    s.sum_sq.assign(bins, 0.0);
    std::lock_guard lock(planner_mutex());
    s.in = fftw_alloc_real(segment_length);
    s.out = fftw_alloc_complex(bins);
    s.plan = fftw_plan_dft_r2c_1d(static_cast<int>(segment_length), s.in, s.out, FFTW_ESTIMATE);
}

WelchAccumulator::~WelchAccumulator() = default;
WelchAccumulator::WelchAccumulator(WelchAccumulator&&) noexcept = default;
WelchAccumulator& WelchAccumulator::operator=(WelchAccumulator&&) noexcept = default;

std::size_t WelchAccumulator::segment_length() const noexcept { return impl_->length; }

void WelchAccumulator::track_band(double f_lo, double f_hi, std::function<double(double)> reference) {
    auto& s = *impl_;
    s.band_lo = f_lo;
    s.band_hi = f_hi;
    s.reference = std::move(reference);
    s.band_reference.assign(s.sum.size(), 0.0);
    for (std::size_t k = 0; k < s.sum.size(); ++k) {
        const double f = k / (s.length * s.dt);
        if (f >= f_lo && f <= f_hi) s.band_reference[k] = s.reference(f);
    }
}

const std::vector<double>& WelchAccumulator::band_values() const noexcept {
    return impl_->band_values;
}

void WelchAccumulator::add_segment(std::span<const double> samples) {
    auto& s = *impl_;
    if (samples.size() != s.length) throw ValidationError("segment has wrong length", "segment");
    for (std::size_t n = 0; n < s.length; ++n) {
        s.in[n] = s.window[n] * samples[n];
        s.sq_sum += samples[n] * samples[n];
    }
    s.samples += s.length;
    fftw_execute_dft_r2c(s.plan, s.in, s.out);
    const double norm = s.dt / s.window_power;
    double band_sum = 0.0;
    int band_bins = 0;
    for (std::size_t k = 0; k < s.sum.size(); ++k) {
        const double p = norm * (s.out[k][0] * s.out[k][0] + s.out[k][1] * s.out[k][1]);
        s.sum[k] += p;
        s.sum_sq[k] += p * p;
        if (!s.band_reference.empty() && s.band_reference[k] > 0.0) {
            band_sum += p / s.band_reference[k];
            ++band_bins;
        }
    }
    if (band_bins > 0) s.band_values.push_back(band_sum / band_bins);
    ++s.segments;
}

void WelchAccumulator::merge(const WelchAccumulator& other) {
    auto& s = *impl_;
    const auto& o = *other.impl_;
    if (o.length != s.length) throw ValidationError("cannot merge different segment lengths", "segment");
    for (std::size_t k = 0; k < s.sum.size(); ++k) {
        s.sum[k] += o.sum[k];
        s.sum_sq[k] += o.sum_sq[k];
    }
    s.segments += o.segments;
    s.sq_sum += o.sq_sum;
    s.samples += o.samples;
    s.band_values.insert(s.band_values.end(), o.band_values.begin(), o.band_values.end());
}

PsdEstimate WelchAccumulator::result() const {
    const auto& s = *impl_;
    PsdEstimate out;
    out.segments = s.segments;
    out.df = 1.0 / (s.length * s.dt);
    const std::size_t bins = s.sum.size();
    out.frequency.resize(bins);
    out.psd.resize(bins);
    out.std_error.resize(bins);
    const double n = s.segments;
    for (std::size_t k = 0; k < bins; ++k) {
        out.frequency[k] = k * out.df;
        if (s.segments == 0) continue;
        const double mean = s.sum[k] / n;
        out.psd[k] = mean;
        if (s.segments > 1) {
            const double var = std::max(0.0, (s.sum_sq[k] - n * mean * mean) / (n - 1.0));
            out.std_error[k] = std::sqrt(var / n);
        }
    }
    out.sample_variance = s.samples > 0 ? s.sq_sum / s.samples : 0.0;
    return out;
}

double PsdEstimate::integral() const {
    if (psd.empty()) return 0.0;
    // two-sided: negative frequencies mirror bins 1 .. N/2 - 1
    double total = psd.front() + psd.back();
    for (std::size_t k = 1; k + 1 < psd.size(); ++k) total += 2.0 * psd[k];
    return total * df;
}

PsdEstimate estimate_psd(const TimeSeries& series, const SimConfig& cfg) {
    const std::size_t length = cfg.samples_per_segment();
    const std::size_t needed = length * static_cast<std::size_t>(cfg.n_segments);
    if (length < 16 || series.position.size() < needed) {
        throw ValidationError("series too short for " + std::to_string(cfg.n_segments) +
                                  " segments of " + std::to_string(length) + " samples",
                              "series");
    }
    WelchAccumulator acc(length, series.dt);
    for (int s = 0; s < cfg.n_segments; ++s) {
        acc.add_segment(std::span<const double>(series.position).subspan(s * length, length));
    }
    return acc.result();
}

SimulatedPsd simulate_psd(const SimConfig& cfg, int threads, double band_lo, double band_hi) {
    cfg.validate();
    const auto chains = static_cast<std::size_t>(cfg.n_trajectories);
    const auto per_chain = static_cast<std::size_t>(cfg.n_segments / cfg.n_trajectories);
    std::vector<WelchAccumulator> accumulators;
    accumulators.reserve(chains);
    for (std::size_t j = 0; j < chains; ++j) {
        accumulators.emplace_back(cfg.samples_per_segment(), cfg.dt);
        if (band_hi > band_lo) {
            const Resonator r = cfg.resonator;
            accumulators.back().track_band(
                band_lo, band_hi, [r](double f) { return dns(2.0 * kPi * f, r, 1.0); });
        }
    }
    parallel_for(chains, threads, [&](std::size_t j) {
        run_chain(cfg, j, per_chain,
                  [&](std::span<const double> seg) { accumulators[j].add_segment(seg); });
    });
    for (std::size_t j = 1; j < chains; ++j) accumulators.front().merge(accumulators[j]);
    return {accumulators.front().result(), accumulators.front().band_values()};
}

}  // namespace csl
