#ifndef UWBAD_SIMULATOR_HPP
#define UWBAD_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "uwbad/classifiers.hpp"
#include "uwbad/types.hpp"

namespace uwbad::sim {

inline constexpr double kSpeedOfLightMps = 299792458.0;

// Impulse-radio pulse train: pulse_count - 1 unit-energy doublets scaled by
// sqrt(energy), centred at k * period_ns for k = 1 .. pulse_count - 1 (the
// sum starts at one period, not at zero).
struct PulseSpec {
    double energy = 1.0;
    double pulse_width_ns = 0.5; // spacing of the doublet zero crossings
    double period_ns = 50.0;
    std::size_t pulse_count = 2; // K; K - 1 pulses are emitted
};

// Tapped multipath channel plus white Gaussian noise. Per-sample noise
// variance is noise_psd * sample_rate.
struct ChannelSpec {
    std::vector<double> amplitudes;
    std::vector<double> delays_ns; // strictly increasing
    double noise_psd = 0.0;
    bool los = true;
    double nlos_excess_delay_mean_ns = 0.0;
};

struct Waveform {
    double sample_rate_ghz = 64.0;
    double t0_ns = 0.0;
    std::vector<double> samples;

    double sample_period_ns() const { return 1.0 / sample_rate_ghz; }
    double time_at(std::size_t i) const {
        return t0_ns + static_cast<double>(i) / sample_rate_ghz;
    }
};

// Second derivative of a Gaussian, normalised to unit energy. width_ns is
// the distance between the two zero crossings; the waveform is even and
// peaks at t = 0.
double gaussian_doublet(double t_ns, double width_ns);

// Transmit train amplitude at time t.
double transmit_signal(const PulseSpec& spec, double t_ns);

// Samples the transmit train over [0, (K-1) * period + 4 * width].
Waveform sample_transmit(const PulseSpec& spec, double sample_rate_ghz);

// Sum of delayed, scaled copies of tx (fractional delays are linearly
// interpolated) plus AWGN. Deterministic per seed.
Waveform received_signal(const Waveform& tx, const ChannelSpec& channel,
                         std::uint64_t seed);

// Leading-edge arrival time: first crossing of the matched-filter envelope
// through leading_edge_fraction * peak, linearly interpolated between
// samples and calibrated against the template's own crossing-to-peak
// offset. Returns the arrival time of the pulse centre on the waveform's
// time axis. detection_error on an all-zero waveform.
double estimate_toa(const Waveform& rx, double leading_edge_fraction,
                    double template_width_ns);

// d = c * tau.
double distance_from_toa(double tau_ns);

// Full waveform pipeline: transmit, channel, leading-edge ToA relative to
// the first pulse's transmit time. Returns the estimated distance in m.
double simulate_ranging(const PulseSpec& pulse, const ChannelSpec& channel,
                        double sample_rate_ghz, double leading_edge_fraction,
                        std::uint64_t seed);

// One generated quantity: a GD (a = sigma2) or GGD (a = alpha, b = beta)
// to draw from.
struct FeatureDraw {
    DensityFamily family = DensityFamily::GD;
    double mu = 0.0;
    double a = 1.0;
    double b = 2.0;
};

struct ClassGenerator {
    FeatureDraw fp_power_dbm;
    FeatureDraw power_difference_db;
    std::uint32_t preamble_count = 128;
};

// Feature-level scenario. Ranging error for LoS rows is a zero-mean GGD;
// NLoS rows add an exponential positive bias on top. The default error
// scales keep the 99th percentile of |error| near 0.105 m (LoS) and
// 0.146 m (NLoS). Diagnostic counts are derived by inverting the power
// formulas from per-class power draws.
struct ScenarioSpec {
    UwbConfig config;
    std::vector<double> true_distances_m = {3.0};
    std::size_t n_los = 500;
    std::size_t n_nlos = 50;
    std::uint64_t seed = 1;
    ClassGenerator los = {{DensityFamily::GD, -82.0, 2.25, 2.0},
                          {DensityFamily::GD, 5.0, 1.0, 2.0},
                          128};
    ClassGenerator nlos = {{DensityFamily::GD, -89.0, 2.25, 2.0},
                           {DensityFamily::GD, 13.0, 4.0, 2.0},
                           128};
    double los_error_alpha = 0.0432;
    double los_error_beta = 1.5;
    double nlos_bias_mean = 0.025;
};

// n_los LoS rows followed by n_nlos NLoS rows, labeled, deterministic per
// seed. True distances cycle through true_distances_m.
Dataset synthesize_dataset(const ScenarioSpec& scenario);

} // namespace uwbad::sim

#endif
