#include "uwbad/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>

#include "uwbad/distributions.hpp"
#include "uwbad/errors.hpp"

namespace uwbad::sim {

namespace {

void check_valid(const PulseSpec& spec) {
    if (!(spec.energy > 0.0))
        throw argument_error("PulseSpec requires energy > 0");
    if (!(spec.pulse_width_ns > 0.0))
        throw argument_error("PulseSpec requires pulse_width_ns > 0");
    if (!(spec.period_ns > 0.0))
        throw argument_error("PulseSpec requires period_ns > 0");
    if (spec.pulse_count < 2)
        throw argument_error("PulseSpec requires pulse_count >= 2");
}

void check_valid(const ChannelSpec& channel) {
    if (channel.amplitudes.empty() ||
        channel.amplitudes.size() != channel.delays_ns.size())
        throw argument_error(
            "ChannelSpec requires matching, nonempty amplitudes and delays");
    for (std::size_t i = 0; i < channel.delays_ns.size(); ++i) {
        if (!(channel.delays_ns[i] >= 0.0))
            throw argument_error("ChannelSpec delays must be >= 0");
        if (i > 0 && !(channel.delays_ns[i] > channel.delays_ns[i - 1]))
            throw argument_error("ChannelSpec delays must be strictly increasing");
    }
    if (channel.noise_psd < 0.0)
        throw argument_error("ChannelSpec requires noise_psd >= 0");
    if (channel.nlos_excess_delay_mean_ns < 0.0)
        throw argument_error("ChannelSpec requires a nonnegative excess delay");
}

// Doublet sampled over +-2 widths; odd length puts the peak at the centre.
std::vector<double> doublet_template(double width_ns, double sample_rate_ghz) {
    const double half_span = 2.0 * width_ns;
    const auto half_n =
        static_cast<std::size_t>(std::ceil(half_span * sample_rate_ghz));
    std::vector<double> tmpl(2 * half_n + 1);
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        const double t = (static_cast<double>(i) - static_cast<double>(half_n)) /
                         sample_rate_ghz;
        tmpl[i] = gaussian_doublet(t, width_ns);
    }
    return tmpl;
}

// Fractional index of the first envelope sample chain crossing threshold.
double first_crossing(std::span<const double> envelope, double threshold) {
    for (std::size_t i = 0; i < envelope.size(); ++i) {
        if (envelope[i] >= threshold) {
            if (i == 0) return 0.0;
            const double below = envelope[i - 1];
            return static_cast<double>(i - 1) +
                   (threshold - below) / (envelope[i] - below);
        }
    }
    return static_cast<double>(envelope.size() - 1);
}

} // namespace

double gaussian_doublet(double t_ns, double width_ns) {
    if (!(width_ns > 0.0))
        throw argument_error("gaussian_doublet requires width_ns > 0");
    const double s = 0.5 * width_ns; // zero crossings sit at +-s
    const double u = t_ns / s;
    const double norm =
        1.0 / std::sqrt(s * 0.75 * std::sqrt(std::numbers::pi));
    return norm * (1.0 - u * u) * std::exp(-0.5 * u * u);
}

double transmit_signal(const PulseSpec& spec, double t_ns) {
    check_valid(spec);
    double acc = 0.0;
    for (std::size_t k = 1; k < spec.pulse_count; ++k)
        acc += gaussian_doublet(t_ns - static_cast<double>(k) * spec.period_ns,
                                spec.pulse_width_ns);
    return std::sqrt(spec.energy) * acc;
}

Waveform sample_transmit(const PulseSpec& spec, double sample_rate_ghz) {
    check_valid(spec);
    if (!(sample_rate_ghz > 0.0))
        throw argument_error("sample_transmit requires sample_rate_ghz > 0");
    Waveform tx;
    tx.sample_rate_ghz = sample_rate_ghz;
    tx.t0_ns = 0.0;
    const double t_end =
        static_cast<double>(spec.pulse_count - 1) * spec.period_ns +
        4.0 * spec.pulse_width_ns;
    const auto n = static_cast<std::size_t>(std::ceil(t_end * sample_rate_ghz));
    tx.samples.resize(n + 1);
    for (std::size_t i = 0; i < tx.samples.size(); ++i)
        tx.samples[i] = transmit_signal(spec, tx.time_at(i));
    return tx;
}

Waveform received_signal(const Waveform& tx, const ChannelSpec& channel,
                         std::uint64_t seed) {
    if (tx.samples.empty())
        throw argument_error("received_signal: empty transmit waveform");
    if (!(tx.sample_rate_ghz > 0.0))
        throw argument_error("received_signal: sample rate must be > 0");
    check_valid(channel);

    Waveform rx;
    rx.sample_rate_ghz = tx.sample_rate_ghz;
    rx.t0_ns = tx.t0_ns;
    const auto pad = static_cast<std::size_t>(
        std::ceil(channel.delays_ns.back() * tx.sample_rate_ghz));
    rx.samples.assign(tx.samples.size() + pad, 0.0);

    const auto tx_n = static_cast<std::ptrdiff_t>(tx.samples.size());
    for (std::size_t i = 0; i < rx.samples.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < channel.amplitudes.size(); ++j) {
            const double pos = static_cast<double>(i) -
                               channel.delays_ns[j] * rx.sample_rate_ghz;
            const double base = std::floor(pos);
            const double frac = pos - base;
            const auto k = static_cast<std::ptrdiff_t>(base);
            double value = 0.0;
            if (k >= 0 && k < tx_n) value += (1.0 - frac) * tx.samples[k];
            if (k + 1 >= 0 && k + 1 < tx_n) value += frac * tx.samples[k + 1];
            acc += channel.amplitudes[j] * value;
        }
        rx.samples[i] = acc;
    }

    if (channel.noise_psd > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(
            0.0, std::sqrt(channel.noise_psd * rx.sample_rate_ghz));
        for (double& s : rx.samples) s += noise(rng);
    }
    return rx;
}

double estimate_toa(const Waveform& rx, double leading_edge_fraction,
                    double template_width_ns) {
    if (!(leading_edge_fraction > 0.0 && leading_edge_fraction < 1.0))
        throw argument_error(
            "estimate_toa: leading_edge_fraction must lie in (0, 1)");
    if (!(template_width_ns > 0.0))
        throw argument_error("estimate_toa: template width must be > 0");
    if (rx.samples.empty())
        throw argument_error("estimate_toa: empty waveform");
    if (!(rx.sample_rate_ghz > 0.0))
        throw argument_error("estimate_toa: sample rate must be > 0");

    const std::vector<double> tmpl =
        doublet_template(template_width_ns, rx.sample_rate_ghz);
    const auto centre = static_cast<std::ptrdiff_t>(tmpl.size() / 2);
    const auto rx_n = static_cast<std::ptrdiff_t>(rx.samples.size());

    std::vector<double> envelope(rx.samples.size());
    for (std::size_t i = 0; i < rx.samples.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < tmpl.size(); ++k) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) +
                                     static_cast<std::ptrdiff_t>(k) - centre;
            if (j >= 0 && j < rx_n) acc += tmpl[k] * rx.samples[j];
        }
        envelope[i] = std::abs(acc);
    }
    const double peak = *std::max_element(envelope.begin(), envelope.end());
    if (!(peak > 0.0))
        throw detection_error("estimate_toa: waveform carries no signal");
    const double crossing =
        first_crossing(envelope, leading_edge_fraction * peak);

    // The raw crossing leads the pulse centre by a template-dependent
    // offset; measure it on the template's own autocorrelation.
    std::vector<double> auto_env(2 * tmpl.size() - 1, 0.0);
    const auto tmpl_n = static_cast<std::ptrdiff_t>(tmpl.size());
    for (std::size_t m = 0; m < auto_env.size(); ++m) {
        const std::ptrdiff_t lag =
            static_cast<std::ptrdiff_t>(m) - (tmpl_n - 1);
        double acc = 0.0;
        for (std::ptrdiff_t k = 0; k < tmpl_n; ++k) {
            const std::ptrdiff_t j = k + lag;
            if (j >= 0 && j < tmpl_n) acc += tmpl[k] * tmpl[j];
        }
        auto_env[m] = std::abs(acc);
    }
    const auto auto_peak =
        std::max_element(auto_env.begin(), auto_env.end());
    const double auto_crossing =
        first_crossing(auto_env, leading_edge_fraction * *auto_peak);
    const double offset =
        static_cast<double>(auto_peak - auto_env.begin()) - auto_crossing;

    return rx.t0_ns + (crossing + offset) / rx.sample_rate_ghz;
}

double distance_from_toa(double tau_ns) {
    return kSpeedOfLightMps * 1e-9 * tau_ns;
}

double simulate_ranging(const PulseSpec& pulse, const ChannelSpec& channel,
                        double sample_rate_ghz, double leading_edge_fraction,
                        std::uint64_t seed) {
    check_valid(pulse);
    check_valid(channel);
    std::mt19937_64 rng(seed);

    ChannelSpec realized = channel;
    if (!channel.los && channel.nlos_excess_delay_mean_ns > 0.0) {
        std::exponential_distribution<double> excess(
            1.0 / channel.nlos_excess_delay_mean_ns);
        const double extra = excess(rng);
        for (double& d : realized.delays_ns) d += extra;
    }

    const Waveform tx = sample_transmit(pulse, sample_rate_ghz);
    const Waveform rx = received_signal(tx, realized, rng());
    const double toa =
        estimate_toa(rx, leading_edge_fraction, pulse.pulse_width_ns);
    // The train starts at one period, so that is the departure time of the
    // first pulse the detector can see.
    return distance_from_toa(toa - pulse.period_ns);
}

namespace {

double draw_feature(const FeatureDraw& draw, std::mt19937_64& rng) {
    if (draw.family == DensityFamily::GD)
        return draw_gd({draw.mu, draw.a}, rng);
    return draw_ggd({draw.mu, draw.a, draw.b}, rng);
}

} // namespace

Dataset synthesize_dataset(const ScenarioSpec& scenario) {
    if (scenario.true_distances_m.empty())
        throw argument_error("synthesize_dataset: need at least one distance");
    for (double d : scenario.true_distances_m)
        if (!(d >= 0.0))
            throw argument_error("synthesize_dataset: distances must be >= 0");
    if (scenario.n_los + scenario.n_nlos == 0)
        throw argument_error("synthesize_dataset: zero samples requested");
    if (!(scenario.los_error_alpha > 0.0) || !(scenario.los_error_beta > 0.0))
        throw argument_error(
            "synthesize_dataset: ranging error scale and shape must be > 0");
    if (scenario.nlos_bias_mean < 0.0)
        throw argument_error("synthesize_dataset: bias mean must be >= 0");
    if (scenario.los.preamble_count == 0 || scenario.nlos.preamble_count == 0)
        throw argument_error("synthesize_dataset: preamble count must be >= 1");

    Dataset out;
    out.config = scenario.config;
    out.samples.reserve(scenario.n_los + scenario.n_nlos);

    std::mt19937_64 rng(scenario.seed);
    const GgdParams error{0.0, scenario.los_error_alpha,
                          scenario.los_error_beta};
    std::exponential_distribution<double> bias(
        scenario.nlos_bias_mean > 0.0 ? 1.0 / scenario.nlos_bias_mean : 1.0);

    std::size_t index = 0;
    auto emit = [&](const ClassGenerator& gen, ClassLabel label,
                    std::size_t count) {
        for (std::size_t i = 0; i < count; ++i, ++index) {
            RangingSample s;
            s.index = index;
            s.preamble_count = gen.preamble_count;
            s.label = label;
            const double truth =
                scenario
                    .true_distances_m[index % scenario.true_distances_m.size()];
            s.true_distance = truth;
            double err = draw_ggd(error, rng);
            if (label == ClassLabel::NLoS && scenario.nlos_bias_mean > 0.0)
                err += bias(rng);
            s.estimated_distance = std::max(0.0, truth + err);

            // Counts are back-computed so the power formulas reproduce the
            // drawn dBm values exactly.
            const double fp_dbm = draw_feature(gen.fp_power_dbm, rng);
            const double rx_dbm = fp_dbm + draw_feature(gen.power_difference_db, rng);
            const double n2 = static_cast<double>(gen.preamble_count) *
                              static_cast<double>(gen.preamble_count);
            const double amp_sq =
                n2 * std::pow(10.0, (fp_dbm + out.config.power_offset_a) / 10.0);
            const double amp = std::sqrt(amp_sq / 3.0);
            s.fp_amp1 = s.fp_amp2 = s.fp_amp3 = amp;
            s.cir_power =
                n2 * std::pow(10.0, (rx_dbm + out.config.power_offset_a) / 10.0) /
                131072.0;
            out.samples.push_back(s);
        }
    };
    emit(scenario.los, ClassLabel::LoS, scenario.n_los);
    emit(scenario.nlos, ClassLabel::NLoS, scenario.n_nlos);
    return out;
}

} // namespace uwbad::sim
