#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uwbad/classifiers.hpp"
#include "uwbad/distributions.hpp"
#include "uwbad/errors.hpp"
#include "uwbad/eval.hpp"
#include "uwbad/features.hpp"
#include "uwbad/io.hpp"
#include "uwbad/simulator.hpp"
#include "uwbad/types.hpp"

namespace py = pybind11;

using namespace uwbad;

namespace {

EstimatorMode mode_from(const std::string& name) {
    if (name == "standard") return EstimatorMode::Standard;
    if (name == "paper-literal") return EstimatorMode::PaperLiteral;
    throw argument_error("unknown estimator mode '" + name + "'");
}

std::vector<ClassLabel> labels_from(const std::vector<int>& raw) {
    std::vector<ClassLabel> labels;
    labels.reserve(raw.size());
    for (int v : raw) {
        if (v != 0 && v != 1)
            throw argument_error("labels must be 0 (LoS) or 1 (NLoS)");
        labels.push_back(static_cast<ClassLabel>(v));
    }
    return labels;
}

} // namespace

PYBIND11_MODULE(uwbad, m) {
    m.doc() = "NLoS detection for UWB ranging: density fits, anomaly "
              "thresholding, naive Bayes baseline and a ranging simulator";

    py::register_exception<argument_error>(m, "ArgumentError",
                                           PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<degenerate_fit_error>(m, "DegenerateFitError",
                                                 PyExc_RuntimeError);

    m.def("log_gamma", &log_gamma, py::arg("x"));

    m.def(
        "gd_pdf",
        [](double x, double mu, double sigma2) {
            return gd_pdf(x, {mu, sigma2});
        },
        py::arg("x"), py::arg("mu"), py::arg("sigma2"));
    m.def(
        "gd_log_pdf",
        [](double x, double mu, double sigma2) {
            return gd_log_pdf(x, {mu, sigma2});
        },
        py::arg("x"), py::arg("mu"), py::arg("sigma2"));
    m.def(
        "ggd_pdf",
        [](double x, double mu, double alpha, double beta) {
            return ggd_pdf(x, {mu, alpha, beta});
        },
        py::arg("x"), py::arg("mu"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "ggd_log_pdf",
        [](double x, double mu, double alpha, double beta) {
            return ggd_log_pdf(x, {mu, alpha, beta});
        },
        py::arg("x"), py::arg("mu"), py::arg("alpha"), py::arg("beta"));

    m.def(
        "fit_gd",
        [](const std::vector<double>& samples, const std::string& estimator) {
            const GaussianParams p = fit_gd(samples, mode_from(estimator));
            return std::make_pair(p.mu, p.sigma2);
        },
        py::arg("samples"), py::arg("estimator") = "standard",
        "Gaussian moment fit; returns (mu, sigma2)");
    m.def(
        "fit_ggd",
        [](const std::vector<double>& samples, const std::string& estimator) {
            const GgdParams p = fit_ggd(samples, mode_from(estimator));
            return std::make_tuple(p.mu, p.alpha, p.beta);
        },
        py::arg("samples"), py::arg("estimator") = "standard",
        "Generalized Gaussian moment fit; returns (mu, alpha, beta)");

    m.def("invert_kurtosis",
          [](double kappa) { return invert_kurtosis(kappa); },
          py::arg("kurtosis"),
          "Shape parameter whose population excess kurtosis matches");
    m.def(
        "ggd_moments",
        [](double alpha, double beta) {
            return moments_from_params(alpha, beta);
        },
        py::arg("alpha"), py::arg("beta"),
        "Population (variance, excess kurtosis) of a GGD");

    m.def(
        "sample_gd",
        [](double mu, double sigma2, std::size_t n, std::uint64_t seed) {
            return sample_gd({mu, sigma2}, n, seed);
        },
        py::arg("mu"), py::arg("sigma2"), py::arg("n"), py::arg("seed"));
    m.def(
        "sample_ggd",
        [](double mu, double alpha, double beta, std::size_t n,
           std::uint64_t seed) {
            return sample_ggd({mu, alpha, beta}, n, seed);
        },
        py::arg("mu"), py::arg("alpha"), py::arg("beta"), py::arg("n"),
        py::arg("seed"));

    m.def(
        "first_path_power",
        [](double f1, double f2, double f3, std::uint32_t preamble_count,
           double offset) {
            RangingSample s;
            s.fp_amp1 = f1;
            s.fp_amp2 = f2;
            s.fp_amp3 = f3;
            s.preamble_count = preamble_count;
            UwbConfig config;
            config.power_offset_a = offset;
            return first_path_power(s, config);
        },
        py::arg("fp_amp1"), py::arg("fp_amp2"), py::arg("fp_amp3"),
        py::arg("preamble_count"), py::arg("power_offset_a") = 113.77);
    m.def(
        "rx_power",
        [](double cir_power, std::uint32_t preamble_count, double offset) {
            RangingSample s;
            s.cir_power = cir_power;
            s.preamble_count = preamble_count;
            UwbConfig config;
            config.power_offset_a = offset;
            return rx_power(s, config);
        },
        py::arg("cir_power"), py::arg("preamble_count"),
        py::arg("power_offset_a") = 113.77);
    m.def("power_difference", &power_difference, py::arg("rx_dbm"),
          py::arg("fp_dbm"));
    m.def(
        "rolling_range_variance",
        [](const std::vector<double>& distances, std::size_t window) {
            return rolling_range_variance(distances, window);
        },
        py::arg("distances"), py::arg("window") = kDefaultVarianceWindow);

    m.def(
        "select_epsilon",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            const EpsilonSelection s =
                select_epsilon(scores, labels_from(labels));
            return std::make_pair(s.epsilon, s.f1);
        },
        py::arg("scores"), py::arg("labels"),
        "Best F1 threshold; returns (epsilon, f1)");

    m.def(
        "simulate_ranging",
        [](double true_distance_m, std::uint64_t seed, bool los,
           double noise_psd, double excess_delay_mean_ns) {
            sim::PulseSpec pulse;
            sim::ChannelSpec channel;
            const double delay_ns =
                true_distance_m / (sim::kSpeedOfLightMps * 1e-9);
            channel.amplitudes = {1.0};
            channel.delays_ns = {delay_ns};
            channel.noise_psd = noise_psd;
            channel.los = los;
            channel.nlos_excess_delay_mean_ns = excess_delay_mean_ns;
            if (!los) {
                channel.amplitudes.push_back(0.8);
                channel.delays_ns.push_back(delay_ns + 3.0);
            }
            return sim::simulate_ranging(pulse, channel, 64.0, 0.3, seed);
        },
        py::arg("true_distance_m"), py::arg("seed") = 1,
        py::arg("los") = true, py::arg("noise_psd") = 0.0,
        py::arg("excess_delay_mean_ns") = 10.0,
        "Single-shot waveform pipeline; returns the estimated distance in m");

    m.def(
        "synthesize_dataset_csv",
        [](const std::string& path, std::uint64_t seed, std::size_t n_los,
           std::size_t n_nlos) {
            sim::ScenarioSpec scenario;
            scenario.seed = seed;
            scenario.n_los = n_los;
            scenario.n_nlos = n_nlos;
            io::save_dataset(sim::synthesize_dataset(scenario), path);
        },
        py::arg("path"), py::arg("seed") = 1, py::arg("n_los") = 500,
        py::arg("n_nlos") = 50,
        "Write a labeled synthetic ranging dataset as CSV");

    m.def(
        "run_experiment",
        [](std::uint64_t scenario_seed, std::uint64_t split_seed,
           std::size_t n_los, std::size_t n_nlos,
           const std::string& estimator) {
            sim::ScenarioSpec scenario;
            scenario.seed = scenario_seed;
            scenario.n_los = n_los;
            scenario.n_nlos = n_nlos;
            ExperimentConfig config;
            config.seed = split_seed;
            config.mode = mode_from(estimator);
            return io::render_report(run_experiment(scenario, config));
        },
        py::arg("scenario_seed") = 1, py::arg("split_seed") = 1,
        py::arg("n_los") = 500, py::arg("n_nlos") = 50,
        py::arg("estimator") = "standard",
        "Synthesize, split, fit NB/GD/GGD and report; returns the report "
        "text");
}
