#ifndef UWBAD_EVAL_HPP
#define UWBAD_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwbad/classifiers.hpp"
#include "uwbad/simulator.hpp"
#include "uwbad/types.hpp"

namespace uwbad {

// NLoS is the positive class: tp counts NLoS predicted as NLoS.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion_matrix(std::span<const ClassLabel> predicted,
                                 std::span<const ClassLabel> truth);

// Precision and recall are 0 when their denominator is 0; F1 is 0 when
// precision + recall is 0.
struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

Metrics metrics(const ConfusionMatrix& cm);

// Disjoint, exhaustive row split; stratified keeps per-class ratios within
// one sample and requires fully labeled input with both classes present.
struct SplitIndices {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

SplitIndices split_indices(std::span<const std::optional<ClassLabel>> labels,
                           double first_fraction, std::uint64_t seed,
                           bool stratified);

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double train_fraction,
                                          std::uint64_t seed, bool stratified);

struct ExperimentConfig {
    double train_fraction = 0.6;
    double val_fraction = 0.2; // test gets the remainder
    std::vector<Feature> features = {Feature::FirstPathPower,
                                     Feature::PowerDifference,
                                     Feature::RangeVariance};
    std::size_t window = 20;
    EstimatorMode mode = EstimatorMode::Standard;
    std::uint64_t seed = 1; // split seed; the val/test split derives seed+1
    std::optional<std::string> dataset_path; // load instead of synthesize
};

struct ModelResult {
    std::string name;
    ConfusionMatrix cm;
    Metrics test_metrics;
    std::optional<double> epsilon;
    std::optional<double> validation_f1;
    // Mean per-row log likelihood of the fitted density on held-out LoS
    // test rows (density models only).
    std::optional<double> mean_loglik_test_los;
};

struct ExperimentReport {
    sim::ScenarioSpec scenario;
    ExperimentConfig config;
    std::size_t n_samples = 0;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> validation_rows;
    std::vector<std::size_t> test_rows;
    NbModel nb;
    AnomalyModel gd;
    AnomalyModel ggd;
    std::vector<ModelResult> results; // keyed by name: nb, gd, ggd
    double runtime_ms = 0.0;
    std::string timestamp;
};

// Generates (or loads) a dataset, fits NB on the labeled train split and
// the GD/GGD anomaly models on its LoS rows, selects epsilon on the
// validation split and evaluates all three on the held-out test split.
ExperimentReport run_experiment(const sim::ScenarioSpec& scenario,
                                const ExperimentConfig& config);

} // namespace uwbad

#endif
