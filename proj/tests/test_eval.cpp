#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "uwbad/errors.hpp"
#include "uwbad/eval.hpp"

using namespace uwbad;

namespace {

std::vector<std::optional<ClassLabel>> make_labels(std::size_t n_los,
                                                   std::size_t n_nlos) {
    std::vector<std::optional<ClassLabel>> labels;
    labels.insert(labels.end(), n_los, ClassLabel::LoS);
    labels.insert(labels.end(), n_nlos, ClassLabel::NLoS);
    return labels;
}

bool disjoint_and_exhaustive(const SplitIndices& split, std::size_t n) {
    std::set<std::size_t> seen;
    for (std::size_t i : split.first) seen.insert(i);
    for (std::size_t i : split.second) seen.insert(i);
    return seen.size() == split.first.size() + split.second.size() &&
           seen.size() == n && (seen.empty() || *seen.rbegin() == n - 1);
}

} // namespace

TEST_CASE("confusion_matrix tallies against NLoS as positive") {
    const std::vector<ClassLabel> pred{
        ClassLabel::NLoS, ClassLabel::NLoS, ClassLabel::LoS, ClassLabel::LoS,
        ClassLabel::NLoS};
    const std::vector<ClassLabel> truth{
        ClassLabel::NLoS, ClassLabel::LoS, ClassLabel::NLoS, ClassLabel::LoS,
        ClassLabel::NLoS};
    const ConfusionMatrix cm = confusion_matrix(pred, truth);
    CHECK(cm.tp == 2);
    CHECK(cm.fp == 1);
    CHECK(cm.fn == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.total() == 5);

    CHECK_THROWS_AS((void)confusion_matrix(pred, std::vector<ClassLabel>{}),
                    argument_error);
    CHECK_THROWS_AS((void)confusion_matrix(std::vector<ClassLabel>{},
                                           std::vector<ClassLabel>{}),
                    argument_error);
}

TEST_CASE("metrics derive from the confusion matrix") {
    const Metrics m = metrics(ConfusionMatrix{2, 1, 1, 1});
    CHECK(m.accuracy == doctest::Approx(0.6));
    CHECK(m.precision == doctest::Approx(2.0 / 3.0));
    CHECK(m.recall == doctest::Approx(2.0 / 3.0));
    CHECK(m.f1 == doctest::Approx(2.0 / 3.0));

    // Perfect classifier.
    const Metrics perfect = metrics(ConfusionMatrix{5, 0, 0, 5});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.f1 == 1.0);

    // Zero-denominator conventions: no positive predictions, no positives.
    const Metrics silent = metrics(ConfusionMatrix{0, 0, 0, 4});
    CHECK(silent.precision == 0.0);
    CHECK(silent.recall == 0.0);
    CHECK(silent.f1 == 0.0);
    CHECK(silent.accuracy == 1.0);

    const Metrics wrong = metrics(ConfusionMatrix{0, 2, 3, 0});
    CHECK(wrong.f1 == 0.0);
    CHECK(wrong.accuracy == 0.0);

    CHECK_THROWS_AS((void)metrics(ConfusionMatrix{}), argument_error);
}

TEST_CASE("split_indices partitions the rows") {
    const auto labels = make_labels(30, 10);
    const SplitIndices split = split_indices(labels, 0.6, 3, false);
    CHECK(disjoint_and_exhaustive(split, 40));
    CHECK(split.first.size() == 24);
    CHECK(split.second.size() == 16);
    CHECK(std::is_sorted(split.first.begin(), split.first.end()));
    CHECK(std::is_sorted(split.second.begin(), split.second.end()));

    // Deterministic per seed, different across seeds.
    const SplitIndices again = split_indices(labels, 0.6, 3, false);
    CHECK(again.first == split.first);
    const SplitIndices other = split_indices(labels, 0.6, 4, false);
    CHECK(other.first != split.first);
}

TEST_CASE("stratified split keeps per-class proportions") {
    const auto labels = make_labels(500, 50);
    const SplitIndices split = split_indices(labels, 0.6, 1, true);
    CHECK(disjoint_and_exhaustive(split, 550));

    std::size_t first_nlos = 0;
    for (std::size_t i : split.first) first_nlos += i >= 500 ? 1 : 0;
    CHECK(split.first.size() == 330);    // 300 LoS + 30 NLoS
    CHECK(first_nlos == 30);

    // Unlabeled rows are only an error for stratified splits.
    std::vector<std::optional<ClassLabel>> partial = labels;
    partial[5] = std::nullopt;
    CHECK_THROWS_AS((void)split_indices(partial, 0.6, 1, true), argument_error);
    CHECK(disjoint_and_exhaustive(split_indices(partial, 0.6, 1, false), 550));

    // Single-class data cannot stratify.
    CHECK_THROWS_AS((void)split_indices(make_labels(10, 0), 0.5, 1, true),
                    argument_error);

    CHECK_THROWS_AS((void)split_indices(labels, 0.0, 1, true), argument_error);
    CHECK_THROWS_AS((void)split_indices(labels, 1.0, 1, true), argument_error);
    CHECK_THROWS_AS(
        (void)split_indices(std::vector<std::optional<ClassLabel>>{}, 0.5, 1,
                            false),
        argument_error);
}

TEST_CASE("split_dataset carries samples into both halves") {
    Dataset data;
    for (std::size_t i = 0; i < 20; ++i) {
        RangingSample s;
        s.index = i;
        s.estimated_distance = static_cast<double>(i);
        s.fp_amp1 = s.fp_amp2 = s.fp_amp3 = 10.0;
        s.cir_power = 100.0;
        s.preamble_count = 128;
        s.label = i < 15 ? ClassLabel::LoS : ClassLabel::NLoS;
        data.samples.push_back(s);
    }
    const auto [train, rest] = split_dataset(data, 0.5, 2, true);
    CHECK(train.size() + rest.size() == 20);
    CHECK(train.config.power_offset_a == data.config.power_offset_a);

    std::set<std::size_t> seen;
    for (const RangingSample& s : train.samples) seen.insert(s.index);
    for (const RangingSample& s : rest.samples) seen.insert(s.index);
    CHECK(seen.size() == 20);

    // Sorted index order means estimated distances ascend within each half.
    CHECK(std::is_sorted(train.samples.begin(), train.samples.end(),
                         [](const RangingSample& a, const RangingSample& b) {
                             return a.index < b.index;
                         }));
}

TEST_CASE("run_experiment produces a full three-model report") {
    sim::ScenarioSpec scenario;
    scenario.n_los = 200;
    scenario.n_nlos = 40;
    scenario.seed = 6;

    ExperimentConfig config;
    config.window = 10;
    config.seed = 3;

    const ExperimentReport report = run_experiment(scenario, config);
    CHECK(report.n_samples == 240);
    CHECK(report.train_rows.size() == 144); // 120 LoS + 24 NLoS
    CHECK(report.validation_rows.size() == 48);
    CHECK(report.test_rows.size() == 48);

    std::set<std::size_t> seen;
    seen.insert(report.train_rows.begin(), report.train_rows.end());
    seen.insert(report.validation_rows.begin(), report.validation_rows.end());
    seen.insert(report.test_rows.begin(), report.test_rows.end());
    CHECK(seen.size() == 240);

    REQUIRE(report.results.size() == 3);
    CHECK(report.results[0].name == "nb");
    CHECK(report.results[1].name == "gd");
    CHECK(report.results[2].name == "ggd");

    // NB has no threshold; both densities got one from validation.
    CHECK_FALSE(report.results[0].epsilon.has_value());
    CHECK(report.results[1].epsilon.has_value());
    CHECK(report.results[2].epsilon.has_value());
    CHECK(report.gd.epsilon == report.results[1].epsilon);
    CHECK(report.ggd.epsilon == report.results[2].epsilon);
    CHECK(report.results[1].mean_loglik_test_los.has_value());
    CHECK(report.results[2].mean_loglik_test_los.has_value());

    // The model objects carry what classify needs later.
    CHECK(report.nb.window == config.window);
    CHECK(report.gd.window == config.window);
    CHECK(report.nb.features == config.features);
    CHECK(report.gd.family == DensityFamily::GD);
    CHECK(report.ggd.family == DensityFamily::GGD);
    CHECK(report.gd.gd.size() == config.features.size());
    CHECK(report.ggd.ggd.size() == config.features.size());

    // Default classes are widely separated; every model should do well.
    for (const ModelResult& r : report.results) {
        CHECK(r.cm.total() == 48);
        CHECK(r.test_metrics.f1 > 0.8);
    }

    // Same seeds, same split and scores.
    const ExperimentReport again = run_experiment(scenario, config);
    CHECK(again.train_rows == report.train_rows);
    CHECK(again.results[2].epsilon == report.results[2].epsilon);
    CHECK(again.results[2].test_metrics.f1 == report.results[2].test_metrics.f1);

    ExperimentConfig bad = config;
    bad.train_fraction = 0.9;
    bad.val_fraction = 0.2;
    CHECK_THROWS_AS((void)run_experiment(scenario, bad), argument_error);
    bad.train_fraction = 0.0;
    CHECK_THROWS_AS((void)run_experiment(scenario, bad), argument_error);
}
