#include "uwbad/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <random>

#include "uwbad/errors.hpp"
#include "uwbad/features.hpp"
#include "uwbad/io.hpp"

namespace uwbad {

namespace {

// Standardised engine output makes the shuffle reproducible everywhere,
// which std::shuffle would not be.
void shuffle_indices(std::vector<std::size_t>& ids, std::mt19937_64& rng) {
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[rng() % i]);
}

std::size_t take_count(double fraction, std::size_t n) {
    const auto k = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(n)));
    return std::min(k, n);
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<ClassLabel> unwrap_labels(const FeatureMatrix& matrix) {
    std::vector<ClassLabel> labels;
    labels.reserve(matrix.row_count());
    for (const std::optional<ClassLabel>& label : matrix.labels) {
        if (!label)
            throw argument_error("experiment rows must all be labeled");
        labels.push_back(*label);
    }
    return labels;
}

} // namespace

ConfusionMatrix confusion_matrix(std::span<const ClassLabel> predicted,
                                 std::span<const ClassLabel> truth) {
    if (predicted.size() != truth.size())
        throw argument_error("confusion_matrix: size mismatch");
    if (predicted.empty())
        throw argument_error("confusion_matrix: no predictions");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool pred_nlos = predicted[i] == ClassLabel::NLoS;
        const bool true_nlos = truth[i] == ClassLabel::NLoS;
        if (pred_nlos && true_nlos)
            ++cm.tp;
        else if (pred_nlos && !true_nlos)
            ++cm.fp;
        else if (!pred_nlos && true_nlos)
            ++cm.fn;
        else
            ++cm.tn;
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0)
        throw argument_error("metrics: empty confusion matrix");
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
    m.precision = cm.tp + cm.fp > 0 ? static_cast<double>(cm.tp) /
                                          static_cast<double>(cm.tp + cm.fp)
                                    : 0.0;
    m.recall = cm.tp + cm.fn > 0 ? static_cast<double>(cm.tp) /
                                       static_cast<double>(cm.tp + cm.fn)
                                 : 0.0;
    m.f1 = m.precision + m.recall > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

SplitIndices split_indices(std::span<const std::optional<ClassLabel>> labels,
                           double first_fraction, std::uint64_t seed,
                           bool stratified) {
    if (labels.empty())
        throw argument_error("split_indices: nothing to split");
    if (!(first_fraction > 0.0 && first_fraction < 1.0))
        throw argument_error("split_indices: fraction must lie in (0, 1)");

    std::mt19937_64 rng(seed);
    SplitIndices split;
    if (stratified) {
        std::array<std::vector<std::size_t>, 2> by_class;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!labels[i])
                throw argument_error(
                    "split_indices: stratified split needs full labels");
            by_class[static_cast<std::size_t>(*labels[i])].push_back(i);
        }
        if (by_class[0].empty() || by_class[1].empty())
            throw argument_error(
                "split_indices: stratified split needs both classes");
        for (std::vector<std::size_t>& ids : by_class) {
            shuffle_indices(ids, rng);
            const std::size_t k = take_count(first_fraction, ids.size());
            split.first.insert(split.first.end(), ids.begin(), ids.begin() + k);
            split.second.insert(split.second.end(), ids.begin() + k, ids.end());
        }
    } else {
        std::vector<std::size_t> ids(labels.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
        shuffle_indices(ids, rng);
        const std::size_t k = take_count(first_fraction, ids.size());
        split.first.assign(ids.begin(), ids.begin() + k);
        split.second.assign(ids.begin() + k, ids.end());
    }
    std::sort(split.first.begin(), split.first.end());
    std::sort(split.second.begin(), split.second.end());
    return split;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double train_fraction,
                                          std::uint64_t seed, bool stratified) {
    std::vector<std::optional<ClassLabel>> labels;
    labels.reserve(dataset.size());
    for (const RangingSample& s : dataset.samples) labels.push_back(s.label);
    const SplitIndices split =
        split_indices(labels, train_fraction, seed, stratified);

    std::pair<Dataset, Dataset> out;
    out.first.config = dataset.config;
    out.second.config = dataset.config;
    for (std::size_t i : split.first)
        out.first.samples.push_back(dataset.samples[i]);
    for (std::size_t i : split.second)
        out.second.samples.push_back(dataset.samples[i]);
    return out;
}

ExperimentReport run_experiment(const sim::ScenarioSpec& scenario,
                                const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (!(config.train_fraction > 0.0) || !(config.val_fraction > 0.0) ||
        !(config.train_fraction + config.val_fraction < 1.0))
        throw argument_error(
            "run_experiment: train/validation fractions must be positive and "
            "leave room for a test split");

    ExperimentReport report;
    report.scenario = scenario;
    report.config = config;
    report.timestamp = utc_timestamp();

    const Dataset data =
        config.dataset_path
            ? io::load_dataset(*config.dataset_path, scenario.config)
            : sim::synthesize_dataset(scenario);
    report.n_samples = data.size();

    const FeatureMatrix all =
        extract_features(data, config.features, config.window);
    const SplitIndices head =
        split_indices(all.labels, config.train_fraction, config.seed, true);
    report.train_rows = head.first;

    std::vector<std::optional<ClassLabel>> rest_labels;
    rest_labels.reserve(head.second.size());
    for (std::size_t i : head.second) rest_labels.push_back(all.labels[i]);
    const double rest_fraction =
        config.val_fraction / (1.0 - config.train_fraction);
    const SplitIndices tail =
        split_indices(rest_labels, rest_fraction, config.seed + 1, true);
    for (std::size_t pos : tail.first)
        report.validation_rows.push_back(head.second[pos]);
    for (std::size_t pos : tail.second)
        report.test_rows.push_back(head.second[pos]);

    const FeatureMatrix train = select_rows(all, report.train_rows);
    const FeatureMatrix validation = select_rows(all, report.validation_rows);
    const FeatureMatrix test = select_rows(all, report.test_rows);
    const std::vector<ClassLabel> validation_truth = unwrap_labels(validation);
    const std::vector<ClassLabel> test_truth = unwrap_labels(test);

    std::vector<std::size_t> train_los;
    for (std::size_t i = 0; i < train.row_count(); ++i)
        if (train.labels[i] == ClassLabel::LoS) train_los.push_back(i);

    report.nb = fit_nb(train, config.mode);
    report.nb.window = config.window;
    report.gd = fit_anomaly(select_rows(train, train_los), DensityFamily::GD,
                            config.mode)
                    .model;
    report.ggd = fit_anomaly(select_rows(train, train_los), DensityFamily::GGD,
                             config.mode)
                     .model;
    report.gd.window = config.window;
    report.ggd.window = config.window;

    auto evaluate_density = [&](AnomalyModel& model,
                                const std::string& name) {
        std::vector<double> scores;
        scores.reserve(validation.row_count());
        for (const std::vector<double>& row : validation.rows)
            scores.push_back(anomaly_score(model, row));
        const EpsilonSelection chosen =
            select_epsilon(scores, validation_truth);
        model.epsilon = chosen.epsilon;

        ModelResult result;
        result.name = name;
        result.epsilon = chosen.epsilon;
        result.validation_f1 = chosen.f1;

        std::vector<ClassLabel> predicted;
        predicted.reserve(test.row_count());
        double loglik = 0.0;
        std::size_t los_rows = 0;
        for (std::size_t i = 0; i < test.row_count(); ++i) {
            predicted.push_back(classify_anomaly(model, test.rows[i]));
            if (test_truth[i] == ClassLabel::LoS) {
                loglik += anomaly_score(model, test.rows[i]);
                ++los_rows;
            }
        }
        result.cm = confusion_matrix(predicted, test_truth);
        result.test_metrics = metrics(result.cm);
        if (los_rows > 0)
            result.mean_loglik_test_los =
                loglik / static_cast<double>(los_rows);
        report.results.push_back(result);
    };

    ModelResult nb_result;
    nb_result.name = "nb";
    std::vector<ClassLabel> nb_predicted;
    nb_predicted.reserve(test.row_count());
    for (const std::vector<double>& row : test.rows)
        nb_predicted.push_back(nb_classify(report.nb, row));
    nb_result.cm = confusion_matrix(nb_predicted, test_truth);
    nb_result.test_metrics = metrics(nb_result.cm);
    report.results.push_back(nb_result);

    evaluate_density(report.gd, "gd");
    evaluate_density(report.ggd, "ggd");

    report.runtime_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
}

} // namespace uwbad
