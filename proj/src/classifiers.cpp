#include "uwbad/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "uwbad/errors.hpp"

namespace uwbad {

namespace {

const char* class_name(std::size_t c) { return c == 0 ? "LoS" : "NLoS"; }

double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    const double precision =
        tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                    : 0.0;
    const double recall =
        tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                    : 0.0;
    return precision + recall > 0.0
               ? 2.0 * precision * recall / (precision + recall)
               : 0.0;
}

} // namespace

NbModel fit_nb(const FeatureMatrix& matrix, EstimatorMode mode) {
    const std::size_t n = matrix.row_count();
    const std::size_t cols = matrix.column_count();
    if (n == 0 || cols == 0)
        throw argument_error("fit_nb: empty feature matrix");

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < n; ++i) {
        if (!matrix.labels[i])
            throw argument_error("fit_nb: every training row needs a label");
        by_class[static_cast<std::size_t>(*matrix.labels[i])].push_back(i);
    }
    if (by_class[0].size() < 2 || by_class[1].size() < 2)
        throw argument_error("fit_nb: need at least two rows of each class");

    NbModel model;
    model.mode = mode;
    model.features = matrix.features;
    model.priors = {static_cast<double>(by_class[0].size()) / n,
                    static_cast<double>(by_class[1].size()) / n};
    model.params.resize(cols);

    std::vector<double> column;
    for (std::size_t f = 0; f < cols; ++f) {
        for (std::size_t c = 0; c < 2; ++c) {
            column.clear();
            for (std::size_t i : by_class[c]) column.push_back(matrix.rows[i][f]);
            try {
                model.params[f][c] = fit_gd(column, mode);
            } catch (const degenerate_fit_error&) {
                throw degenerate_fit_error(
                    "fit_nb: zero variance for feature " +
                    std::string(feature_name(matrix.features[f])) +
                    " in class " + class_name(c));
            }
        }
    }
    return model;
}

std::array<double, 2> nb_posterior(const NbModel& model,
                                   std::span<const double> x) {
    if (x.size() != model.features.size() ||
        model.params.size() != model.features.size())
        throw argument_error("nb_posterior: feature count mismatch");

    std::array<double, 2> log_joint{};
    for (std::size_t c = 0; c < 2; ++c) {
        if (!(model.priors[c] > 0.0))
            throw argument_error("nb_posterior: class priors must be positive");
        log_joint[c] = std::log(model.priors[c]);
        for (std::size_t f = 0; f < x.size(); ++f)
            log_joint[c] += gd_log_pdf(x[f], model.params[f][c]);
    }
    const double peak = std::max(log_joint[0], log_joint[1]);
    const double w0 = std::exp(log_joint[0] - peak);
    const double w1 = std::exp(log_joint[1] - peak);
    return {w0 / (w0 + w1), w1 / (w0 + w1)};
}

ClassLabel nb_classify(const NbModel& model, std::span<const double> x) {
    const std::array<double, 2> posterior = nb_posterior(model, x);
    return posterior[1] > posterior[0] ? ClassLabel::NLoS : ClassLabel::LoS;
}

AnomalyFit fit_anomaly(const FeatureMatrix& los_rows, DensityFamily family,
                       EstimatorMode mode) {
    const std::size_t n = los_rows.row_count();
    const std::size_t cols = los_rows.column_count();
    if (n == 0 || cols == 0)
        throw argument_error("fit_anomaly: empty feature matrix");
    for (const std::optional<ClassLabel>& label : los_rows.labels)
        if (!label || *label != ClassLabel::LoS)
            throw argument_error(
                "fit_anomaly: training rows must all be labeled LoS");

    AnomalyFit fit;
    fit.model.family = family;
    fit.model.features = los_rows.features;
    fit.model.mode = mode;

    std::vector<double> column(n);
    for (std::size_t f = 0; f < cols; ++f) {
        for (std::size_t i = 0; i < n; ++i) column[i] = los_rows.rows[i][f];
        try {
            if (family == DensityFamily::GD) {
                fit.model.gd.push_back(fit_gd(column, mode));
            } else {
                GgdFitReport report;
                fit.model.ggd.push_back(fit_ggd(column, mode, &report));
                fit.reports.push_back(report);
            }
        } catch (const degenerate_fit_error&) {
            throw degenerate_fit_error(
                "fit_anomaly: zero variance for feature " +
                std::string(feature_name(los_rows.features[f])));
        }
    }
    return fit;
}

double anomaly_score(const AnomalyModel& model, std::span<const double> x) {
    if (x.size() != model.features.size())
        throw argument_error("anomaly_score: feature count mismatch");
    const std::size_t params =
        model.family == DensityFamily::GD ? model.gd.size() : model.ggd.size();
    if (params != model.features.size())
        throw state_error("anomaly_score: model parameters incomplete");

    double score = 0.0;
    for (std::size_t f = 0; f < x.size(); ++f)
        score += model.family == DensityFamily::GD
                     ? gd_log_pdf(x[f], model.gd[f])
                     : ggd_log_pdf(x[f], model.ggd[f]);
    return score;
}

EpsilonSelection select_epsilon(std::span<const double> scores,
                                std::span<const ClassLabel> labels) {
    if (scores.size() != labels.size())
        throw argument_error("select_epsilon: scores and labels differ in size");
    if (scores.empty())
        throw argument_error("select_epsilon: no scores");

    const std::size_t n = scores.size();
    std::vector<std::pair<double, ClassLabel>> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = {scores[i], labels[i]};
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::size_t total_nlos = 0;
    for (const auto& [score, label] : order)
        total_nlos += label == ClassLabel::NLoS ? 1 : 0;
    if (total_nlos == 0 || total_nlos == n)
        throw argument_error("select_epsilon: both classes must be present");

    // Sweeping the boundary after the k lowest scores predicts exactly those
    // k rows as NLoS; candidates in ascending order keep the smallest
    // epsilon on ties.
    EpsilonSelection best{order.front().first - 1.0,
                          f1_from_counts(0, 0, total_nlos)};
    std::size_t tp = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        tp += order[k - 1].second == ClassLabel::NLoS ? 1 : 0;
        double epsilon;
        if (k == n) {
            epsilon = order.back().first + 1.0;
        } else if (order[k - 1].first < order[k].first) {
            epsilon = 0.5 * (order[k - 1].first + order[k].first);
        } else {
            continue; // tied scores cannot be separated
        }
        const double f1 = f1_from_counts(tp, k - tp, total_nlos - tp);
        if (f1 > best.f1) best = {epsilon, f1};
    }
    return best;
}

ClassLabel classify_anomaly(const AnomalyModel& model,
                            std::span<const double> x) {
    if (!model.epsilon)
        throw state_error("classify_anomaly: threshold has not been selected");
    return anomaly_score(model, x) < *model.epsilon ? ClassLabel::NLoS
                                                    : ClassLabel::LoS;
}

} // namespace uwbad
