#include "uwbad/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwbad/errors.hpp"

namespace uwbad {

double first_path_power(const RangingSample& sample, const UwbConfig& config) {
    if (sample.preamble_count == 0)
        throw domain_error("first_path_power: preamble count is zero");
    const double amp_sq = sample.fp_amp1 * sample.fp_amp1 +
                          sample.fp_amp2 * sample.fp_amp2 +
                          sample.fp_amp3 * sample.fp_amp3;
    if (!(amp_sq > 0.0))
        throw domain_error("first_path_power: all first-path amplitudes are zero");
    const double n = static_cast<double>(sample.preamble_count);
    return 10.0 * std::log10(amp_sq / (n * n)) - config.power_offset_a;
}

double rx_power(const RangingSample& sample, const UwbConfig& config) {
    if (sample.preamble_count == 0)
        throw domain_error("rx_power: preamble count is zero");
    if (!(sample.cir_power > 0.0))
        throw domain_error("rx_power: channel impulse response power is zero");
    const double n = static_cast<double>(sample.preamble_count);
    // 2^17 scales the accumulator back to the same units as the amplitudes.
    return 10.0 * std::log10(sample.cir_power * 131072.0 / (n * n)) -
           config.power_offset_a;
}

double power_difference(double rx_dbm, double fp_dbm) {
    return rx_dbm - fp_dbm;
}

std::vector<double> rolling_range_variance(std::span<const double> distances,
                                           std::size_t window) {
    if (window < 2)
        throw argument_error("rolling_range_variance needs window >= 2");
    if (distances.size() < window)
        throw argument_error(
            "rolling_range_variance needs at least one full window of samples");

    std::vector<double> out;
    out.reserve(distances.size() - window + 1);
    const double w = static_cast<double>(window);
    const double denom = static_cast<double>(window - 1);

    // Per-window sums of deltas against the window's first element. The
    // shift keeps the arithmetic well conditioned for nearby distances and
    // makes a constant window come out as exactly zero.
    for (std::size_t start = 0; start + window <= distances.size(); ++start) {
        const double shift = distances[start];
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t i = start; i < start + window; ++i) {
            const double d = distances[i] - shift;
            s1 += d;
            s2 += d * d;
        }
        out.push_back(std::max(s2 - s1 * s1 / w, 0.0) / denom);
    }
    return out;
}

double distance_error(double estimated_m, double truth_m) {
    return estimated_m - truth_m;
}

FeatureMatrix extract_features(const Dataset& dataset,
                               const std::vector<Feature>& selection,
                               std::size_t window) {
    if (selection.empty())
        throw argument_error("extract_features: empty feature selection");
    for (std::size_t i = 0; i < selection.size(); ++i)
        for (std::size_t j = i + 1; j < selection.size(); ++j)
            if (selection[i] == selection[j])
                throw argument_error("extract_features: duplicate feature " +
                                     std::string(feature_name(selection[i])));
    if (dataset.samples.empty())
        throw argument_error("extract_features: empty dataset");

    const bool want_variance =
        std::find(selection.begin(), selection.end(), Feature::RangeVariance) !=
        selection.end();
    std::vector<double> variance;
    if (want_variance) {
        if (dataset.size() < window)
            throw argument_error(
                "extract_features: fewer samples than the variance window");
        std::vector<double> estimated;
        estimated.reserve(dataset.size());
        for (const RangingSample& s : dataset.samples)
            estimated.push_back(s.estimated_distance);
        variance = rolling_range_variance(estimated, window);
    }

    FeatureMatrix matrix;
    matrix.features = selection;
    matrix.rows.reserve(dataset.size());
    matrix.labels.reserve(dataset.size());
    matrix.sample_indices.reserve(dataset.size());

    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const RangingSample& s = dataset.samples[i];
        std::vector<double> row(selection.size());
        try {
            for (std::size_t f = 0; f < selection.size(); ++f) {
                switch (selection[f]) {
                case Feature::FirstPathPower:
                    row[f] = first_path_power(s, dataset.config);
                    break;
                case Feature::RxPower:
                    row[f] = rx_power(s, dataset.config);
                    break;
                case Feature::PowerDifference:
                    row[f] = power_difference(rx_power(s, dataset.config),
                                              first_path_power(s, dataset.config));
                    break;
                case Feature::RangeVariance:
                    // Rows before the first full window reuse its variance.
                    row[f] = i + 1 < window ? variance.front()
                                            : variance[i + 1 - window];
                    break;
                case Feature::DistanceError:
                    if (!s.true_distance)
                        throw domain_error(
                            "distance_error needs a true distance");
                    row[f] = distance_error(s.estimated_distance,
                                            *s.true_distance);
                    break;
                }
            }
        } catch (const domain_error& e) {
            throw domain_error("sample " + std::to_string(s.index) + ": " +
                               e.what());
        }
        matrix.rows.push_back(std::move(row));
        matrix.labels.push_back(s.label);
        matrix.sample_indices.push_back(s.index);
    }
    return matrix;
}

} // namespace uwbad
