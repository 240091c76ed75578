#include "uwbad/types.hpp"

#include <cmath>

#include "uwbad/errors.hpp"

namespace uwbad {

std::vector<Violation> validate_dataset(const Dataset& dataset) {
    std::vector<Violation> report;
    auto flag = [&](std::size_t i, const char* rule) {
        report.push_back({i, rule});
    };
    for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
        const RangingSample& s = dataset.samples[i];
        if (s.preamble_count < 1)
            flag(i, "preamble_count must be >= 1");
        if (!(s.fp_amp1 >= 0.0) || !(s.fp_amp2 >= 0.0) || !(s.fp_amp3 >= 0.0))
            flag(i, "amplitude counts must be >= 0");
        if (!(s.cir_power >= 0.0))
            flag(i, "cir_power must be >= 0");
        if (!(s.estimated_distance >= 0.0))
            flag(i, "estimated_distance must be >= 0");
        if (s.true_distance && !(*s.true_distance >= 0.0))
            flag(i, "true_distance must be >= 0");
        if (!std::isfinite(s.estimated_distance) || !std::isfinite(s.fp_amp1) ||
            !std::isfinite(s.fp_amp2) || !std::isfinite(s.fp_amp3) ||
            !std::isfinite(s.cir_power))
            flag(i, "fields must be finite");
    }
    return report;
}

std::string_view feature_name(Feature f) {
    switch (f) {
    case Feature::FirstPathPower: return "first_path_power";
    case Feature::RxPower: return "rx_power";
    case Feature::PowerDifference: return "power_difference";
    case Feature::RangeVariance: return "range_variance";
    case Feature::DistanceError: return "distance_error";
    }
    throw argument_error("unknown feature enumerator");
}

Feature feature_from_name(std::string_view name) {
    if (name == "first_path_power") return Feature::FirstPathPower;
    if (name == "rx_power") return Feature::RxPower;
    if (name == "power_difference") return Feature::PowerDifference;
    if (name == "range_variance") return Feature::RangeVariance;
    if (name == "distance_error") return Feature::DistanceError;
    throw argument_error("unknown feature name: " + std::string(name));
}

FeatureMatrix select_rows(const FeatureMatrix& matrix,
                          const std::vector<std::size_t>& row_ids) {
    FeatureMatrix out;
    out.features = matrix.features;
    out.rows.reserve(row_ids.size());
    out.labels.reserve(row_ids.size());
    out.sample_indices.reserve(row_ids.size());
    for (std::size_t id : row_ids) {
        if (id >= matrix.row_count())
            throw argument_error("row id out of range: " + std::to_string(id));
        out.rows.push_back(matrix.rows[id]);
        out.labels.push_back(matrix.labels[id]);
        out.sample_indices.push_back(matrix.sample_indices[id]);
    }
    return out;
}

} // namespace uwbad
