#ifndef UWBAD_TYPES_HPP
#define UWBAD_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uwbad {

// LoS is the normal class, NLoS the anomalous (positive) one.
enum class ClassLabel : int { LoS = 0, NLoS = 1 };

// Radio configuration of the ranging kit. power_offset_a is the constant
// subtracted in the dBm power formulas; 113.77 is the calibrated value for
// a 16 MHz pulse repetition frequency. Defaults match the MDEK1001 setup.
struct UwbConfig {
    double data_rate_mbps = 6.8;
    double center_frequency_mhz = 3993.6;
    double bandwidth_mhz = 499.2;
    int channel = 2;
    double prf_mhz = 16.0;
    double power_offset_a = 113.77;
};

// One raw ranging measurement. Amplitudes and CIR power are raw accumulator
// counts as reported by the chip; preamble_count is the preamble
// accumulation count N used to normalise them.
struct RangingSample {
    std::size_t index = 0;
    double estimated_distance = 0.0;     // meters
    std::optional<double> true_distance; // meters, when ground truth exists
    double fp_amp1 = 0.0;                // first-path harmonic amplitudes
    double fp_amp2 = 0.0;
    double fp_amp3 = 0.0;
    double cir_power = 0.0;
    std::uint32_t preamble_count = 1;
    std::optional<ClassLabel> label;
};

struct Dataset {
    UwbConfig config;
    std::vector<RangingSample> samples;

    std::size_t size() const { return samples.size(); }
};

// A single invariant violation found in a dataset. Violations are data, not
// failures: validation always returns, the report lists what is wrong.
struct Violation {
    std::size_t sample_index;
    std::string rule;
};

std::vector<Violation> validate_dataset(const Dataset& dataset);

// Derived per-sample features.
enum class Feature {
    FirstPathPower,
    RxPower,
    PowerDifference,
    RangeVariance,
    DistanceError,
};

// Canonical external names: first_path_power, rx_power, power_difference,
// range_variance, distance_error.
std::string_view feature_name(Feature f);
Feature feature_from_name(std::string_view name); // argument_error on unknown

// Full per-sample feature record; power_difference always equals
// rx_power - first_path_power.
struct FeatureVector {
    double first_path_power = 0.0; // dBm
    double rx_power = 0.0;         // dBm
    double power_difference = 0.0; // dB
    double range_variance = 0.0;   // meters^2
    std::optional<double> distance_error; // meters
};

// Rectangular feature matrix restricted to a feature selection. Rows align
// one-to-one with the samples they were computed from.
struct FeatureMatrix {
    std::vector<Feature> features;             // column order
    std::vector<std::vector<double>> rows;     // rows x features.size()
    std::vector<std::optional<ClassLabel>> labels;
    std::vector<std::size_t> sample_indices;

    std::size_t row_count() const { return rows.size(); }
    std::size_t column_count() const { return features.size(); }
};

// Row subset in the given order; labels and sample indices follow the rows.
FeatureMatrix select_rows(const FeatureMatrix& matrix,
                          const std::vector<std::size_t>& row_ids);

} // namespace uwbad

#endif
