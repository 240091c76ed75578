#ifndef UWBAD_FEATURES_HPP
#define UWBAD_FEATURES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "uwbad/types.hpp"

namespace uwbad {

inline constexpr std::size_t kDefaultVarianceWindow = 20;

// 10 log10((F1^2+F2^2+F3^2) / N^2) - A, in dBm.
// domain_error when every amplitude is zero or the preamble count is zero.
double first_path_power(const RangingSample& sample, const UwbConfig& config);

// 10 log10((CIR_P * 2^17) / N^2) - A, in dBm. domain_error when CIR_P = 0.
double rx_power(const RangingSample& sample, const UwbConfig& config);

// rx - fp, in dB. The offset A cancels.
double power_difference(double rx_dbm, double fp_dbm);

// Unbiased variance (divisor window-1) of each length-`window` run of the
// series; output element i covers input [i, i+window). Output length is
// input length - window + 1. window >= 2 and a series at least that long.
std::vector<double> rolling_range_variance(std::span<const double> distances,
                                           std::size_t window);

// estimated - truth: positive values are overestimates, the direction an
// obstructed path biases toward.
double distance_error(double estimated_m, double truth_m);

// Computes the selected features for every sample, in sample order. The
// first window-1 rows reuse the first available range variance so the
// matrix stays rectangular. Per-sample failures are reported with the
// sample index attached.
FeatureMatrix extract_features(const Dataset& dataset,
                               const std::vector<Feature>& selection,
                               std::size_t window = kDefaultVarianceWindow);

} // namespace uwbad

#endif
