#ifndef UWBAD_IO_HPP
#define UWBAD_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <variant>

#include "uwbad/classifiers.hpp"
#include "uwbad/eval.hpp"
#include "uwbad/simulator.hpp"
#include "uwbad/types.hpp"

namespace uwbad::io {

// Dataset CSV. Header is exactly:
// index,true_distance_m,estimated_distance_m,fp_amp1,fp_amp2,fp_amp3,cir_power,preamble_count,label
// label is 0, 1 or empty (unlabeled); true_distance_m may be empty.
// Numbers are written with shortest round-trip precision.
Dataset load_dataset(const std::string& path, const UwbConfig& config = {});
void save_dataset(const Dataset& dataset, const std::string& path);

// Feature CSV: index,label then the selected feature columns by name.
FeatureMatrix load_feature_matrix(const std::string& path);
void save_feature_matrix(const FeatureMatrix& matrix, const std::string& path);

// Versioned plain-text model files; loading rejects unknown versions.
void save_model(const AnomalyModel& model, const std::string& path);
void save_model(const NbModel& model, const std::string& path);
std::variant<AnomalyModel, NbModel> load_model(const std::string& path);

// Two-section plot text: a unit-area histogram of the samples, then the
// fitted GD and GGD curves on 512 points spanning the data range +- 3
// fitted standard deviations. Needs >= 10 samples, >= 5 bins and a
// nonzero data range.
void emit_plot_data(std::span<const double> samples, const GaussianParams& gd,
                    const GgdParams& ggd, std::size_t bins,
                    const std::string& path);

// Key-value scenario file; unknown keys are rejected.
sim::ScenarioSpec load_scenario(const std::string& path);
void save_scenario(const sim::ScenarioSpec& scenario, const std::string& path);

// Structured key-value report. Every line is "key value"; the timestamp
// and runtime_ms lines are the only ones that vary between identical runs.
std::string render_report(const ExperimentReport& report);
void save_report(const ExperimentReport& report, const std::string& path);

std::string format_double(double value); // shortest round-trip decimal

} // namespace uwbad::io

#endif
