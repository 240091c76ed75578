#ifndef UWBAD_CLASSIFIERS_HPP
#define UWBAD_CLASSIFIERS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uwbad/distributions.hpp"
#include "uwbad/types.hpp"

namespace uwbad {

// Gaussian naive Bayes over the selected features: class priors plus one
// Gaussian per (class, feature) pair. Index 0 = LoS, 1 = NLoS throughout.
struct NbModel {
    std::array<double, 2> priors{0.5, 0.5};
    std::vector<Feature> features;
    std::size_t window = 0; // variance window the features were built with
    std::vector<std::array<GaussianParams, 2>> params; // per feature
    EstimatorMode mode = EstimatorMode::Standard;
};

// Requires fully labeled rows, both classes present, and at least two rows
// per class. degenerate_fit_error names the feature whose per-class
// variance vanishes.
NbModel fit_nb(const FeatureMatrix& matrix,
               EstimatorMode mode = EstimatorMode::Standard);

// Posterior probabilities {P(LoS|x), P(NLoS|x)}, computed in log space and
// normalised to sum to 1.
std::array<double, 2> nb_posterior(const NbModel& model,
                                   std::span<const double> x);

// Argmax of the posterior; an exact tie resolves to LoS.
ClassLabel nb_classify(const NbModel& model, std::span<const double> x);

enum class DensityFamily { GD, GGD };

// Per-feature density model of the normal (LoS) class, with the
// log-likelihood threshold below which a sample counts as anomalous.
struct AnomalyModel {
    DensityFamily family = DensityFamily::GD;
    std::vector<Feature> features;
    std::size_t window = 0;
    EstimatorMode mode = EstimatorMode::Standard;
    std::vector<GaussianParams> gd;  // used when family == GD
    std::vector<GgdParams> ggd;      // used when family == GGD
    std::optional<double> epsilon;
};

struct AnomalyFit {
    AnomalyModel model;
    std::vector<GgdFitReport> reports; // per feature, GGD family only
};

// Fits each feature independently on LoS rows. Every row must carry a LoS
// label: the anomaly detectors train on the normal class alone.
AnomalyFit fit_anomaly(const FeatureMatrix& los_rows, DensityFamily family,
                       EstimatorMode mode = EstimatorMode::Standard);

// Sum of per-feature log densities; lower = more anomalous.
double anomaly_score(const AnomalyModel& model, std::span<const double> x);

struct EpsilonSelection {
    double epsilon = 0.0;
    double f1 = 0.0;
};

// Scans the midpoints between consecutive distinct scores (plus sentinels
// outside the range) and returns the threshold maximising F1 with NLoS
// positive, predicting NLoS when score < epsilon. Ties resolve to the
// smallest epsilon.
EpsilonSelection select_epsilon(std::span<const double> scores,
                                std::span<const ClassLabel> labels);

// NLoS iff anomaly_score(x) < epsilon (strict). state_error when the
// threshold was never set.
ClassLabel classify_anomaly(const AnomalyModel& model,
                            std::span<const double> x);

} // namespace uwbad

#endif
