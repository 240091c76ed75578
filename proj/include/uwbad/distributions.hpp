#ifndef UWBAD_DISTRIBUTIONS_HPP
#define UWBAD_DISTRIBUTIONS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace uwbad {

struct GaussianParams {
    double mu = 0.0;
    double sigma2 = 1.0; // > 0
};

// Generalized Gaussian: density (beta / (2 alpha Gamma(1/beta)))
// * exp(-(|x-mu|/alpha)^beta). beta = 2 is Gaussian, beta = 1 Laplace.
struct GgdParams {
    double mu = 0.0;
    double alpha = 1.0; // scale, > 0
    double beta = 2.0;  // shape, > 0
};

struct MomentEstimates {
    double mean = 0.0;
    double variance = 0.0;
    // Excess kurtosis. Small samples can fall below the population bound
    // of -2; the shape inversion clamps such values.
    double kurtosis = 0.0;
};

// Mean divisor convention for the moment estimators. Standard divides the
// mean by M; paper-literal divides it by M-1 as well. The variance and the
// kurtosis ratio always use M-1 divisors.
enum class EstimatorMode { Standard, PaperLiteral };

// Shape parameter range used when fitting; the kurtosis relation is
// strictly decreasing on this interval, so bisection inversion is exact.
inline constexpr double kGgdBetaMin = 0.15;
inline constexpr double kGgdBetaMax = 20.0;

// log Gamma(x) for x in [0.05, 400], relative accuracy better than 1e-12.
double log_gamma(double x);

double gd_pdf(double x, const GaussianParams& params);
double gd_log_pdf(double x, const GaussianParams& params);

// At least 2 samples, not all identical. The variance uses the unbiased
// M-1 divisor in both modes.
GaussianParams fit_gd(std::span<const double> samples,
                      EstimatorMode mode = EstimatorMode::Standard);

double ggd_pdf(double x, const GgdParams& params);
double ggd_log_pdf(double x, const GgdParams& params);

// Population variance and excess kurtosis implied by (alpha, beta):
// sigma2 = alpha^2 Gamma(3/b)/Gamma(1/b),
// kappa  = Gamma(5/b)Gamma(1/b)/Gamma(3/b)^2 - 3.
std::pair<double, double> moments_from_params(double alpha, double beta);

// Mean, unbiased variance and the M-1-divisor kurtosis ratio. Requires at
// least 4 samples and nonzero variance.
MomentEstimates estimate_moments(std::span<const double> samples,
                                 EstimatorMode mode = EstimatorMode::Standard);

// Inverts the kurtosis relation by bisection on [kGgdBetaMin, kGgdBetaMax].
// Out-of-range kurtosis is clamped to the attainable interval; *clamped
// reports whether that happened.
double invert_kurtosis(double kappa_hat, bool* clamped = nullptr);

// alpha = sqrt(sigma2 * Gamma(1/b)/Gamma(3/b)).
double alpha_from_variance(double sigma2, double beta);

struct GgdFitReport {
    bool kurtosis_clamped = false;
    EstimatorMode mode = EstimatorMode::Standard;
    MomentEstimates moments;
};

// Moment-matching fit: estimate moments, invert the kurtosis for beta,
// derive alpha from the variance.
GgdParams fit_ggd(std::span<const double> samples,
                  EstimatorMode mode = EstimatorMode::Standard,
                  GgdFitReport* report = nullptr);

// Single draws sharing a caller-owned engine. A GGD variate is
// mu + sign * alpha * G^(1/beta) with G ~ Gamma(1/beta, 1).
double draw_gd(const GaussianParams& params, std::mt19937_64& rng);
double draw_ggd(const GgdParams& params, std::mt19937_64& rng);

std::vector<double> sample_gd(const GaussianParams& params, std::size_t n,
                              std::uint64_t seed);
std::vector<double> sample_ggd(const GgdParams& params, std::size_t n,
                               std::uint64_t seed);

} // namespace uwbad

#endif
