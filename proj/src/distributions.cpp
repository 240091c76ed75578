#include "uwbad/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uwbad/errors.hpp"

namespace uwbad {

namespace {

constexpr double kLogGammaMin = 0.05;
constexpr double kLogGammaMax = 400.0;

void check_valid(const GaussianParams& p) {
    if (!(p.sigma2 > 0.0) || !std::isfinite(p.sigma2) || !std::isfinite(p.mu))
        throw argument_error("GaussianParams require finite mu and sigma2 > 0");
}

void check_valid(const GgdParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !std::isfinite(p.alpha) ||
        !std::isfinite(p.beta) || !std::isfinite(p.mu))
        throw argument_error("GgdParams require finite mu and alpha, beta > 0");
}

double sum(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
}

// Population log(kappa + 3) as a function of beta; strictly decreasing on
// the fit range, which is what makes bisection inversion valid.
double log_kurtosis_ratio(double beta) {
    return log_gamma(5.0 / beta) + log_gamma(1.0 / beta) -
           2.0 * log_gamma(3.0 / beta);
}

} // namespace

double log_gamma(double x) {
    if (!(x >= kLogGammaMin && x <= kLogGammaMax))
        throw argument_error("log_gamma argument outside [0.05, 400]");
    // Lanczos approximation, g = 7, 9 terms.
    static constexpr double kCoeffs[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // Recurrence keeps the core evaluation away from the pole.
        return log_gamma(x + 1.0) - std::log(x);
    }
    const double z = x - 1.0;
    double series = kCoeffs[0];
    for (int i = 1; i < 9; ++i) series += kCoeffs[i] / (z + i);
    const double base = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) +
           (z + 0.5) * std::log(base) - base + std::log(series);
}

double gd_log_pdf(double x, const GaussianParams& params) {
    check_valid(params);
    const double d = x - params.mu;
    return -0.5 * std::log(2.0 * std::numbers::pi * params.sigma2) -
           d * d / (2.0 * params.sigma2);
}

double gd_pdf(double x, const GaussianParams& params) {
    return std::exp(gd_log_pdf(x, params));
}

GaussianParams fit_gd(std::span<const double> samples, EstimatorMode mode) {
    const std::size_t m = samples.size();
    if (m < 2)
        throw argument_error("fit_gd needs at least 2 samples");
    const double mean_divisor =
        mode == EstimatorMode::PaperLiteral ? static_cast<double>(m - 1)
                                            : static_cast<double>(m);
    const double mu = sum(samples) / mean_divisor;
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - mu;
        ss += d * d;
    }
    const double sigma2 = ss / static_cast<double>(m - 1);
    if (!(sigma2 > 0.0))
        throw degenerate_fit_error("fit_gd: zero sample variance");
    return {mu, sigma2};
}

double ggd_log_pdf(double x, const GgdParams& params) {
    check_valid(params);
    const double t = std::abs(x - params.mu) / params.alpha;
    return std::log(params.beta) - std::log(2.0 * params.alpha) -
           log_gamma(1.0 / params.beta) - std::pow(t, params.beta);
}

double ggd_pdf(double x, const GgdParams& params) {
    return std::exp(ggd_log_pdf(x, params));
}

std::pair<double, double> moments_from_params(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw argument_error("moments_from_params require alpha, beta > 0");
    const double sigma2 =
        alpha * alpha *
        std::exp(log_gamma(3.0 / beta) - log_gamma(1.0 / beta));
    const double kappa = std::exp(log_kurtosis_ratio(beta)) - 3.0;
    return {sigma2, kappa};
}

MomentEstimates estimate_moments(std::span<const double> samples,
                                 EstimatorMode mode) {
    const std::size_t m = samples.size();
    if (m < 4)
        throw argument_error("estimate_moments needs at least 4 samples");
    const double mean_divisor =
        mode == EstimatorMode::PaperLiteral ? static_cast<double>(m - 1)
                                            : static_cast<double>(m);
    const double mu = sum(samples) / mean_divisor;
    double ss2 = 0.0;
    double ss4 = 0.0;
    for (double x : samples) {
        const double d = x - mu;
        const double d2 = d * d;
        ss2 += d2;
        ss4 += d2 * d2;
    }
    const double variance = ss2 / static_cast<double>(m - 1);
    if (!(variance > 0.0))
        throw argument_error("estimate_moments: zero sample variance");
    const double fourth = ss4 / static_cast<double>(m - 1);
    const double kurtosis = fourth / (variance * variance) - 3.0;
    return {mu, variance, kurtosis};
}

double invert_kurtosis(double kappa_hat, bool* clamped) {
    if (!std::isfinite(kappa_hat))
        throw argument_error("invert_kurtosis: kurtosis must be finite");
    const double kappa_hi = std::exp(log_kurtosis_ratio(kGgdBetaMin)) - 3.0;
    const double kappa_lo = std::exp(log_kurtosis_ratio(kGgdBetaMax)) - 3.0;
    const double target =
        std::clamp(kappa_hat, kappa_lo + 1e-9, kappa_hi - 1e-9);
    if (clamped) *clamped = target != kappa_hat;

    const double target_log = std::log(target + 3.0);
    double lo = kGgdBetaMin;
    double hi = kGgdBetaMax;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (log_kurtosis_ratio(mid) > target_log)
            lo = mid; // ratio decreases with beta: root is to the right
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double alpha_from_variance(double sigma2, double beta) {
    if (!(sigma2 > 0.0))
        throw argument_error("alpha_from_variance requires sigma2 > 0");
    if (!(beta > 0.0))
        throw argument_error("alpha_from_variance requires beta > 0");
    return std::sqrt(sigma2 *
                     std::exp(log_gamma(1.0 / beta) - log_gamma(3.0 / beta)));
}

GgdParams fit_ggd(std::span<const double> samples, EstimatorMode mode,
                  GgdFitReport* report) {
    const MomentEstimates moments = estimate_moments(samples, mode);
    bool clamped = false;
    const double beta = invert_kurtosis(moments.kurtosis, &clamped);
    const double alpha = alpha_from_variance(moments.variance, beta);
    if (report) *report = {clamped, mode, moments};
    return {moments.mean, alpha, beta};
}

double draw_gd(const GaussianParams& params, std::mt19937_64& rng) {
    check_valid(params);
    std::normal_distribution<double> dist(params.mu, std::sqrt(params.sigma2));
    return dist(rng);
}

double draw_ggd(const GgdParams& params, std::mt19937_64& rng) {
    check_valid(params);
    std::gamma_distribution<double> gamma(1.0 / params.beta, 1.0);
    std::bernoulli_distribution coin(0.5);
    const double magnitude =
        params.alpha * std::pow(gamma(rng), 1.0 / params.beta);
    return params.mu + (coin(rng) ? magnitude : -magnitude);
}

std::vector<double> sample_gd(const GaussianParams& params, std::size_t n,
                              std::uint64_t seed) {
    if (n < 1)
        throw argument_error("sample_gd needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) x = draw_gd(params, rng);
    return out;
}

std::vector<double> sample_ggd(const GgdParams& params, std::size_t n,
                               std::uint64_t seed) {
    if (n < 1)
        throw argument_error("sample_ggd needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) x = draw_ggd(params, rng);
    return out;
}

} // namespace uwbad
