#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "uwbad/classifiers.hpp"
#include "uwbad/errors.hpp"

using namespace uwbad;

namespace {

FeatureMatrix labeled_matrix(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels) {
    FeatureMatrix m;
    m.features.resize(rows.empty() ? 0 : rows.front().size());
    for (std::size_t f = 0; f < m.features.size(); ++f)
        m.features[f] = static_cast<Feature>(f);
    m.rows = rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.labels.push_back(labels[i] ? ClassLabel::NLoS : ClassLabel::LoS);
        m.sample_indices.push_back(i);
    }
    return m;
}

// F1 of the rule "NLoS iff score < epsilon", evaluated the slow way with
// the textbook precision/recall formulation.
double f1_at(double epsilon, std::span<const double> scores,
             std::span<const ClassLabel> labels) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] < epsilon;
        const bool truth = labels[i] == ClassLabel::NLoS;
        tp += pred && truth;
        fp += pred && !truth;
        fn += !pred && truth;
    }
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

TEST_CASE("fit_nb estimates priors and per-class gaussians") {
    // 6 LoS rows, 4 NLoS rows, one feature.
    const FeatureMatrix m = labeled_matrix(
        {{1.0}, {2.0}, {3.0}, {1.5}, {2.5}, {2.0}, {8.0}, {9.0}, {10.0}, {9.5}},
        {0, 0, 0, 0, 0, 0, 1, 1, 1, 1});
    const NbModel model = fit_nb(m);
    CHECK(model.priors[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(model.priors[1] == doctest::Approx(0.4).epsilon(1e-15));
    REQUIRE(model.params.size() == 1);

    const std::vector<double> los{1.0, 2.0, 3.0, 1.5, 2.5, 2.0};
    const std::vector<double> nlos{8.0, 9.0, 10.0, 9.5};
    const GaussianParams glos = fit_gd(los);
    const GaussianParams gnlos = fit_gd(nlos);
    CHECK(model.params[0][0].mu == glos.mu);
    CHECK(model.params[0][0].sigma2 == glos.sigma2);
    CHECK(model.params[0][1].mu == gnlos.mu);
    CHECK(model.params[0][1].sigma2 == gnlos.sigma2);
    CHECK(model.mode == EstimatorMode::Standard);
}

TEST_CASE("fit_nb rejects unusable training data") {
    // Unlabeled row.
    FeatureMatrix m = labeled_matrix({{1.0}, {2.0}, {8.0}, {9.0}}, {0, 0, 1, 1});
    m.labels[1] = std::nullopt;
    CHECK_THROWS_AS((void)fit_nb(m), argument_error);

    // Single class only.
    CHECK_THROWS_AS(
        (void)fit_nb(labeled_matrix({{1.0}, {2.0}, {3.0}}, {0, 0, 0})),
        argument_error);

    // One row in a class.
    CHECK_THROWS_AS(
        (void)fit_nb(labeled_matrix({{1.0}, {2.0}, {8.0}}, {0, 0, 1})),
        argument_error);

    // Constant feature within a class names the feature.
    try {
        (void)fit_nb(labeled_matrix({{1.0, 5.0}, {2.0, 5.0}, {8.0, 1.0},
                                     {9.0, 2.0}},
                                    {0, 0, 1, 1}));
        FAIL("expected degenerate_fit_error");
    } catch (const degenerate_fit_error& e) {
        CHECK(std::string(e.what()).find("rx_power") != std::string::npos);
    }
}

TEST_CASE("nb_posterior matches a hand-computed reference") {
    // Priors 0.9/0.1, LoS ~ N(0,1), NLoS ~ N(3,1), x = 2:
    // posterior(NLoS) = 1/(1 + 9 e^{-1.5}) = 0.332427861743.
    NbModel model;
    model.priors = {0.9, 0.1};
    model.features = {Feature::FirstPathPower};
    model.params = {{GaussianParams{0.0, 1.0}, GaussianParams{3.0, 1.0}}};
    const std::array<double, 2> post =
        nb_posterior(model, std::vector<double>{2.0});
    CHECK(post[0] + post[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(post[1] == doctest::Approx(0.332427861743).epsilon(1e-9));
    CHECK(nb_classify(model, std::vector<double>{2.0}) == ClassLabel::LoS);
    CHECK(nb_classify(model, std::vector<double>{2.9}) == ClassLabel::NLoS);
}

TEST_CASE("nb_posterior survives extreme log-likelihood gaps") {
    NbModel model;
    model.priors = {0.5, 0.5};
    model.features = {Feature::FirstPathPower};
    model.params = {{GaussianParams{0.0, 1.0}, GaussianParams{100.0, 1.0}}};
    const std::array<double, 2> post =
        nb_posterior(model, std::vector<double>{0.0});
    CHECK(post[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(post[1] >= 0.0);
    CHECK(std::isfinite(post[1]));
}

TEST_CASE("nb_classify breaks exact ties toward LoS") {
    // Symmetric classes around x: identical likelihoods and priors.
    NbModel model;
    model.priors = {0.5, 0.5};
    model.features = {Feature::FirstPathPower};
    model.params = {{GaussianParams{-1.0, 1.0}, GaussianParams{1.0, 1.0}}};
    CHECK(nb_classify(model, std::vector<double>{0.0}) == ClassLabel::LoS);
}

TEST_CASE("nb_posterior checks the feature vector size") {
    NbModel model;
    model.priors = {0.5, 0.5};
    model.features = {Feature::FirstPathPower, Feature::RxPower};
    model.params = {{GaussianParams{0.0, 1.0}, GaussianParams{1.0, 1.0}},
                    {GaussianParams{0.0, 1.0}, GaussianParams{1.0, 1.0}}};
    CHECK_THROWS_AS((void)nb_posterior(model, std::vector<double>{1.0}),
                    argument_error);
}

TEST_CASE("fit_anomaly trains independent per-feature densities on LoS rows") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> a(0.0, 1.0), b(5.0, 2.0);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 200; ++i) rows.push_back({a(rng), b(rng)});
    const FeatureMatrix m = labeled_matrix(rows, std::vector<int>(200, 0));

    const AnomalyFit gd_fit = fit_anomaly(m, DensityFamily::GD);
    REQUIRE(gd_fit.model.gd.size() == 2);
    CHECK(gd_fit.model.family == DensityFamily::GD);
    CHECK(gd_fit.model.ggd.empty());
    CHECK_FALSE(gd_fit.model.epsilon.has_value());
    std::vector<double> col0, col1;
    for (const auto& r : rows) {
        col0.push_back(r[0]);
        col1.push_back(r[1]);
    }
    const GaussianParams p0 = fit_gd(col0);
    const GaussianParams p1 = fit_gd(col1);
    CHECK(gd_fit.model.gd[0].mu == p0.mu);
    CHECK(gd_fit.model.gd[0].sigma2 == p0.sigma2);
    CHECK(gd_fit.model.gd[1].mu == p1.mu);
    CHECK(gd_fit.model.gd[1].sigma2 == p1.sigma2);

    const AnomalyFit ggd_fit = fit_anomaly(m, DensityFamily::GGD);
    REQUIRE(ggd_fit.model.ggd.size() == 2);
    REQUIRE(ggd_fit.reports.size() == 2);
    const GgdParams q0 = fit_ggd(col0);
    CHECK(ggd_fit.model.ggd[0].mu == q0.mu);
    CHECK(ggd_fit.model.ggd[0].alpha == q0.alpha);
    CHECK(ggd_fit.model.ggd[0].beta == q0.beta);

    // Any NLoS (or unlabeled) row disqualifies the training set.
    FeatureMatrix bad = m;
    bad.labels[3] = ClassLabel::NLoS;
    CHECK_THROWS_AS((void)fit_anomaly(bad, DensityFamily::GD), argument_error);
    bad.labels[3] = std::nullopt;
    CHECK_THROWS_AS((void)fit_anomaly(bad, DensityFamily::GD), argument_error);
}

TEST_CASE("anomaly_score sums per-feature log densities") {
    AnomalyModel model;
    model.family = DensityFamily::GD;
    model.features = {Feature::FirstPathPower, Feature::PowerDifference};
    model.gd = {GaussianParams{-82.0, 2.25}, GaussianParams{5.0, 1.0}};
    const std::vector<double> x{-80.0, 6.5};
    const double want = gd_log_pdf(-80.0, model.gd[0]) +
                        gd_log_pdf(6.5, model.gd[1]);
    CHECK(anomaly_score(model, x) == want);

    AnomalyModel ggd_model;
    ggd_model.family = DensityFamily::GGD;
    ggd_model.features = model.features;
    ggd_model.ggd = {GgdParams{-82.0, 1.5, 1.2}, GgdParams{5.0, 1.0, 3.0}};
    const double want_ggd = ggd_log_pdf(-80.0, ggd_model.ggd[0]) +
                            ggd_log_pdf(6.5, ggd_model.ggd[1]);
    CHECK(anomaly_score(ggd_model, x) == want_ggd);

    CHECK_THROWS_AS((void)anomaly_score(model, std::vector<double>{1.0}),
                    argument_error);
    AnomalyModel hollow;
    hollow.family = DensityFamily::GD;
    hollow.features = {Feature::FirstPathPower};
    CHECK_THROWS_AS((void)anomaly_score(hollow, std::vector<double>{1.0}),
                    state_error);
}

TEST_CASE("select_epsilon reproduces the worked example") {
    // Separable case: any cut in (-7.5, -1.2) is perfect; the returned
    // threshold is the midpoint of the bracketing scores.
    const std::vector<double> scores{-1.0, -9.0, -1.2, -7.5};
    const std::vector<ClassLabel> labels{
        ClassLabel::LoS, ClassLabel::NLoS, ClassLabel::LoS, ClassLabel::NLoS};
    const EpsilonSelection sel = select_epsilon(scores, labels);
    CHECK(sel.epsilon == doctest::Approx(-4.35).epsilon(1e-15));
    CHECK(sel.f1 == 1.0);
    CHECK(f1_at(sel.epsilon, scores, labels) == sel.f1);
}

TEST_CASE("select_epsilon maximises F1 against an exhaustive oracle") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 60;
        std::vector<double> scores(n);
        std::vector<ClassLabel> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = rng() % 4 == 0 ? std::floor(value(rng)) : value(rng);
            labels[i] = rng() % 3 == 0 ? ClassLabel::NLoS : ClassLabel::LoS;
        }
        labels[0] = ClassLabel::NLoS; // guarantee both classes
        labels[1] = ClassLabel::LoS;

        const EpsilonSelection sel = select_epsilon(scores, labels);

        // Brute force over a fine sweep of candidate thresholds.
        double best = 0.0;
        const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
        for (double eps = *lo - 1.5; eps <= *hi + 1.5; eps += 1e-3)
            best = std::max(best, f1_at(eps, scores, labels));
        CHECK(sel.f1 == doctest::Approx(best).epsilon(1e-12));
        CHECK(f1_at(sel.epsilon, scores, labels) == sel.f1);
    }
}

TEST_CASE("select_epsilon prefers the smallest maximising threshold") {
    // Scores: NLoS at -10, LoS at 0 and 10. Every cut in (-10, 0] yields
    // F1 = 1; the smallest candidate is the midpoint -5.
    const std::vector<double> scores{-10.0, 0.0, 10.0};
    const std::vector<ClassLabel> labels{ClassLabel::NLoS, ClassLabel::LoS,
                                         ClassLabel::LoS};
    const EpsilonSelection sel = select_epsilon(scores, labels);
    CHECK(sel.epsilon == -5.0);
    CHECK(sel.f1 == 1.0);
}

TEST_CASE("select_epsilon rejects unusable inputs") {
    const std::vector<double> scores{1.0, 2.0, 3.0};
    // F1 needs both classes to mean anything.
    CHECK_THROWS_AS((void)select_epsilon(
                        scores, std::vector<ClassLabel>(3, ClassLabel::LoS)),
                    argument_error);
    CHECK_THROWS_AS((void)select_epsilon(
                        scores, std::vector<ClassLabel>(3, ClassLabel::NLoS)),
                    argument_error);
    CHECK_THROWS_AS((void)select_epsilon(std::vector<double>{},
                                         std::vector<ClassLabel>{}),
                    argument_error);
    CHECK_THROWS_AS(
        (void)select_epsilon(scores, std::vector<ClassLabel>(2, ClassLabel::LoS)),
        argument_error);
}

TEST_CASE("ggd scores with beta forced to 2 match gd scores") {
    AnomalyModel gd_model;
    gd_model.family = DensityFamily::GD;
    gd_model.features = {Feature::FirstPathPower, Feature::PowerDifference};
    gd_model.gd = {GaussianParams{-82.0, 2.25}, GaussianParams{5.0, 0.7}};

    AnomalyModel ggd_model;
    ggd_model.family = DensityFamily::GGD;
    ggd_model.features = gd_model.features;
    for (const GaussianParams& p : gd_model.gd)
        ggd_model.ggd.push_back(
            GgdParams{p.mu, std::sqrt(2.0 * p.sigma2), 2.0});

    std::mt19937_64 rng(4);
    std::normal_distribution<double> a(-82.0, 3.0), b(5.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const std::vector<double> x{a(rng), b(rng)};
        CHECK(std::fabs(anomaly_score(gd_model, x) -
                        anomaly_score(ggd_model, x)) < 1e-8);
    }
}

TEST_CASE("classify_anomaly thresholds the score strictly") {
    AnomalyModel model;
    model.family = DensityFamily::GD;
    model.features = {Feature::FirstPathPower};
    model.gd = {GaussianParams{0.0, 1.0}};

    CHECK_THROWS_AS((void)classify_anomaly(model, std::vector<double>{0.0}),
                    state_error);

    // Score at x=0 is log(1/sqrt(2 pi)) ~ -0.9189; epsilon just above and
    // below flips the call, equality stays LoS.
    const double score = anomaly_score(model, std::vector<double>{0.0});
    model.epsilon = score;
    CHECK(classify_anomaly(model, std::vector<double>{0.0}) == ClassLabel::LoS);
    model.epsilon = score + 1e-9;
    CHECK(classify_anomaly(model, std::vector<double>{0.0}) == ClassLabel::NLoS);
    model.epsilon = score - 1e-9;
    CHECK(classify_anomaly(model, std::vector<double>{0.0}) == ClassLabel::LoS);
}
