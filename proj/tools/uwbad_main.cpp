#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "uwbad/classifiers.hpp"
#include "uwbad/distributions.hpp"
#include "uwbad/errors.hpp"
#include "uwbad/eval.hpp"
#include "uwbad/features.hpp"
#include "uwbad/io.hpp"
#include "uwbad/simulator.hpp"
#include "uwbad/types.hpp"

namespace {

using namespace uwbad;

std::vector<Feature> parse_feature_list(const std::string& list) {
    std::vector<Feature> features;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t pos = list.find(',', start);
        const std::string name =
            list.substr(start, pos == std::string::npos ? pos : pos - start);
        features.push_back(feature_from_name(name));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return features;
}

EstimatorMode parse_mode(const std::string& name) {
    return name == "paper-literal" ? EstimatorMode::PaperLiteral
                                   : EstimatorMode::Standard;
}

DensityFamily parse_family(const std::string& name) {
    return name == "ggd" ? DensityFamily::GGD : DensityFamily::GD;
}

struct CommonFlags {
    std::string estimator = "standard";
    std::string features = "first_path_power,power_difference,range_variance";
    std::size_t window = kDefaultVarianceWindow;
};

void add_estimator_flag(CLI::App* cmd, std::string& estimator) {
    cmd->add_option("--estimator", estimator,
                    "Moment estimator variant (the paper-literal variant "
                    "divides the mean by M-1 as well)")
        ->check(CLI::IsMember({"standard", "paper-literal"}))
        ->capture_default_str();
}

int run_simulate(const std::string& scenario_path, const std::string& out,
                 std::optional<std::uint64_t> seed) {
    sim::ScenarioSpec scenario;
    if (!scenario_path.empty()) scenario = io::load_scenario(scenario_path);
    if (seed) scenario.seed = *seed;
    io::save_dataset(sim::synthesize_dataset(scenario), out);
    return 0;
}

int run_features(const std::string& in, const std::string& out,
                 const CommonFlags& flags) {
    const Dataset dataset = io::load_dataset(in);
    const FeatureMatrix matrix = extract_features(
        dataset, parse_feature_list(flags.features), flags.window);
    io::save_feature_matrix(matrix, out);
    return 0;
}

int run_fit(const std::string& in, const std::string& out,
            const std::string& family_name, const CommonFlags& flags,
            std::optional<double> epsilon) {
    const FeatureMatrix matrix = io::load_feature_matrix(in);
    std::vector<std::size_t> los_ids;
    bool any_nlos = false;
    for (std::size_t i = 0; i < matrix.row_count(); ++i) {
        if (matrix.labels[i] == ClassLabel::LoS) los_ids.push_back(i);
        if (matrix.labels[i] == ClassLabel::NLoS) any_nlos = true;
    }

    AnomalyFit fit = fit_anomaly(select_rows(matrix, los_ids),
                                 parse_family(family_name),
                                 parse_mode(flags.estimator));
    fit.model.window = flags.window;
    if (epsilon) {
        fit.model.epsilon = *epsilon;
    } else if (any_nlos) {
        // With both classes in the file, pick the threshold that best
        // separates them.
        std::vector<double> scores;
        std::vector<ClassLabel> labels;
        for (std::size_t i = 0; i < matrix.row_count(); ++i) {
            if (!matrix.labels[i]) continue;
            scores.push_back(anomaly_score(fit.model, matrix.rows[i]));
            labels.push_back(*matrix.labels[i]);
        }
        fit.model.epsilon = select_epsilon(scores, labels).epsilon;
    }
    io::save_model(fit.model, out);
    return 0;
}

int run_train_nb(const std::string& in, const std::string& out,
                 const CommonFlags& flags) {
    const FeatureMatrix matrix = io::load_feature_matrix(in);
    NbModel model = fit_nb(matrix, parse_mode(flags.estimator));
    model.window = flags.window;
    io::save_model(model, out);
    return 0;
}

int run_classify(const std::string& model_path, const std::string& in,
                 const std::string& out) {
    const std::variant<AnomalyModel, NbModel> model =
        io::load_model(model_path);
    Dataset dataset = io::load_dataset(in);

    const std::vector<Feature>& features =
        std::holds_alternative<AnomalyModel>(model)
            ? std::get<AnomalyModel>(model).features
            : std::get<NbModel>(model).features;
    const std::size_t window = std::holds_alternative<AnomalyModel>(model)
                                   ? std::get<AnomalyModel>(model).window
                                   : std::get<NbModel>(model).window;
    const FeatureMatrix matrix = extract_features(dataset, features, window);

    for (std::size_t i = 0; i < matrix.row_count(); ++i) {
        dataset.samples[i].label =
            std::holds_alternative<AnomalyModel>(model)
                ? classify_anomaly(std::get<AnomalyModel>(model),
                                   matrix.rows[i])
                : nb_classify(std::get<NbModel>(model), matrix.rows[i]);
    }
    io::save_dataset(dataset, out);
    return 0;
}

int run_evaluate(const std::string& scenario_path, const std::string& data,
                 const std::string& out, const CommonFlags& flags,
                 std::uint64_t seed, double train_fraction,
                 double val_fraction, const std::string& nb_out,
                 const std::string& gd_out, const std::string& ggd_out) {
    sim::ScenarioSpec scenario;
    if (!scenario_path.empty()) scenario = io::load_scenario(scenario_path);

    ExperimentConfig config;
    config.train_fraction = train_fraction;
    config.val_fraction = val_fraction;
    config.features = parse_feature_list(flags.features);
    config.window = flags.window;
    config.mode = parse_mode(flags.estimator);
    config.seed = seed;
    if (!data.empty()) config.dataset_path = data;

    const ExperimentReport report = run_experiment(scenario, config);
    if (out.empty())
        std::cout << io::render_report(report);
    else
        io::save_report(report, out);
    if (!nb_out.empty()) io::save_model(report.nb, nb_out);
    if (!gd_out.empty()) io::save_model(report.gd, gd_out);
    if (!ggd_out.empty()) io::save_model(report.ggd, ggd_out);
    return 0;
}

int run_plotdata(const std::string& in, const std::string& feature,
                 const std::string& out, std::size_t bins,
                 const std::string& label_filter,
                 const std::string& estimator) {
    const FeatureMatrix matrix = io::load_feature_matrix(in);
    const Feature wanted = feature_from_name(feature);
    std::size_t column = matrix.features.size();
    for (std::size_t f = 0; f < matrix.features.size(); ++f)
        if (matrix.features[f] == wanted) column = f;
    if (column == matrix.features.size())
        throw argument_error("feature '" + feature + "' is not in " + in);

    std::vector<double> values;
    for (std::size_t i = 0; i < matrix.row_count(); ++i) {
        if (label_filter == "0" && matrix.labels[i] != ClassLabel::LoS)
            continue;
        if (label_filter == "1" && matrix.labels[i] != ClassLabel::NLoS)
            continue;
        values.push_back(matrix.rows[i][column]);
    }

    const EstimatorMode mode = parse_mode(estimator);
    io::emit_plot_data(values, fit_gd(values, mode), fit_ggd(values, mode),
                       bins, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NLoS detection for UWB ranging: density fitting, anomaly "
                 "thresholding and a naive Bayes baseline"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string data_path;
    std::string model_path;
    std::string in_path;
    std::string out_path;
    std::string family = "ggd";
    std::string feature = "distance_error";
    std::string label_filter = "all";
    std::string nb_out;
    std::string gd_out;
    std::string ggd_out;
    CommonFlags flags;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t split_seed = 1;
    double train_fraction = 0.6;
    double val_fraction = 0.2;
    double epsilon_flag = 0.0;
    std::size_t bins = 40;

    CLI::App* simulate =
        app.add_subcommand("simulate", "Generate a labeled ranging dataset");
    simulate->add_option("--scenario", scenario_path,
                         "Scenario file (defaults when omitted)");
    simulate->add_option("--out", out_path, "Dataset CSV to write")
        ->required();
    simulate->add_option("--seed", seed_override,
                         "Override the scenario seed");

    CLI::App* features =
        app.add_subcommand("features", "Compute features from a dataset CSV");
    features->add_option("--in", in_path, "Dataset CSV")->required();
    features->add_option("--out", out_path, "Feature CSV to write")
        ->required();
    features
        ->add_option("--features", flags.features, "Comma-separated features")
        ->capture_default_str();
    features->add_option("--window", flags.window, "Range-variance window")
        ->capture_default_str();

    CLI::App* fit = app.add_subcommand(
        "fit", "Fit a density model to the LoS rows of a feature CSV");
    fit->add_option("--in", in_path, "Feature CSV")->required();
    fit->add_option("--out", out_path, "Model file to write")->required();
    fit->add_option("--family", family, "Density family")
        ->check(CLI::IsMember({"gd", "ggd"}))
        ->capture_default_str();
    add_estimator_flag(fit, flags.estimator);
    fit->add_option("--window", flags.window,
                    "Range-variance window to record in the model")
        ->capture_default_str();
    CLI::Option* epsilon_opt = fit->add_option(
        "--epsilon", epsilon_flag,
        "Fixed score threshold (otherwise selected from labeled rows)");

    CLI::App* train_nb = app.add_subcommand(
        "train-nb", "Train the naive Bayes baseline on a labeled feature CSV");
    train_nb->add_option("--in", in_path, "Feature CSV")->required();
    train_nb->add_option("--out", out_path, "Model file to write")->required();
    add_estimator_flag(train_nb, flags.estimator);
    train_nb
        ->add_option("--window", flags.window,
                     "Range-variance window to record in the model")
        ->capture_default_str();

    CLI::App* classify = app.add_subcommand(
        "classify", "Label a dataset CSV with a fitted model");
    classify->add_option("--model", model_path, "Model file")->required();
    classify->add_option("--in", in_path, "Dataset CSV")->required();
    classify->add_option("--out", out_path, "Labeled dataset CSV to write")
        ->required();

    CLI::App* evaluate = app.add_subcommand(
        "evaluate",
        "Run the full experiment: split, fit, select thresholds, report");
    evaluate->add_option("--scenario", scenario_path,
                         "Scenario file (defaults when omitted)");
    evaluate->add_option("--data", data_path,
                         "Dataset CSV to evaluate instead of synthesizing");
    evaluate->add_option("--out", out_path,
                         "Report file (stdout when omitted)");
    evaluate
        ->add_option("--features", flags.features, "Comma-separated features")
        ->capture_default_str();
    evaluate->add_option("--window", flags.window, "Range-variance window")
        ->capture_default_str();
    add_estimator_flag(evaluate, flags.estimator);
    evaluate->add_option("--seed", split_seed, "Split seed")
        ->capture_default_str();
    evaluate
        ->add_option("--train-fraction", train_fraction, "Training share")
        ->capture_default_str();
    evaluate
        ->add_option("--val-fraction", val_fraction, "Validation share")
        ->capture_default_str();
    evaluate->add_option("--nb-model", nb_out, "Save the naive Bayes model");
    evaluate->add_option("--gd-model", gd_out, "Save the GD anomaly model");
    evaluate->add_option("--ggd-model", ggd_out, "Save the GGD anomaly model");

    CLI::App* plotdata = app.add_subcommand(
        "plotdata", "Histogram plus fitted GD/GGD curves for one feature");
    plotdata->add_option("--in", in_path, "Feature CSV")->required();
    plotdata->add_option("--feature", feature, "Feature column to plot")
        ->capture_default_str();
    plotdata->add_option("--out", out_path, "Plot data file to write")
        ->required();
    plotdata->add_option("--bins", bins, "Histogram bin count")
        ->capture_default_str();
    plotdata
        ->add_option("--label", label_filter,
                     "Restrict to one class: 0 (LoS), 1 (NLoS) or all")
        ->check(CLI::IsMember({"0", "1", "all"}))
        ->capture_default_str();
    add_estimator_flag(plotdata, flags.estimator);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed())
            return run_simulate(scenario_path, out_path, seed_override);
        if (features->parsed())
            return run_features(in_path, out_path, flags);
        if (fit->parsed())
            return run_fit(in_path, out_path, family, flags,
                           epsilon_opt->count() > 0
                               ? std::optional<double>(epsilon_flag)
                               : std::nullopt);
        if (train_nb->parsed()) return run_train_nb(in_path, out_path, flags);
        if (classify->parsed())
            return run_classify(model_path, in_path, out_path);
        if (evaluate->parsed())
            return run_evaluate(scenario_path, data_path, out_path, flags,
                                split_seed, train_fraction, val_fraction,
                                nb_out, gd_out, ggd_out);
        if (plotdata->parsed())
            return run_plotdata(in_path, feature, out_path, bins, label_filter,
                                flags.estimator);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const format_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const degenerate_fit_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const state_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const detection_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
