#include "uwbad/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "uwbad/distributions.hpp"
#include "uwbad/errors.hpp"

namespace uwbad::io {

namespace {

constexpr std::string_view kDatasetHeader =
    "index,true_distance_m,estimated_distance_m,fp_amp1,fp_amp2,fp_amp3,"
    "cir_power,preamble_count,label";
constexpr std::string_view kModelMagic = "uwbad-model";
constexpr int kModelVersion = 1;

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw argument_error("cannot write " + path);
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(text.substr(start));
            return fields;
        }
        fields.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view text, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw parse_error("bad number '" + std::string(text) + "'", line);
    return value;
}

template <typename T>
T parse_unsigned(std::string_view text, std::size_t line) {
    T value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw parse_error("bad count '" + std::string(text) + "'", line);
    return value;
}

std::string_view mode_name(EstimatorMode mode) {
    return mode == EstimatorMode::PaperLiteral ? "paper-literal" : "standard";
}

EstimatorMode mode_from_name(std::string_view name, std::size_t line) {
    if (name == "standard") return EstimatorMode::Standard;
    if (name == "paper-literal") return EstimatorMode::PaperLiteral;
    throw parse_error("unknown estimator mode '" + std::string(name) + "'",
                      line);
}

std::string_view family_name(DensityFamily family) {
    return family == DensityFamily::GGD ? "ggd" : "gd";
}

DensityFamily family_from_name(std::string_view name, std::size_t line) {
    if (name == "gd") return DensityFamily::GD;
    if (name == "ggd") return DensityFamily::GGD;
    throw parse_error("unknown density family '" + std::string(name) + "'",
                      line);
}

std::string join_features(const std::vector<Feature>& features) {
    std::string out;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (i > 0) out += ',';
        out += feature_name(features[i]);
    }
    return out;
}

std::vector<Feature> features_from_list(std::string_view list,
                                        std::size_t line) {
    std::vector<Feature> features;
    for (std::string_view name : split(list, ',')) {
        try {
            features.push_back(feature_from_name(name));
        } catch (const argument_error&) {
            throw parse_error("unknown feature '" + std::string(name) + "'",
                              line);
        }
    }
    return features;
}

// Reads "key value" lines in a fixed order.
struct LineReader {
    std::istream& in;
    std::size_t lineno = 0;

    bool next(std::string& line) {
        if (!std::getline(in, line)) return false;
        ++lineno;
        strip_cr(line);
        return true;
    }

    std::string expect(std::string_view key) {
        std::string line;
        if (!next(line))
            throw format_error("truncated file: missing '" + std::string(key) +
                               "' line");
        const std::string prefix = std::string(key) + ' ';
        if (line.rfind(prefix, 0) != 0)
            throw parse_error("expected '" + std::string(key) + "' line",
                              lineno);
        return line.substr(prefix.size());
    }
};

void write_model_preamble(std::ostream& out, std::string_view kind,
                          EstimatorMode mode, std::size_t window,
                          const std::vector<Feature>& features) {
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "kind " << kind << '\n';
    out << "mode " << mode_name(mode) << '\n';
    out << "window " << window << '\n';
    out << "features " << join_features(features) << '\n';
}

std::vector<double> parse_param_line(LineReader& reader, std::size_t index,
                                     std::size_t count) {
    const std::string value = reader.expect("param");
    const std::vector<std::string_view> tokens = split(value, ' ');
    if (tokens.size() != count + 1)
        throw parse_error("malformed param line", reader.lineno);
    if (parse_unsigned<std::size_t>(tokens[0], reader.lineno) != index)
        throw parse_error("param lines out of order", reader.lineno);
    std::vector<double> values;
    for (std::size_t i = 1; i < tokens.size(); ++i)
        values.push_back(parse_double(tokens[i], reader.lineno));
    return values;
}

void expect_end(LineReader& reader) {
    std::string line;
    while (reader.next(line)) {
        if (!line.empty())
            throw parse_error("unexpected trailing content", reader.lineno);
    }
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

Dataset load_dataset(const std::string& path, const UwbConfig& config) {
    std::ifstream in = open_in(path);
    LineReader reader{in};

    std::string line;
    if (!reader.next(line))
        throw format_error("empty dataset file: " + path);
    if (line != kDatasetHeader)
        throw format_error("unexpected dataset header in " + path);

    Dataset out;
    out.config = config;
    while (reader.next(line)) {
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split(line, ',');
        if (fields.size() != 9)
            throw parse_error("expected 9 fields", reader.lineno);
        RangingSample s;
        s.index = parse_unsigned<std::size_t>(fields[0], reader.lineno);
        if (!fields[1].empty())
            s.true_distance = parse_double(fields[1], reader.lineno);
        s.estimated_distance = parse_double(fields[2], reader.lineno);
        s.fp_amp1 = parse_double(fields[3], reader.lineno);
        s.fp_amp2 = parse_double(fields[4], reader.lineno);
        s.fp_amp3 = parse_double(fields[5], reader.lineno);
        s.cir_power = parse_double(fields[6], reader.lineno);
        s.preamble_count = parse_unsigned<std::uint32_t>(fields[7], reader.lineno);
        if (!fields[8].empty()) {
            if (fields[8] == "0")
                s.label = ClassLabel::LoS;
            else if (fields[8] == "1")
                s.label = ClassLabel::NLoS;
            else
                throw parse_error("label must be 0, 1 or empty", reader.lineno);
        }
        out.samples.push_back(s);
    }
    return out;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out = open_out(path);
    out << kDatasetHeader << '\n';
    for (const RangingSample& s : dataset.samples) {
        out << s.index << ',';
        if (s.true_distance) out << format_double(*s.true_distance);
        out << ',' << format_double(s.estimated_distance) << ','
            << format_double(s.fp_amp1) << ',' << format_double(s.fp_amp2)
            << ',' << format_double(s.fp_amp3) << ','
            << format_double(s.cir_power) << ',' << s.preamble_count << ',';
        if (s.label) out << static_cast<int>(*s.label);
        out << '\n';
    }
    if (!out) throw argument_error("failed writing " + path);
}

FeatureMatrix load_feature_matrix(const std::string& path) {
    std::ifstream in = open_in(path);
    LineReader reader{in};

    std::string line;
    if (!reader.next(line))
        throw format_error("empty feature file: " + path);
    const std::vector<std::string_view> header = split(line, ',');
    if (header.size() < 3 || header[0] != "index" || header[1] != "label")
        throw format_error("unexpected feature header in " + path);

    FeatureMatrix matrix;
    for (std::size_t i = 2; i < header.size(); ++i) {
        try {
            matrix.features.push_back(feature_from_name(header[i]));
        } catch (const argument_error&) {
            throw format_error("unknown feature column '" +
                               std::string(header[i]) + "' in " + path);
        }
    }

    while (reader.next(line)) {
        if (line.empty()) continue;
        const std::vector<std::string_view> fields = split(line, ',');
        if (fields.size() != matrix.features.size() + 2)
            throw parse_error("wrong field count", reader.lineno);
        matrix.sample_indices.push_back(
            parse_unsigned<std::size_t>(fields[0], reader.lineno));
        if (fields[1].empty()) {
            matrix.labels.push_back(std::nullopt);
        } else if (fields[1] == "0") {
            matrix.labels.push_back(ClassLabel::LoS);
        } else if (fields[1] == "1") {
            matrix.labels.push_back(ClassLabel::NLoS);
        } else {
            throw parse_error("label must be 0, 1 or empty", reader.lineno);
        }
        std::vector<double> row;
        row.reserve(matrix.features.size());
        for (std::size_t i = 2; i < fields.size(); ++i)
            row.push_back(parse_double(fields[i], reader.lineno));
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

void save_feature_matrix(const FeatureMatrix& matrix, const std::string& path) {
    if (matrix.features.empty())
        throw argument_error("save_feature_matrix: no feature columns");
    if (matrix.labels.size() != matrix.row_count() ||
        matrix.sample_indices.size() != matrix.row_count())
        throw argument_error("save_feature_matrix: ragged matrix");

    std::ofstream out = open_out(path);
    out << "index,label";
    for (Feature f : matrix.features) out << ',' << feature_name(f);
    out << '\n';
    for (std::size_t i = 0; i < matrix.row_count(); ++i) {
        if (matrix.rows[i].size() != matrix.features.size())
            throw argument_error("save_feature_matrix: ragged matrix");
        out << matrix.sample_indices[i] << ',';
        if (matrix.labels[i]) out << static_cast<int>(*matrix.labels[i]);
        for (double v : matrix.rows[i]) out << ',' << format_double(v);
        out << '\n';
    }
    if (!out) throw argument_error("failed writing " + path);
}

void save_model(const AnomalyModel& model, const std::string& path) {
    const std::size_t params =
        model.family == DensityFamily::GD ? model.gd.size() : model.ggd.size();
    if (model.features.empty() || params != model.features.size())
        throw argument_error("save_model: incomplete anomaly model");

    std::ofstream out = open_out(path);
    write_model_preamble(out, "anomaly", model.mode, model.window,
                         model.features);
    out << "family " << family_name(model.family) << '\n';
    out << "epsilon "
        << (model.epsilon ? format_double(*model.epsilon) : "none") << '\n';
    for (std::size_t f = 0; f < model.features.size(); ++f) {
        out << "param " << f;
        if (model.family == DensityFamily::GD)
            out << ' ' << format_double(model.gd[f].mu) << ' '
                << format_double(model.gd[f].sigma2);
        else
            out << ' ' << format_double(model.ggd[f].mu) << ' '
                << format_double(model.ggd[f].alpha) << ' '
                << format_double(model.ggd[f].beta);
        out << '\n';
    }
    if (!out) throw argument_error("failed writing " + path);
}

void save_model(const NbModel& model, const std::string& path) {
    if (model.features.empty() || model.params.size() != model.features.size())
        throw argument_error("save_model: incomplete naive Bayes model");

    std::ofstream out = open_out(path);
    write_model_preamble(out, "nb", model.mode, model.window, model.features);
    out << "priors " << format_double(model.priors[0]) << ' '
        << format_double(model.priors[1]) << '\n';
    for (std::size_t f = 0; f < model.features.size(); ++f) {
        out << "param " << f << ' ' << format_double(model.params[f][0].mu)
            << ' ' << format_double(model.params[f][0].sigma2) << ' '
            << format_double(model.params[f][1].mu) << ' '
            << format_double(model.params[f][1].sigma2) << '\n';
    }
    if (!out) throw argument_error("failed writing " + path);
}

std::variant<AnomalyModel, NbModel> load_model(const std::string& path) {
    std::ifstream in = open_in(path);
    LineReader reader{in};

    std::string line;
    if (!reader.next(line))
        throw format_error("empty model file: " + path);
    const std::vector<std::string_view> magic = split(line, ' ');
    if (magic.size() != 2 || magic[0] != kModelMagic)
        throw format_error("not a model file: " + path);
    if (parse_unsigned<int>(magic[1], reader.lineno) != kModelVersion)
        throw format_error("unsupported model version in " + path);

    const std::string kind = reader.expect("kind");
    const EstimatorMode mode =
        mode_from_name(reader.expect("mode"), reader.lineno);
    const std::size_t window =
        parse_unsigned<std::size_t>(reader.expect("window"), reader.lineno);
    const std::vector<Feature> features =
        features_from_list(reader.expect("features"), reader.lineno);
    if (features.empty())
        throw parse_error("model has no features", reader.lineno);

    if (kind == "anomaly") {
        AnomalyModel model;
        model.mode = mode;
        model.window = window;
        model.features = features;
        model.family = family_from_name(reader.expect("family"), reader.lineno);
        const std::string epsilon = reader.expect("epsilon");
        if (epsilon != "none")
            model.epsilon = parse_double(epsilon, reader.lineno);
        for (std::size_t f = 0; f < model.features.size(); ++f) {
            if (model.family == DensityFamily::GD) {
                const std::vector<double> v = parse_param_line(reader, f, 2);
                model.gd.push_back({v[0], v[1]});
            } else {
                const std::vector<double> v = parse_param_line(reader, f, 3);
                model.ggd.push_back({v[0], v[1], v[2]});
            }
        }
        expect_end(reader);
        return model;
    }
    if (kind == "nb") {
        NbModel model;
        model.mode = mode;
        model.window = window;
        model.features = features;
        const std::string priors = reader.expect("priors");
        const std::vector<std::string_view> tokens = split(priors, ' ');
        if (tokens.size() != 2)
            throw parse_error("malformed priors line", reader.lineno);
        model.priors = {parse_double(tokens[0], reader.lineno),
                        parse_double(tokens[1], reader.lineno)};
        for (std::size_t f = 0; f < model.features.size(); ++f) {
            const std::vector<double> v = parse_param_line(reader, f, 4);
            model.params.push_back(
                {GaussianParams{v[0], v[1]}, GaussianParams{v[2], v[3]}});
        }
        expect_end(reader);
        return model;
    }
    throw format_error("unknown model kind '" + kind + "' in " + path);
}

void emit_plot_data(std::span<const double> samples, const GaussianParams& gd,
                    const GgdParams& ggd, std::size_t bins,
                    const std::string& path) {
    if (samples.size() < 10)
        throw argument_error("emit_plot_data: need at least 10 samples");
    if (bins < 5)
        throw argument_error("emit_plot_data: need at least 5 bins");
    const auto [lo_it, hi_it] =
        std::minmax_element(samples.begin(), samples.end());
    if (!(*hi_it > *lo_it))
        throw argument_error("emit_plot_data: data range is zero");

    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples) {
        const auto b = static_cast<std::size_t>((x - lo) / width);
        ++counts[std::min(b, bins - 1)];
    }

    std::ofstream out = open_out(path);
    out << "histogram " << bins << ' ' << format_double(width) << '\n';
    const double scale = static_cast<double>(samples.size()) * width;
    for (std::size_t b = 0; b < bins; ++b) {
        out << format_double(lo + (static_cast<double>(b) + 0.5) * width)
            << ' ' << format_double(static_cast<double>(counts[b]) / scale)
            << '\n';
    }

    const double sigma =
        std::max(std::sqrt(gd.sigma2),
                 std::sqrt(moments_from_params(ggd.alpha, ggd.beta).first));
    const double x0 = lo - 3.0 * sigma;
    const double x1 = hi + 3.0 * sigma;
    constexpr std::size_t kPoints = 512;
    out << "curves " << kPoints << '\n';
    for (std::size_t i = 0; i < kPoints; ++i) {
        const double x = x0 + (x1 - x0) * static_cast<double>(i) /
                                  static_cast<double>(kPoints - 1);
        out << format_double(x) << ' ' << format_double(gd_pdf(x, gd)) << ' '
            << format_double(ggd_pdf(x, ggd)) << '\n';
    }
    if (!out) throw argument_error("failed writing " + path);
}

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::string render_draw(const sim::FeatureDraw& draw) {
    std::string out = std::string(family_name(draw.family)) + ' ' +
                      format_double(draw.mu) + ' ' + format_double(draw.a);
    if (draw.family == DensityFamily::GGD) out += ' ' + format_double(draw.b);
    return out;
}

sim::FeatureDraw parse_draw(std::string_view value, std::size_t line) {
    const std::vector<std::string_view> tokens = split(value, ' ');
    if (tokens.size() < 3)
        throw parse_error("malformed density draw", line);
    sim::FeatureDraw draw;
    draw.family = family_from_name(tokens[0], line);
    const std::size_t expected = draw.family == DensityFamily::GGD ? 4 : 3;
    if (tokens.size() != expected)
        throw parse_error("malformed density draw", line);
    draw.mu = parse_double(tokens[1], line);
    draw.a = parse_double(tokens[2], line);
    if (draw.family == DensityFamily::GGD)
        draw.b = parse_double(tokens[3], line);
    return draw;
}

} // namespace

sim::ScenarioSpec load_scenario(const std::string& path) {
    std::ifstream in = open_in(path);
    LineReader reader{in};

    sim::ScenarioSpec scenario;
    std::vector<std::string> seen;
    std::string line;
    while (reader.next(line)) {
        if (line.empty() || line.front() == '#') continue;
        const std::size_t pos = line.find(' ');
        if (pos == std::string::npos)
            throw parse_error("expected 'key value'", reader.lineno);
        const std::string key = line.substr(0, pos);
        const std::string value = line.substr(pos + 1);
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw format_error("duplicate scenario key '" + key + "'");
        seen.push_back(key);

        if (key == "seed") {
            scenario.seed =
                parse_unsigned<std::uint64_t>(value, reader.lineno);
        } else if (key == "n_los") {
            scenario.n_los =
                parse_unsigned<std::size_t>(value, reader.lineno);
        } else if (key == "n_nlos") {
            scenario.n_nlos =
                parse_unsigned<std::size_t>(value, reader.lineno);
        } else if (key == "true_distances_m") {
            scenario.true_distances_m.clear();
            for (std::string_view item : split(value, ','))
                scenario.true_distances_m.push_back(
                    parse_double(item, reader.lineno));
        } else if (key == "los_error_alpha") {
            scenario.los_error_alpha = parse_double(value, reader.lineno);
        } else if (key == "los_error_beta") {
            scenario.los_error_beta = parse_double(value, reader.lineno);
        } else if (key == "nlos_bias_mean") {
            scenario.nlos_bias_mean = parse_double(value, reader.lineno);
        } else if (key == "los_fp_power") {
            scenario.los.fp_power_dbm = parse_draw(value, reader.lineno);
        } else if (key == "los_power_difference") {
            scenario.los.power_difference_db = parse_draw(value, reader.lineno);
        } else if (key == "los_preamble_count") {
            scenario.los.preamble_count =
                parse_unsigned<std::uint32_t>(value, reader.lineno);
        } else if (key == "nlos_fp_power") {
            scenario.nlos.fp_power_dbm = parse_draw(value, reader.lineno);
        } else if (key == "nlos_power_difference") {
            scenario.nlos.power_difference_db =
                parse_draw(value, reader.lineno);
        } else if (key == "nlos_preamble_count") {
            scenario.nlos.preamble_count =
                parse_unsigned<std::uint32_t>(value, reader.lineno);
        } else if (key == "data_rate_mbps") {
            scenario.config.data_rate_mbps = parse_double(value, reader.lineno);
        } else if (key == "center_frequency_mhz") {
            scenario.config.center_frequency_mhz =
                parse_double(value, reader.lineno);
        } else if (key == "bandwidth_mhz") {
            scenario.config.bandwidth_mhz = parse_double(value, reader.lineno);
        } else if (key == "channel") {
            scenario.config.channel =
                static_cast<int>(parse_unsigned<unsigned>(value, reader.lineno));
        } else if (key == "prf_mhz") {
            scenario.config.prf_mhz = parse_double(value, reader.lineno);
        } else if (key == "power_offset_a") {
            scenario.config.power_offset_a = parse_double(value, reader.lineno);
        } else {
            throw format_error("unknown scenario key '" + key + "'");
        }
    }
    return scenario;
}

void save_scenario(const sim::ScenarioSpec& scenario, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "seed " << scenario.seed << '\n';
    out << "n_los " << scenario.n_los << '\n';
    out << "n_nlos " << scenario.n_nlos << '\n';
    out << "true_distances_m " << join_doubles(scenario.true_distances_m)
        << '\n';
    out << "los_error_alpha " << format_double(scenario.los_error_alpha)
        << '\n';
    out << "los_error_beta " << format_double(scenario.los_error_beta) << '\n';
    out << "nlos_bias_mean " << format_double(scenario.nlos_bias_mean) << '\n';
    out << "los_fp_power " << render_draw(scenario.los.fp_power_dbm) << '\n';
    out << "los_power_difference "
        << render_draw(scenario.los.power_difference_db) << '\n';
    out << "los_preamble_count " << scenario.los.preamble_count << '\n';
    out << "nlos_fp_power " << render_draw(scenario.nlos.fp_power_dbm) << '\n';
    out << "nlos_power_difference "
        << render_draw(scenario.nlos.power_difference_db) << '\n';
    out << "nlos_preamble_count " << scenario.nlos.preamble_count << '\n';
    out << "data_rate_mbps " << format_double(scenario.config.data_rate_mbps)
        << '\n';
    out << "center_frequency_mhz "
        << format_double(scenario.config.center_frequency_mhz) << '\n';
    out << "bandwidth_mhz " << format_double(scenario.config.bandwidth_mhz)
        << '\n';
    out << "channel " << scenario.config.channel << '\n';
    out << "prf_mhz " << format_double(scenario.config.prf_mhz) << '\n';
    out << "power_offset_a " << format_double(scenario.config.power_offset_a)
        << '\n';
    if (!out) throw argument_error("failed writing " + path);
}

std::string render_report(const ExperimentReport& report) {
    std::ostringstream out;
    out << "report_version 1\n";
    out << "timestamp " << report.timestamp << '\n';
    out << "runtime_ms " << format_double(report.runtime_ms) << '\n';
    out << "n_samples " << report.n_samples << '\n';
    out << "n_train " << report.train_rows.size() << '\n';
    out << "n_validation " << report.validation_rows.size() << '\n';
    out << "n_test " << report.test_rows.size() << '\n';
    out << "split_seed " << report.config.seed << '\n';
    out << "window " << report.config.window << '\n';
    out << "mode " << mode_name(report.config.mode) << '\n';
    out << "features " << join_features(report.config.features) << '\n';
    out << "train_fraction " << format_double(report.config.train_fraction)
        << '\n';
    out << "val_fraction " << format_double(report.config.val_fraction)
        << '\n';
    if (report.config.dataset_path) {
        out << "dataset " << *report.config.dataset_path << '\n';
    } else {
        out << "scenario_seed " << report.scenario.seed << '\n';
        out << "scenario_n_los " << report.scenario.n_los << '\n';
        out << "scenario_n_nlos " << report.scenario.n_nlos << '\n';
    }

    out << "nb_prior_los " << format_double(report.nb.priors[0]) << '\n';
    out << "nb_prior_nlos " << format_double(report.nb.priors[1]) << '\n';
    for (std::size_t f = 0;
         f < report.nb.features.size() && f < report.nb.params.size(); ++f) {
        const std::string_view name = feature_name(report.nb.features[f]);
        out << "nb_" << name << "_los "
            << format_double(report.nb.params[f][0].mu) << ' '
            << format_double(report.nb.params[f][0].sigma2) << '\n';
        out << "nb_" << name << "_nlos "
            << format_double(report.nb.params[f][1].mu) << ' '
            << format_double(report.nb.params[f][1].sigma2) << '\n';
    }
    for (std::size_t f = 0;
         f < report.gd.features.size() && f < report.gd.gd.size(); ++f) {
        out << "gd_" << feature_name(report.gd.features[f]) << ' '
            << format_double(report.gd.gd[f].mu) << ' '
            << format_double(report.gd.gd[f].sigma2) << '\n';
    }
    for (std::size_t f = 0;
         f < report.ggd.features.size() && f < report.ggd.ggd.size(); ++f) {
        out << "ggd_" << feature_name(report.ggd.features[f]) << ' '
            << format_double(report.ggd.ggd[f].mu) << ' '
            << format_double(report.ggd.ggd[f].alpha) << ' '
            << format_double(report.ggd.ggd[f].beta) << '\n';
    }

    for (const ModelResult& r : report.results) {
        out << r.name << "_tp " << r.cm.tp << '\n';
        out << r.name << "_fp " << r.cm.fp << '\n';
        out << r.name << "_fn " << r.cm.fn << '\n';
        out << r.name << "_tn " << r.cm.tn << '\n';
        out << r.name << "_accuracy " << format_double(r.test_metrics.accuracy)
            << '\n';
        out << r.name << "_precision "
            << format_double(r.test_metrics.precision) << '\n';
        out << r.name << "_recall " << format_double(r.test_metrics.recall)
            << '\n';
        out << r.name << "_f1 " << format_double(r.test_metrics.f1) << '\n';
        if (r.epsilon)
            out << r.name << "_epsilon " << format_double(*r.epsilon) << '\n';
        if (r.validation_f1)
            out << r.name << "_validation_f1 "
                << format_double(*r.validation_f1) << '\n';
        if (r.mean_loglik_test_los)
            out << r.name << "_mean_loglik_test_los "
                << format_double(*r.mean_loglik_test_los) << '\n';
    }
    return out.str();
}

void save_report(const ExperimentReport& report, const std::string& path) {
    std::ofstream out = open_out(path);
    out << render_report(report);
    if (!out) throw argument_error("failed writing " + path);
}

} // namespace uwbad::io
