// ogtt - OGTT index estimation, applicability filtering and classification.
//
// Exit codes: 0 success, 1 input/schema error, 2 pipeline error, 3 I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ogtt/ada.hpp"
#include "ogtt/applicability.hpp"
#include "ogtt/config.hpp"
#include "ogtt/csv.hpp"
#include "ogtt/estimation.hpp"
#include "ogtt/pipeline.hpp"
#include "ogtt/plot.hpp"
#include "ogtt/report.hpp"
#include "ogtt/svm.hpp"
#include "ogtt/synth.hpp"
#include "json.hpp"

namespace {

using namespace ogtt;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool strict = false;
    unsigned threads = 0;
};

struct Settings {
    FitConfig fit;
    ApplicabilityThresholds thresholds;
    double svm_c = kDefaultSvmC;
};

Settings load_settings(const GlobalOptions& g) {
    Settings s;
    if (!g.config_path.empty()) {
        KeyValues kv = parse_key_values(read_text_file(g.config_path));
        s.fit = take_fit_keys(kv);
        s.thresholds = take_applicability_keys(kv);
        if (auto it = kv.find("svm_c"); it != kv.end()) {
            s.svm_c = parse_double(it->second, "svm_c");
            kv.erase(it);
        }
        if (!kv.empty()) throw InputError("unknown config key '" + kv.begin()->first + "'");
    }
    if (g.seed) s.fit.seed = *g.seed;
    return s;
}

std::vector<OgttRecord> load_records(const std::string& path, const GlobalOptions& g) {
    IngestResult in = ingest_csv(path, g.strict);
    for (const auto& e : in.errors) std::cerr << path << ": " << describe(e) << '\n';
    if (in.records.empty()) throw InputError(path + ": no valid records");
    return in.records;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_text_file(path, content);
    }
}

PipelineOptions pipeline_options(const Settings& s, const GlobalOptions& g, const std::string& model_path, bool filter) {
    PipelineOptions o;
    o.fit = s.fit;
    o.thresholds = s.thresholds;
    o.filter = filter;
    o.threads = g.threads;
    if (model_path.empty()) o.svm = TrainMode{s.svm_c};
    else o.svm = LoadMode{model_from_json(read_text_file(model_path))};
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"OGTT glucose-index estimation and normo/dysglycemia classification"};
    app.require_subcommand(1);
    GlobalOptions g;
    std::uint64_t seed_value = 0;
    app.add_option("--config", g.config_path, "key = value settings file")->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed_value, "seed for the fitter and the synthetic generator");
    app.add_flag("--strict", g.strict, "fail on the first malformed CSV row");
    app.add_option("--threads", g.threads, "worker threads for fitting (0 = all cores)");

    std::string input;
    std::string output;
    std::string model_path;
    std::string svg_path;
    std::string plot_csv_path;
    std::string format = "svg";
    bool filter = false;
    std::optional<double> c_override;
    std::optional<double> noise_sigma;
    std::string truth_path;

    auto* fit_cmd = app.add_subcommand("fit", "fit Ackerman parameters to every record");
    fit_cmd->add_option("input", input, "cohort CSV")->required();
    fit_cmd->add_option("-o,--output", output, "JSON output (default stdout)");

    auto* ada_cmd = app.add_subcommand("ada", "ADA category of every record");
    ada_cmd->add_option("input", input, "cohort CSV")->required();
    ada_cmd->add_option("-o,--output", output, "CSV output (default stdout)");

    auto* filter_cmd = app.add_subcommand("filter", "model-applicability verdicts");
    filter_cmd->add_option("input", input, "cohort CSV")->required();
    filter_cmd->add_option("-o,--output", output, "JSON output (default stdout)");

    auto* train_cmd = app.add_subcommand("train", "train the linear classifier");
    train_cmd->add_option("input", input, "cohort CSV")->required();
    train_cmd->add_option("-c,--c", c_override, "regularization constant");
    train_cmd->add_flag("--filter", filter, "train on applicable records only");
    train_cmd->add_option("-o,--output", output, "model JSON (default stdout)");

    auto* predict_cmd = app.add_subcommand("predict", "classify records with a saved model");
    predict_cmd->add_option("input", input, "cohort CSV")->required();
    predict_cmd->add_option("-m,--model", model_path, "model JSON")->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("-o,--output", output, "CSV output (default stdout)");

    auto* report_cmd = app.add_subcommand("report", "full pipeline report");
    report_cmd->add_option("input", input, "cohort CSV")->required();
    report_cmd->add_option("-m,--model", model_path, "use a saved model instead of training")->check(CLI::ExistingFile);
    report_cmd->add_option("-c,--c", c_override, "regularization constant when training");
    report_cmd->add_flag("--filter", filter, "evaluate applicable records only");
    report_cmd->add_option("-o,--output", output, "report JSON (default stdout)");
    report_cmd->add_option("--svg", svg_path, "also write the scatter plot as SVG");
    report_cmd->add_option("--plot-csv", plot_csv_path, "also write plot data as CSV");

    auto* synth_cmd = app.add_subcommand("synth", "write the synthetic reference cohort");
    synth_cmd->add_option("--noise", noise_sigma, "Gaussian noise sigma, mg/dl (default 2)");
    synth_cmd->add_option("-o,--output", output, "cohort CSV (default stdout)");
    synth_cmd->add_option("--truth", truth_path, "ground-truth parameters JSON");

    auto* track_cmd = app.add_subcommand("track", "index trajectories of patients with repeat tests");
    track_cmd->add_option("input", input, "cohort CSV (seq column orders visits)")->required();
    track_cmd->add_option("-m,--model", model_path, "model JSON for signed distances")->check(CLI::ExistingFile);
    track_cmd->add_option("-o,--output", output, "JSON output (default stdout)");

    auto* plot_cmd = app.add_subcommand("plot", "render a saved report");
    plot_cmd->add_option("report", input, "report JSON")->required()->check(CLI::ExistingFile);
    plot_cmd->add_option("-o,--output", output, "output file")->required();
    plot_cmd->add_option("--format", format, "svg or csv")->check(CLI::IsMember({"svg", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    if (*seed_opt) g.seed = seed_value;

    try {
        const Settings settings = load_settings(g);

        if (app.got_subcommand(fit_cmd)) {
            const auto records = load_records(input, g);
            const auto fits = fit_all(records, settings.fit, g.threads);
            write_output(output, fits_to_json(records, fits));
        } else if (app.got_subcommand(ada_cmd)) {
            const auto records = load_records(input, g);
            std::ostringstream out;
            out << "patient_id,category,label\n";
            for (const auto& r : records) {
                const AdaLabel l = classify_record(r);
                out << r.patient_id << ',' << to_string(l.category) << ',' << sign_of(l.binary) << '\n';
            }
            write_output(output, out.str());
        } else if (app.got_subcommand(filter_cmd)) {
            const auto records = load_records(input, g);
            const auto fits = fit_all(records, settings.fit, g.threads);
            std::vector<FittedRecord> fitted;
            for (std::size_t i = 0; i < records.size(); ++i) fitted.push_back({records[i], fits[i]});
            const FilterResult fr = filter_population(fitted, settings.thresholds);
            nlohmann::ordered_json j;
            j["kept"] = fr.kept.size();
            j["rejected"] = fr.rejected.size();
            j["kept_fraction"] = round_sig9(fr.kept_fraction);
            nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < records.size(); ++i) {
                const auto v = check_applicability(records[i], fits[i], settings.thresholds);
                verdicts.push_back({{"patient_id", records[i].patient_id},
                                    {"applicable", v.applicable},
                                    {"omega_ok", v.omega_ok},
                                    {"condition", std::string(to_string(v.condition))},
                                    {"delta_g", round_sig9(v.delta_g)},
                                    {"error_abs", round_sig9(v.error_abs)}});
            }
            j["verdicts"] = verdicts;
            write_output(output, j.dump(2) + "\n");
        } else if (app.got_subcommand(train_cmd)) {
            const auto records = load_records(input, g);
            PipelineOptions o = pipeline_options(settings, g, {}, filter);
            if (c_override) o.svm = TrainMode{*c_override};
            const CohortReport report = run_pipeline(records, o);
            write_output(output, model_to_json(report.model));
        } else if (app.got_subcommand(predict_cmd) || app.got_subcommand(report_cmd)) {
            const auto records = load_records(input, g);
            PipelineOptions o = pipeline_options(settings, g, model_path, filter);
            if (c_override && model_path.empty()) o.svm = TrainMode{*c_override};
            const CohortReport report = run_pipeline(records, o);
            if (app.got_subcommand(predict_cmd)) {
                write_output(output, render_plot_csv(report));
            } else {
                write_output(output, report_to_json(report));
                if (!svg_path.empty()) emit_plot(report, svg_path, PlotFormat::Svg);
                if (!plot_csv_path.empty()) emit_plot(report, plot_csv_path, PlotFormat::Csv);
            }
        } else if (app.got_subcommand(synth_cmd)) {
            const std::uint64_t seed = g.seed.value_or(0);
            std::vector<SyntheticRecord> cohort;
            if (noise_sigma) {
                const NoiseSpec noise{*noise_sigma > 0.0 ? NoiseKind::Gaussian : NoiseKind::None, *noise_sigma,
                                      mix_seed(seed, 0xada)};
                cohort = generate_cohort(reference_clusters(), noise, seed);
            } else {
                cohort = default_reference_cohort(seed);
            }
            write_output(output, to_csv(records_of(cohort)));
            if (!truth_path.empty()) write_text_file(truth_path, ground_truth_json(cohort));
        } else if (app.got_subcommand(track_cmd)) {
            const auto records = load_records(input, g);
            std::optional<SvmModel> model;
            if (!model_path.empty()) model = model_from_json(read_text_file(model_path));
            const TrackResult result = track(records, settings.fit, model);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            write_output(output, trajectories_to_json(result));
        } else if (app.got_subcommand(plot_cmd)) {
            const CohortReport report = report_from_json(read_text_file(input));
            emit_plot(report, output, format == "csv" ? PlotFormat::Csv : PlotFormat::Svg);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
