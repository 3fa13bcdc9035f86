// cliquescan: batch surveillance tool that flags groups of investors whose
// signed-order-volume series move together across multiple trading days.
//
// Subcommands:
//   detect           full pipeline over day-ordered order files
//   sweep-window     correlation of one pair vs. aggregation window size
//   sweep-threshold  component count vs. correlation threshold
//   stats            length CDF of aggregated series
//   synth            synthetic multi-day market with planted cliques
//   score            precision/recall of a report against ground truth

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collusion/clock.hpp"
#include "collusion/pipeline.hpp"
#include "collusion/synth_eval.hpp"

namespace {

using collusion::RunConfig;

void add_pipeline_flags(CLI::App& cmd, RunConfig& config) {
    cmd.add_option("--window-seconds", config.window_seconds,
                   "Aggregation window width in seconds")
        ->capture_default_str();
    cmd.add_option("--min-length", config.min_length,
                   "Minimum aggregated series length to keep an investor")
        ->capture_default_str();
    cmd.add_option("--corr-threshold", config.corr_threshold,
                   "Daily graph edge threshold, in (0,1)")
        ->capture_default_str();
    cmd.add_option("--occurrence-threshold", config.occurrence_threshold,
                   "Minimum number of days an edge must recur")
        ->capture_default_str();
    cmd.add_option("--anchor", config.anchor, "Session anchor clock time HH:MM:SS")
        ->capture_default_str();
    cmd.add_flag("--keep-pre-anchor", config.keep_pre_anchor,
                 "Keep orders timestamped before the anchor instead of dropping them");
    cmd.add_option("--bad-row-tolerance", config.bad_row_tolerance,
                   "Malformed rows tolerated per file before aborting")
        ->capture_default_str();
}

std::string format_r(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::vector<collusion::SessionSpan> parse_sessions(const std::string& text) {
    std::vector<collusion::SessionSpan> sessions;
    std::stringstream stream(text);
    std::string span;
    while (std::getline(stream, span, ',')) {
        const auto dash = span.find('-');
        if (dash == std::string::npos) {
            throw std::invalid_argument("session span must be START-END: " + span);
        }
        sessions.push_back({collusion::parse_clock(span.substr(0, dash)),
                            collusion::parse_clock(span.substr(dash + 1))});
    }
    return sessions;
}

collusion::CliqueSpec parse_clique_spec(const std::string& text) {
    // SIZE[:LAG[:JITTER[:PARTICIPATION]]]
    collusion::CliqueSpec spec;
    std::stringstream stream(text);
    std::string field;
    int position = 0;
    while (std::getline(stream, field, ':')) {
        switch (position++) {
            case 0: spec.size = std::stoul(field); break;
            case 1: spec.lag_seconds = std::stoll(field); break;
            case 2: spec.volume_jitter = std::stod(field); break;
            case 3: spec.participation = std::stod(field); break;
            default: throw std::invalid_argument("too many clique fields: " + text);
        }
    }
    if (position == 0) throw std::invalid_argument("empty clique spec");
    return spec;
}

int run_detect(const RunConfig& config) {
    const auto result = collusion::run_pipeline(config);
    for (const auto& day : result.days) {
        std::cout << "day " << day.label << ": " << day.orders << " orders, "
                  << day.investors << " investors, " << day.eligible
                  << " eligible, " << day.edges << " edges\n";
    }
    std::cout << result.report.cliques.size() << " suspect clique(s)\n";
    for (const auto& clique : result.report.cliques) {
        std::cout << " ";
        for (const auto& member : clique.members) std::cout << " " << member;
        std::cout << "  (min occurrence " << clique.min_occurrence << ", mean "
                  << clique.mean_occurrence << ")\n";
    }
    if (config.emit.report) {
        std::cout << "report written to " << (config.out_dir / "report.json").string()
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Detects suspect collusive cliques in futures order flow by "
        "correlating signed-order-volume series and merging thresholded "
        "daily correlation graphs across days."};
    app.require_subcommand(1);

    RunConfig config;

    // detect
    auto* detect = app.add_subcommand("detect", "Run the full detection pipeline");
    std::vector<std::string> inputs;
    detect->add_option("files", inputs, "Order CSV files, one per day, day-ordered")
        ->required()
        ->check(CLI::ExistingFile);
    add_pipeline_flags(*detect, config);
    std::vector<std::string> emit_names;
    detect->add_option("--emit", emit_names,
                       "Artifacts to write: matrix, daily_dot, integrated_dot, "
                       "report, stats (default: report)")
        ->delimiter(',')
        ->check(CLI::IsMember(
            {"matrix", "daily_dot", "integrated_dot", "report", "stats"}));
    std::string out_dir = "out";
    detect->add_option("--out", out_dir, "Output directory")->capture_default_str();

    // sweep-window
    auto* sweep_window_cmd = app.add_subcommand(
        "sweep-window", "Correlation of one pair across window sizes");
    std::string sweep_input;
    std::string investor_a;
    std::string investor_b;
    std::vector<std::int64_t> sizes;
    std::string sweep_out;
    sweep_window_cmd->add_option("file", sweep_input, "Single-day order CSV")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_window_cmd->add_option("--investor-a", investor_a)->required();
    sweep_window_cmd->add_option("--investor-b", investor_b)->required();
    sweep_window_cmd
        ->add_option("--sizes", sizes, "Window sizes in seconds (comma separated)")
        ->delimiter(',')
        ->required();
    sweep_window_cmd->add_option("--out", sweep_out, "Output CSV (default stdout)");
    add_pipeline_flags(*sweep_window_cmd, config);

    // sweep-threshold
    auto* sweep_threshold_cmd = app.add_subcommand(
        "sweep-threshold", "Connected-component count across edge thresholds");
    std::string threshold_input;
    std::vector<double> thresholds;
    std::string threshold_out;
    sweep_threshold_cmd->add_option("file", threshold_input, "Single-day order CSV")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_threshold_cmd
        ->add_option("--thresholds", thresholds, "Thresholds in (0,1), comma separated")
        ->delimiter(',')
        ->required();
    sweep_threshold_cmd->add_option("--out", threshold_out, "Output CSV (default stdout)");
    add_pipeline_flags(*sweep_threshold_cmd, config);

    // stats
    auto* stats_cmd = app.add_subcommand(
        "stats", "Empirical CDF of aggregated series lengths");
    std::vector<std::string> stats_inputs;
    std::string stats_out;
    stats_cmd->add_option("files", stats_inputs, "Order CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    stats_cmd->add_option("--out", stats_out, "Output CSV (default stdout)");
    add_pipeline_flags(*stats_cmd, config);

    // synth
    auto* synth_cmd = app.add_subcommand(
        "synth", "Generate a synthetic market with planted cliques");
    collusion::SynthConfig synth;
    std::string synth_dir = "synth";
    std::vector<std::string> clique_specs;
    std::string sessions_text;
    synth_cmd->add_option("--out", synth_dir, "Output directory")->capture_default_str();
    synth_cmd->add_option("--seed", synth.rng_seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--days", synth.days, "Trading days")->capture_default_str();
    synth_cmd->add_option("--noise-traders", synth.n_noise_traders)
        ->capture_default_str();
    synth_cmd->add_option("--day-traders", synth.n_day_traders)->capture_default_str();
    synth_cmd
        ->add_option("--clique", clique_specs,
                     "Planted clique SIZE[:LAG[:JITTER[:PARTICIPATION]]]; repeatable "
                     "(default 2:10:0.1:1 3:10:0.1:1 6:10:0.1:1)")
        ->take_all();
    synth_cmd->add_option("--orders-mean", synth.orders_per_day_mean,
                          "Mean orders per active investor per day")
        ->capture_default_str();
    synth_cmd->add_option("--noise-orders-mean", synth.noise_orders_mean,
                          "Mean orders per noise trader per day")
        ->capture_default_str();
    synth_cmd->add_option("--sessions", sessions_text,
                          "Comma-separated HH:MM:SS-HH:MM:SS session spans");

    // score
    auto* score_cmd = app.add_subcommand(
        "score", "Score a clique report against planted ground truth");
    std::string report_path;
    std::string truth_path;
    score_cmd->add_option("--report", report_path, "report.json from detect")
        ->required()
        ->check(CLI::ExistingFile);
    score_cmd->add_option("--truth", truth_path, "truth.json from synth")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect) {
            config.input_files.assign(inputs.begin(), inputs.end());
            config.out_dir = out_dir;
            if (!emit_names.empty()) {
                config.emit = collusion::EmitFlags{false, false, false, false, false};
                for (const auto& name : emit_names) {
                    if (name == "matrix") config.emit.matrix = true;
                    if (name == "daily_dot") config.emit.daily_dot = true;
                    if (name == "integrated_dot") config.emit.integrated_dot = true;
                    if (name == "report") config.emit.report = true;
                    if (name == "stats") config.emit.stats = true;
                }
            }
            return run_detect(config);
        }

        if (*sweep_window_cmd) {
            config.input_files = {sweep_input};
            std::ostringstream csv;
            csv << "window_seconds,correlation\n";
            for (const auto& [size, r] :
                 collusion::sweep_window(config, investor_a, investor_b, sizes)) {
                csv << size << ',' << format_r(r) << '\n';
            }
            write_or_print(sweep_out, csv.str());
            return 0;
        }

        if (*sweep_threshold_cmd) {
            config.input_files = {threshold_input};
            std::ostringstream csv;
            csv << "threshold,components\n";
            for (const auto& [threshold, count] :
                 collusion::sweep_threshold(config, thresholds)) {
                csv << format_r(threshold) << ',' << count << '\n';
            }
            write_or_print(threshold_out, csv.str());
            return 0;
        }

        if (*stats_cmd) {
            config.input_files.assign(stats_inputs.begin(), stats_inputs.end());
            std::ostringstream csv;
            csv << "length,cdf\n";
            for (const auto& [length, cdf] : collusion::stats_length_cdf(config)) {
                csv << length << ',' << format_r(cdf) << '\n';
            }
            write_or_print(stats_out, csv.str());
            return 0;
        }

        if (*synth_cmd) {
            if (!clique_specs.empty()) {
                synth.cliques.clear();
                for (const auto& text : clique_specs) {
                    synth.cliques.push_back(parse_clique_spec(text));
                }
            }
            if (!sessions_text.empty()) synth.sessions = parse_sessions(sessions_text);
            const auto market = collusion::generate(synth, synth_dir);
            std::ofstream truth_out(std::filesystem::path(synth_dir) / "truth.json",
                                    std::ios::binary);
            truth_out << collusion::truth_to_json(market.truth).dump(2) << "\n";
            for (const auto& file : market.day_files) {
                std::cout << file.string() << "\n";
            }
            std::cout << (std::filesystem::path(synth_dir) / "truth.json").string()
                      << "\n";
            return 0;
        }

        if (*score_cmd) {
            std::ifstream report_in(report_path);
            std::ifstream truth_in(truth_path);
            nlohmann::json report_json;
            nlohmann::json truth_json;
            report_in >> report_json;
            truth_in >> truth_json;
            std::vector<std::vector<std::string>> detected;
            for (const auto& clique : report_json.at("cliques")) {
                detected.push_back(
                    clique.at("members").get<std::vector<std::string>>());
            }
            const auto result =
                collusion::score(detected, collusion::truth_from_json(truth_json));
            std::cout << collusion::score_to_json(result).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
