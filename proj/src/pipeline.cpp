#include "collusion/pipeline.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "collusion/clock.hpp"
#include "collusion/log.hpp"
#include "collusion/order_model.hpp"

namespace collusion {

namespace {

struct DayData {
    std::string label;
    std::map<std::string, AggregatedSeries> aggregated;  // pre-filter
    std::map<std::string, AggregatedSeries> eligible;
    std::size_t orders = 0;
};

std::vector<std::string> day_labels(const std::vector<std::filesystem::path>& files) {
    std::vector<std::string> labels;
    labels.reserve(files.size());
    std::map<std::string, std::size_t> used;
    for (const auto& file : files) {
        std::string label = file.stem().string();
        const auto repeat = ++used[label];
        if (repeat > 1) label += "#" + std::to_string(repeat);
        labels.push_back(std::move(label));
    }
    return labels;
}

std::vector<OrderRecord> load_orders(const std::filesystem::path& file,
                                     const RunConfig& config) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read order file " + file.string());
    }
    OrderFileFormat format;
    format.anchor_seconds = parse_clock(config.anchor);
    format.keep_pre_anchor = config.keep_pre_anchor;
    auto parsed = parse_orders(in, format);
    if (parsed.bad_rows.size() > config.bad_row_tolerance) {
        std::ostringstream message;
        message << file.string() << ": " << parsed.bad_rows.size()
                << " malformed row(s), tolerance " << config.bad_row_tolerance;
        for (std::size_t i = 0; i < parsed.bad_rows.size() && i < 5; ++i) {
            message << "\n  row " << parsed.bad_rows[i].row << ": "
                    << parsed.bad_rows[i].reason;
        }
        throw std::runtime_error(message.str());
    }
    for (const auto& bad : parsed.bad_rows) {
        log::warn(file.string() + " row " + std::to_string(bad.row) +
                  " skipped: " + bad.reason);
    }
    return std::move(parsed.records);
}

DayData load_day(const std::filesystem::path& file, const std::string& label,
                 const RunConfig& config) {
    DayData day;
    day.label = label;
    const auto orders = load_orders(file, config);
    day.orders = orders.size();
    const AggregationConfig agg{config.window_seconds, config.min_length};
    day.aggregated = aggregate_all(to_signed_series(orders), agg);
    day.eligible = filter_eligible(day.aggregated, agg);
    return day;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

}  // namespace

void validate(const RunConfig& config) {
    if (config.input_files.empty()) {
        throw std::invalid_argument("at least one input file is required");
    }
    validate(AggregationConfig{config.window_seconds, config.min_length});
    if (!(config.corr_threshold > 0.0 && config.corr_threshold < 1.0)) {
        throw std::invalid_argument("corr_threshold must lie in (0, 1)");
    }
    if (config.occurrence_threshold < 1) {
        throw std::invalid_argument("occurrence_threshold must be >= 1");
    }
    parse_clock(config.anchor);
}

PipelineResult run_pipeline(const RunConfig& config) {
    validate(config);
    const auto labels = day_labels(config.input_files);

    PipelineResult result;
    std::vector<DailyGraph> daily;
    std::vector<std::string> artifacts;       // paths paired with content
    std::vector<std::string> artifact_texts;  // written after computation

    std::ostringstream stats_csv;
    std::vector<std::size_t> all_lengths;

    for (std::size_t d = 0; d < config.input_files.size(); ++d) {
        auto day = load_day(config.input_files[d], labels[d], config);

        DaySummary summary;
        summary.label = day.label;
        summary.orders = day.orders;
        summary.investors = day.aggregated.size();
        summary.eligible = day.eligible.size();

        if (config.emit.stats) {
            for (const auto& [id, series] : day.aggregated) {
                all_lengths.push_back(series.points.size());
            }
        }

        if (day.eligible.size() < 2) {
            log::info("day " + day.label + ": fewer than two eligible series, no graph");
            daily.push_back(DailyGraph{day.label, {}, {}});
            result.days.push_back(summary);
            continue;
        }

        const auto matrix = correlation_matrix(day.eligible);
        auto graph = build_daily_graph(matrix, config.corr_threshold, day.label);
        summary.edges = graph.edges.size();
        result.days.push_back(summary);

        if (config.emit.matrix) {
            std::ostringstream out;
            write_matrix_csv(matrix, out);
            artifacts.push_back("matrix_" + day.label + ".csv");
            artifact_texts.push_back(out.str());
        }
        if (config.emit.daily_dot) {
            std::ostringstream out;
            write_dot(graph, out);
            artifacts.push_back("daily_" + day.label + ".dot");
            artifact_texts.push_back(out.str());
        }
        daily.push_back(std::move(graph));
    }

    result.report = detect_cliques(daily, config.occurrence_threshold);

    if (config.emit.integrated_dot) {
        std::ostringstream out;
        write_dot(integrate(daily, config.occurrence_threshold), out);
        artifacts.push_back("integrated.dot");
        artifact_texts.push_back(out.str());
    }
    if (config.emit.report) {
        const ReportParameters parameters{config.window_seconds, config.min_length,
                                          config.corr_threshold,
                                          config.occurrence_threshold, config.anchor};
        artifacts.push_back("report.json");
        artifact_texts.push_back(report_to_json(result.report, parameters).dump(2) + "\n");
    }
    if (config.emit.stats) {
        stats_csv << "length,cdf\n";
        char buf[32];
        for (const auto& [length, cdf] : length_cdf(all_lengths)) {
            std::snprintf(buf, sizeof(buf), "%.6f", cdf);
            stats_csv << length << ',' << buf << '\n';
        }
        artifacts.push_back("stats.csv");
        artifact_texts.push_back(stats_csv.str());
    }

    if (!artifacts.empty()) {
        std::filesystem::create_directories(config.out_dir);
        for (std::size_t i = 0; i < artifacts.size(); ++i) {
            write_text_file(config.out_dir / artifacts[i], artifact_texts[i]);
        }
    }
    return result;
}

std::vector<std::pair<std::int64_t, double>> sweep_window(
    const RunConfig& config, const std::string& investor_a,
    const std::string& investor_b, const std::vector<std::int64_t>& sizes) {
    if (config.input_files.size() != 1) {
        throw std::invalid_argument("sweep_window expects exactly one input day");
    }
    if (sizes.empty()) {
        throw std::invalid_argument("window size list must not be empty");
    }
    const auto orders = load_orders(config.input_files.front(), config);
    const auto series = to_signed_series(orders);
    const auto it_a = series.find(investor_a);
    const auto it_b = series.find(investor_b);
    if (it_a == series.end() || it_b == series.end()) {
        throw std::invalid_argument("investor not present in input day: " +
                                    (it_a == series.end() ? investor_a : investor_b));
    }

    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(sizes.size());
    for (const auto size : sizes) {
        const AggregationConfig agg{size, 1};
        const auto a = aggregate(it_a->second, agg);
        const auto b = aggregate(it_b->second, agg);
        double r = std::numeric_limits<double>::quiet_NaN();
        if (!a.points.empty() && !b.points.empty()) {
            if (const auto value = correlate(unify(a, b))) r = *value;
        }
        out.emplace_back(size, r);
    }
    return out;
}

std::vector<std::pair<double, std::size_t>> sweep_threshold(
    const RunConfig& config, const std::vector<double>& thresholds) {
    if (config.input_files.size() != 1) {
        throw std::invalid_argument("sweep_threshold expects exactly one input day");
    }
    if (thresholds.empty()) {
        throw std::invalid_argument("threshold list must not be empty");
    }
    const auto labels = day_labels(config.input_files);
    const auto day = load_day(config.input_files.front(), labels.front(), config);
    if (day.eligible.size() < 2) {
        throw std::runtime_error("fewer than two eligible series in the input day");
    }
    const auto matrix = correlation_matrix(day.eligible);

    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(thresholds.size());
    for (const auto threshold : thresholds) {
        const auto graph = build_daily_graph(matrix, threshold, day.label);
        out.emplace_back(threshold, connected_components(graph).size());
    }
    return out;
}

std::vector<std::pair<std::int64_t, double>> stats_length_cdf(
    const RunConfig& config) {
    validate(config);
    const auto labels = day_labels(config.input_files);
    std::vector<std::size_t> lengths;
    for (std::size_t d = 0; d < config.input_files.size(); ++d) {
        const auto day = load_day(config.input_files[d], labels[d], config);
        for (const auto& [id, series] : day.aggregated) {
            lengths.push_back(series.points.size());
        }
    }
    return length_cdf(lengths);
}

}  // namespace collusion
