#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "collusion/clock.hpp"
#include "collusion/pipeline.hpp"
#include "collusion/synth_eval.hpp"
#include "fixtures.hpp"

using namespace collusion;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "cliquescan_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_fixture(const fs::path& dir, const std::string& name,
                       const std::string& text) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << text;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

RunConfig table2_config(const fs::path& dir) {
    RunConfig config;
    config.input_files = {write_fixture(dir, "table2.csv", fixtures::kTwoInvestorCsv)};
    config.min_length = 1;
    config.corr_threshold = 0.9;
    config.occurrence_threshold = 1;
    config.out_dir = dir / "out";
    return config;
}

}  // namespace

TEST_CASE("single-day worked example yields the {1,2} clique") {
    const auto dir = scratch_dir("pipe_table2");
    auto config = table2_config(dir);
    const auto result = run_pipeline(config);

    REQUIRE(result.days.size() == 1);
    CHECK(result.days[0].orders == 12);
    CHECK(result.days[0].investors == 2);
    CHECK(result.days[0].eligible == 2);
    CHECK(result.days[0].edges == 1);

    REQUIRE(result.report.cliques.size() == 1);
    CHECK(result.report.cliques[0].members == std::vector<std::string>{"1", "2"});
    CHECK(result.report.cliques[0].min_occurrence == 1);
    CHECK(fs::exists(config.out_dir / "report.json"));
}

TEST_CASE("raising the threshold above the pair correlation empties the report") {
    const auto dir = scratch_dir("pipe_table2_hi");
    auto config = table2_config(dir);
    config.corr_threshold = 0.96;
    const auto result = run_pipeline(config);
    CHECK(result.report.cliques.empty());
}

TEST_CASE("pipeline equals manual composition of the module operations") {
    const auto dir = scratch_dir("pipe_composed");
    auto config = table2_config(dir);
    config.emit.report = false;
    const auto result = run_pipeline(config);

    std::ifstream in(config.input_files[0], std::ios::binary);
    OrderFileFormat format;
    format.anchor_seconds = parse_clock(config.anchor);
    const auto parsed = parse_orders(in, format);
    const AggregationConfig agg{config.window_seconds, config.min_length};
    const auto eligible =
        filter_eligible(aggregate_all(to_signed_series(parsed.records), agg), agg);
    const auto matrix = correlation_matrix(eligible);
    const auto graph = build_daily_graph(matrix, config.corr_threshold, "table2");
    const auto report = detect_cliques({graph}, config.occurrence_threshold);

    const ReportParameters parameters{config.window_seconds, config.min_length,
                                      config.corr_threshold,
                                      config.occurrence_threshold, config.anchor};
    CHECK(report_to_json(result.report, parameters).dump(2) ==
          report_to_json(report, parameters).dump(2));
}

TEST_CASE("reruns produce byte-identical artifacts") {
    const auto dir = scratch_dir("pipe_bytes");
    const auto data_dir = scratch_dir("pipe_bytes_data");

    SynthConfig synth;
    synth.n_noise_traders = 30;
    synth.n_day_traders = 8;
    synth.cliques = {{3, 10, 0.1, 1.0}};
    synth.days = 3;
    synth.orders_per_day_mean = 50.0;
    synth.rng_seed = 99;
    const auto market = generate(synth, data_dir);

    RunConfig config;
    config.input_files = market.day_files;
    config.min_length = 10;
    config.emit = EmitFlags{true, true, true, true, true};

    config.out_dir = dir / "first";
    run_pipeline(config);
    config.out_dir = dir / "second";
    run_pipeline(config);

    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(dir / "first")) {
        const auto name = entry.path().filename();
        CHECK(slurp(entry.path()) == slurp(dir / "second" / name));
        ++compared;
    }
    // matrix + daily dot per day, integrated dot, report, stats
    CHECK(compared == 3 + 3 + 1 + 1 + 1);
}

TEST_CASE("malformed rows beyond the tolerance abort the run") {
    const auto dir = scratch_dir("pipe_badrows");
    const std::string csv =
        "investor_id,timestamp,side,price,volume\n"
        "1,09:00:30,Buy,3211,2\n"
        "1,09:00:31,Hold,3211,2\n";
    RunConfig config;
    config.input_files = {write_fixture(dir, "bad.csv", csv)};
    config.min_length = 1;
    config.occurrence_threshold = 1;
    config.out_dir = dir / "out";
    config.emit.report = false;
    CHECK_THROWS_AS(run_pipeline(config), std::runtime_error);

    config.bad_row_tolerance = 1;
    CHECK_NOTHROW(run_pipeline(config));
}

TEST_CASE("missing input files and invalid thresholds are rejected") {
    RunConfig config;
    config.input_files = {"/nonexistent/file.csv"};
    CHECK_THROWS_AS(run_pipeline(config), std::runtime_error);

    const auto dir = scratch_dir("pipe_invalid");
    auto ok = table2_config(dir);
    ok.corr_threshold = 0.0;
    CHECK_THROWS_AS(run_pipeline(ok), std::invalid_argument);
    ok = table2_config(dir);
    ok.occurrence_threshold = 0;
    CHECK_THROWS_AS(run_pipeline(ok), std::invalid_argument);
    ok = table2_config(dir);
    ok.input_files.clear();
    CHECK_THROWS_AS(run_pipeline(ok), std::invalid_argument);
}

TEST_CASE("sweep_window returns 1.0 for identical order streams") {
    const auto dir = scratch_dir("pipe_sweep_identical");
    std::string csv = "investor_id,timestamp,side,price,volume\n";
    for (int minute = 0; minute < 30; ++minute) {
        for (const char* id : {"a", "b"}) {
            char row[64];
            std::snprintf(row, sizeof(row), "%s,09:%02d:10,%s,100,%d\n", id, minute,
                          minute % 2 == 0 ? "Buy" : "Sell", 1 + minute % 5);
            csv += row;
        }
    }
    RunConfig config;
    config.input_files = {write_fixture(dir, "pair.csv", csv)};
    const auto sweep = sweep_window(config, "a", "b", {5, 30, 60, 120});
    REQUIRE(sweep.size() == 4);
    for (const auto& [size, r] : sweep) {
        CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sweep_window on a lagged planted pair improves with window size") {
    const auto data_dir = scratch_dir("pipe_sweep_lag");
    SynthConfig synth;
    synth.n_noise_traders = 0;
    synth.n_day_traders = 0;
    synth.cliques = {{2, 20, 0.05, 1.0}};
    synth.days = 1;
    synth.orders_per_day_mean = 60.0;
    synth.rng_seed = 4242;
    const auto market = generate(synth, data_dir);
    const auto& members = market.truth.planted[0];

    RunConfig config;
    config.input_files = market.day_files;
    const auto sweep = sweep_window(config, members[0], members[1], {5, 60});
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[1].second >= sweep[0].second);
    CHECK(sweep[1].second > 0.9);
}

TEST_CASE("sweep_window rejects absent investors") {
    const auto dir = scratch_dir("pipe_sweep_absent");
    RunConfig config;
    config.input_files = {write_fixture(dir, "t.csv", fixtures::kTwoInvestorCsv)};
    CHECK_THROWS_AS(sweep_window(config, "1", "nope", {60}),
                    std::invalid_argument);
}

TEST_CASE("sweep_threshold counts components for the worked example") {
    const auto dir = scratch_dir("pipe_sweep_threshold");
    auto config = table2_config(dir);
    const auto sweep = sweep_threshold(config, {0.9, 0.96});
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].second == 1);
    CHECK(sweep[1].second == 0);

    CHECK_THROWS_AS(sweep_threshold(config, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_threshold(config, {1.5}), std::invalid_argument);
}

TEST_CASE("stats CDF covers every aggregated series across days") {
    const auto data_dir = scratch_dir("pipe_stats");
    SynthConfig synth;
    synth.n_noise_traders = 12;
    synth.n_day_traders = 4;
    synth.cliques = {};
    synth.days = 2;
    synth.orders_per_day_mean = 30.0;
    synth.rng_seed = 5;
    const auto market = generate(synth, data_dir);

    RunConfig config;
    config.input_files = market.day_files;
    const auto cdf = stats_length_cdf(config);
    REQUIRE(!cdf.empty());
    CHECK(cdf.front().second == doctest::Approx(0.0));
    CHECK(cdf.back().second == doctest::Approx(1.0));
    double previous = -1.0;
    for (const auto& [length, value] : cdf) {
        CHECK(value >= previous);
        previous = value;
    }
}
