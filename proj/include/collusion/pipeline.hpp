#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "collusion/graph_detect.hpp"

namespace collusion {

struct EmitFlags {
    bool matrix = false;
    bool daily_dot = false;
    bool integrated_dot = false;
    bool report = true;
    bool stats = false;
};

struct RunConfig {
    std::vector<std::filesystem::path> input_files;  // one per day, day-ordered
    std::int64_t window_seconds = 60;
    std::size_t min_length = 15;
    double corr_threshold = 0.90;
    std::size_t occurrence_threshold = 2;
    std::string anchor = "09:00:00";
    bool keep_pre_anchor = false;
    std::size_t bad_row_tolerance = 0;  // malformed rows allowed per file
    std::filesystem::path out_dir = "out";
    EmitFlags emit;
};

void validate(const RunConfig& config);

struct DaySummary {
    std::string label;
    std::size_t orders = 0;
    std::size_t investors = 0;
    std::size_t eligible = 0;
    std::size_t edges = 0;
};

struct PipelineResult {
    CliqueReport report;
    std::vector<DaySummary> days;
};

// Per day: parse -> signed series -> aggregate -> filter -> correlation
// matrix -> daily graph; then clique detection across all days. Requested
// artifacts are written into out_dir after all computation finishes.
// Throws std::runtime_error on unreadable input or malformed rows beyond
// bad_row_tolerance.
PipelineResult run_pipeline(const RunConfig& config);

// Correlation of one investor pair recomputed at each window size, on the
// single configured input day.
std::vector<std::pair<std::int64_t, double>> sweep_window(
    const RunConfig& config, const std::string& investor_a,
    const std::string& investor_b, const std::vector<std::int64_t>& sizes);

// Connected-component count of the single day's graph per threshold.
std::vector<std::pair<double, std::size_t>> sweep_threshold(
    const RunConfig& config, const std::vector<double>& thresholds);

// Length CDF over the aggregated (pre-filter) series of every input day.
std::vector<std::pair<std::int64_t, double>> stats_length_cdf(
    const RunConfig& config);

}  // namespace collusion
