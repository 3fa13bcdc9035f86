#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collusion/graph_detect.hpp"

namespace collusion {

struct CliqueSpec {
    std::size_t size = 2;
    std::int64_t lag_seconds = 10;  // max delay of a mirrored order
    double volume_jitter = 0.1;     // relative sd of mirrored volumes
    double participation = 1.0;     // probability a member mirrors an event
};

struct SessionSpan {
    std::int64_t start_seconds = 0;  // clock seconds since midnight
    std::int64_t end_seconds = 0;    // exclusive
};

// Four continuous sessions: 09:00-10:15, 10:30-11:30, 13:30-14:10, 14:20-15:00.
std::vector<SessionSpan> default_sessions();

struct SynthConfig {
    std::size_t n_noise_traders = 300;  // background, mostly below min_length
    std::size_t n_day_traders = 30;     // independent but active every day
    std::vector<CliqueSpec> cliques = {{2, 10, 0.1, 1.0},
                                       {3, 10, 0.1, 1.0},
                                       {6, 10, 0.1, 1.0}};
    std::size_t days = 9;
    double orders_per_day_mean = 120.0;  // per active investor (day traders,
                                         // clique event streams)
    double noise_orders_mean = 10.0;     // per noise trader per day
    std::vector<SessionSpan> sessions = default_sessions();
    std::uint64_t rng_seed = 42;
};

void validate(const SynthConfig& config);

struct GroundTruth {
    std::vector<std::vector<std::string>> planted;  // disjoint, each size >= 2
};

struct GeneratedMarket {
    std::vector<std::filesystem::path> day_files;
    GroundTruth truth;
};

// Writes one order CSV per day into out_dir (day_01.csv, ...) and returns
// the planted clique membership. Clique members mirror a leader's events on
// the same side within lag_seconds, volumes scaled by the jitter; noise and
// day traders place independent zero-mean orders at uniform session times.
// Byte-deterministic for a fixed rng_seed.
GeneratedMarket generate(const SynthConfig& config,
                         const std::filesystem::path& out_dir);

struct ScoreResult {
    // Pair-level metrics over unordered investor pairs inside cliques.
    // nullopt marks an undefined (zero-denominator) metric.
    std::optional<double> pair_precision;
    std::optional<double> pair_recall;
    std::size_t true_positive_pairs = 0;
    std::size_t false_positive_pairs = 0;
    std::size_t false_negative_pairs = 0;
    std::size_t clique_exact_matches = 0;  // detected sets equal to a planted set
};

ScoreResult score(const std::vector<std::vector<std::string>>& detected,
                  const GroundTruth& truth);
ScoreResult score(const CliqueReport& report, const GroundTruth& truth);

nlohmann::json truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const nlohmann::json& j);
nlohmann::json score_to_json(const ScoreResult& result);

}  // namespace collusion
