#include "collusion/synth_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "collusion/clock.hpp"
#include "collusion/order_model.hpp"

namespace collusion {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::int64_t total_session_seconds(const std::vector<SessionSpan>& sessions) {
    std::int64_t total = 0;
    for (const auto& span : sessions) total += span.end_seconds - span.start_seconds;
    return total;
}

// Offsets index the concatenation of the sessions; this maps one back to a
// clock second.
std::int64_t offset_to_clock(const std::vector<SessionSpan>& sessions,
                             std::int64_t offset) {
    for (const auto& span : sessions) {
        const std::int64_t length = span.end_seconds - span.start_seconds;
        if (offset < length) return span.start_seconds + offset;
        offset -= length;
    }
    throw std::logic_error("session offset out of range");
}

// Largest offset usable as an event time so that offset + lag stays inside
// the same session.
std::int64_t clamp_to_session_tail(const std::vector<SessionSpan>& sessions,
                                   std::int64_t offset, std::int64_t lag) {
    std::int64_t base = 0;
    for (const auto& span : sessions) {
        const std::int64_t length = span.end_seconds - span.start_seconds;
        if (offset - base < length) {
            return std::min(offset, base + length - 1 - lag);
        }
        base += length;
    }
    throw std::logic_error("session offset out of range");
}

struct PendingOrder {
    std::int64_t clock_seconds;
    std::string investor_id;
    Side side;
    std::int64_t price;
    std::int64_t volume;
};

std::vector<std::int64_t> sample_offsets(std::size_t count, std::int64_t total,
                                         std::mt19937_64& rng) {
    std::vector<std::int64_t> population(static_cast<std::size_t>(total));
    std::iota(population.begin(), population.end(), std::int64_t{0});
    std::vector<std::int64_t> out;
    out.reserve(count);
    std::sample(population.begin(), population.end(), std::back_inserter(out),
                count, rng);
    return out;  // selection sampling keeps ascending order
}

// Ascending offsets with pairwise gaps of at least min_gap: sampled from the
// shrunk range, then spread back out.
std::vector<std::int64_t> sample_spaced_offsets(std::size_t count,
                                                std::int64_t total,
                                                std::int64_t min_gap,
                                                std::mt19937_64& rng) {
    const auto span = static_cast<std::int64_t>(count - 1) * min_gap;
    if (count == 0 || span >= total) {
        return sample_offsets(count, total, rng);  // too dense to space out
    }
    auto out = sample_offsets(count, total - span, rng);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += static_cast<std::int64_t>(i) * min_gap;
    }
    return out;
}

std::string padded_id(const char* prefix, std::size_t index, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, index);
    return std::string(buf);
}

int digits_for(std::size_t count) {
    int width = 1;
    for (std::size_t v = count; v >= 10; v /= 10) ++width;
    return std::max(width, 2);
}

}  // namespace

std::vector<SessionSpan> default_sessions() {
    return {{9 * 3600, 10 * 3600 + 15 * 60},
            {10 * 3600 + 30 * 60, 11 * 3600 + 30 * 60},
            {13 * 3600 + 30 * 60, 14 * 3600 + 10 * 60},
            {14 * 3600 + 20 * 60, 15 * 3600}};
}

void validate(const SynthConfig& config) {
    if (config.days < 1) throw std::invalid_argument("days must be >= 1");
    if (config.sessions.empty()) {
        throw std::invalid_argument("at least one trading session is required");
    }
    std::int64_t previous_end = -1;
    for (const auto& span : config.sessions) {
        if (span.start_seconds < 0 || span.end_seconds > 86400 ||
            span.end_seconds <= span.start_seconds) {
            throw std::invalid_argument("session spans must be within one day and nonempty");
        }
        if (span.start_seconds < previous_end) {
            throw std::invalid_argument("sessions must be chronological and non-overlapping");
        }
        previous_end = span.end_seconds;
    }
    const std::int64_t total = total_session_seconds(config.sessions);
    if (config.orders_per_day_mean < 0 || config.noise_orders_mean < 0) {
        throw std::invalid_argument("order count means must be non-negative");
    }
    if (config.orders_per_day_mean > static_cast<double>(total) ||
        config.noise_orders_mean > static_cast<double>(total)) {
        throw std::invalid_argument(
            "session capacity exceeded: more orders per investor than session seconds");
    }
    for (const auto& clique : config.cliques) {
        if (clique.size < 2) throw std::invalid_argument("clique size must be >= 2");
        if (clique.lag_seconds < 0) throw std::invalid_argument("lag_seconds must be >= 0");
        if (!(clique.participation > 0.0 && clique.participation <= 1.0)) {
            throw std::invalid_argument("participation must lie in (0, 1]");
        }
        if (clique.volume_jitter < 0.0) {
            throw std::invalid_argument("volume_jitter must be >= 0");
        }
        for (const auto& span : config.sessions) {
            if (span.end_seconds - span.start_seconds <= clique.lag_seconds) {
                throw std::invalid_argument("lag_seconds exceeds a session length");
            }
        }
    }
}

GeneratedMarket generate(const SynthConfig& config,
                         const std::filesystem::path& out_dir) {
    validate(config);
    std::filesystem::create_directories(out_dir);

    const std::int64_t total = total_session_seconds(config.sessions);
    const int clique_width = digits_for(config.cliques.size());
    const int day_trader_width = digits_for(config.n_day_traders);
    const int noise_width = digits_for(config.n_noise_traders);

    GeneratedMarket market;
    for (std::size_t c = 0; c < config.cliques.size(); ++c) {
        std::vector<std::string> members;
        for (std::size_t m = 0; m < config.cliques[c].size; ++m) {
            members.push_back(padded_id("C", c + 1, clique_width) +
                              padded_id("M", m + 1, 2));
        }
        market.truth.planted.push_back(std::move(members));
    }

    const int day_digits = digits_for(config.days);
    const std::uint64_t stream_base = splitmix64(config.rng_seed);
    for (std::size_t day = 0; day < config.days; ++day) {
        std::mt19937_64 rng(splitmix64(stream_base + day));
        std::uniform_int_distribution<std::int64_t> price_base(3000, 3500);
        std::uniform_int_distribution<std::int64_t> price_tick(-15, 15);
        std::bernoulli_distribution coin(0.5);
        const std::int64_t base_price = price_base(rng);

        std::vector<PendingOrder> orders;
        auto emit = [&](std::int64_t clock_seconds, std::string id, Side side,
                        std::int64_t volume) {
            orders.push_back({clock_seconds, std::move(id), side,
                              std::max<std::int64_t>(1, base_price + price_tick(rng)),
                              volume});
        };

        // Planted cliques: member 1 leads each event, the others mirror the
        // side with a bounded delay and jittered volume.
        for (std::size_t c = 0; c < config.cliques.size(); ++c) {
            const auto& spec = config.cliques[c];
            const auto& members = market.truth.planted[c];
            std::poisson_distribution<std::int64_t> event_count(config.orders_per_day_mean);
            const auto n_events = std::clamp<std::int64_t>(event_count(rng), 1, total);
            // Coordinated bursts are spread out so they do not pile into one
            // aggregation window and cancel.
            auto offsets = sample_spaced_offsets(static_cast<std::size_t>(n_events),
                                                 total, 120, rng);

            std::uniform_int_distribution<std::int64_t> base_volume(10, 30);
            // Reaction delays cluster near zero (fast mirroring) and are
            // capped at lag_seconds, so co-windows rarely straddle a
            // boundary even at large lag bounds.
            std::exponential_distribution<double> reaction(1.0);
            auto delay = [&](std::mt19937_64& r) {
                return std::min<std::int64_t>(
                    spec.lag_seconds,
                    static_cast<std::int64_t>(std::floor(reaction(r))));
            };
            std::bernoulli_distribution joins(spec.participation);
            std::normal_distribution<double> jitter(0.0, 1.0);

            for (auto raw_offset : offsets) {
                const std::int64_t offset =
                    clamp_to_session_tail(config.sessions, raw_offset, spec.lag_seconds);
                const Side side = coin(rng) ? Side::Buy : Side::Sell;
                const std::int64_t volume = base_volume(rng);
                emit(offset_to_clock(config.sessions, offset), members[0], side, volume);
                for (std::size_t m = 1; m < members.size(); ++m) {
                    if (!joins(rng)) continue;
                    const std::int64_t mirrored = std::max<std::int64_t>(
                        1, std::llround(static_cast<double>(volume) *
                                        (1.0 + spec.volume_jitter * jitter(rng))));
                    const std::int64_t follower_offset = offset + delay(rng);
                    emit(offset_to_clock(config.sessions, follower_offset),
                         members[m], side, mirrored);
                }
            }
        }

        // Active independent traders.
        std::poisson_distribution<std::int64_t> day_count(config.orders_per_day_mean);
        std::uniform_int_distribution<std::int64_t> small_volume(1, 10);
        for (std::size_t t = 0; t < config.n_day_traders; ++t) {
            const auto id = padded_id("D", t + 1, day_trader_width);
            const auto n_orders = std::clamp<std::int64_t>(day_count(rng), 0, total);
            for (auto offset : sample_offsets(static_cast<std::size_t>(n_orders), total, rng)) {
                const Side side = coin(rng) ? Side::Buy : Side::Sell;
                const std::int64_t volume = small_volume(rng);
                emit(offset_to_clock(config.sessions, offset), id, side, volume);
            }
        }

        // Sparse background traders, mostly filtered out downstream.
        std::poisson_distribution<std::int64_t> noise_count(config.noise_orders_mean);
        for (std::size_t t = 0; t < config.n_noise_traders; ++t) {
            const auto id = padded_id("N", t + 1, noise_width);
            const auto n_orders = std::clamp<std::int64_t>(noise_count(rng), 0, total);
            for (auto offset : sample_offsets(static_cast<std::size_t>(n_orders), total, rng)) {
                const Side side = coin(rng) ? Side::Buy : Side::Sell;
                const std::int64_t volume = small_volume(rng);
                emit(offset_to_clock(config.sessions, offset), id, side, volume);
            }
        }

        std::stable_sort(orders.begin(), orders.end(),
                         [](const PendingOrder& x, const PendingOrder& y) {
                             return x.clock_seconds < y.clock_seconds;
                         });

        char name[32];
        std::snprintf(name, sizeof(name), "day_%0*zu.csv", day_digits, day + 1);
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        }
        std::string buffer;
        buffer.reserve(orders.size() * 32 + 64);
        buffer.append(kOrderCsvHeader);
        buffer.push_back('\n');
        for (const auto& order : orders) {
            buffer.append(order.investor_id);
            buffer.push_back(',');
            buffer.append(format_clock(order.clock_seconds));
            buffer.append(order.side == Side::Buy ? ",Buy," : ",Sell,");
            buffer.append(std::to_string(order.price));
            buffer.push_back(',');
            buffer.append(std::to_string(order.volume));
            buffer.push_back('\n');
        }
        out << buffer;
        market.day_files.push_back(path);
    }
    return market;
}

namespace {

using Pair = std::pair<std::string, std::string>;

std::set<Pair> member_pairs(const std::vector<std::vector<std::string>>& sets) {
    std::set<Pair> pairs;
    for (const auto& members : sets) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                auto a = members[i];
                auto b = members[j];
                if (b < a) std::swap(a, b);
                pairs.emplace(std::move(a), std::move(b));
            }
        }
    }
    return pairs;
}

}  // namespace

ScoreResult score(const std::vector<std::vector<std::string>>& detected,
                  const GroundTruth& truth) {
    const auto detected_pairs = member_pairs(detected);
    const auto planted_pairs = member_pairs(truth.planted);

    ScoreResult result;
    for (const auto& pair : detected_pairs) {
        if (planted_pairs.count(pair) != 0) {
            ++result.true_positive_pairs;
        } else {
            ++result.false_positive_pairs;
        }
    }
    result.false_negative_pairs = planted_pairs.size() - result.true_positive_pairs;

    const std::size_t tp = result.true_positive_pairs;
    if (!detected_pairs.empty()) {
        result.pair_precision =
            static_cast<double>(tp) / static_cast<double>(detected_pairs.size());
    } else if (planted_pairs.empty()) {
        result.pair_precision = 1.0;  // nothing to find, nothing reported
    }
    if (!planted_pairs.empty()) {
        result.pair_recall =
            static_cast<double>(tp) / static_cast<double>(planted_pairs.size());
    } else if (detected_pairs.empty()) {
        result.pair_recall = 1.0;
    }

    std::set<std::vector<std::string>> planted_sets;
    for (auto members : truth.planted) {
        std::sort(members.begin(), members.end());
        planted_sets.insert(std::move(members));
    }
    for (auto members : detected) {
        std::sort(members.begin(), members.end());
        if (planted_sets.count(members) != 0) ++result.clique_exact_matches;
    }
    return result;
}

ScoreResult score(const CliqueReport& report, const GroundTruth& truth) {
    std::vector<std::vector<std::string>> detected;
    detected.reserve(report.cliques.size());
    for (const auto& clique : report.cliques) detected.push_back(clique.members);
    return score(detected, truth);
}

nlohmann::json truth_to_json(const GroundTruth& truth) {
    auto planted = truth.planted;
    for (auto& members : planted) std::sort(members.begin(), members.end());
    std::sort(planted.begin(), planted.end());
    return nlohmann::json{{"planted", planted}};
}

GroundTruth truth_from_json(const nlohmann::json& j) {
    GroundTruth truth;
    truth.planted = j.at("planted").get<std::vector<std::vector<std::string>>>();
    std::set<std::string> seen;
    for (const auto& members : truth.planted) {
        if (members.size() < 2) {
            throw std::invalid_argument("planted sets must have at least two members");
        }
        for (const auto& id : members) {
            if (!seen.insert(id).second) {
                throw std::invalid_argument("planted sets must be disjoint: " + id);
            }
        }
    }
    return truth;
}

nlohmann::json score_to_json(const ScoreResult& result) {
    nlohmann::json j{
        {"true_positive_pairs", result.true_positive_pairs},
        {"false_positive_pairs", result.false_positive_pairs},
        {"false_negative_pairs", result.false_negative_pairs},
        {"clique_exact_matches", result.clique_exact_matches},
        {"pair_precision_defined", result.pair_precision.has_value()},
        {"pair_recall_defined", result.pair_recall.has_value()},
    };
    j["pair_precision"] =
        result.pair_precision ? nlohmann::json(*result.pair_precision) : nlohmann::json();
    j["pair_recall"] =
        result.pair_recall ? nlohmann::json(*result.pair_recall) : nlohmann::json();
    return j;
}

}  // namespace collusion
