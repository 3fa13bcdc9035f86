#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "collusion/series.hpp"

namespace collusion {

// Two aggregated series re-expressed on the sorted union of their window
// indices, with zeros where a series has no point.
struct UnifiedPair {
    std::vector<std::int64_t> indices;
    std::vector<double> values_a;
    std::vector<double> values_b;
};

// Throws std::invalid_argument when either series is empty.
UnifiedPair unify(const AggregatedSeries& a, const AggregatedSeries& b);

// Pearson correlation over the unified vectors, averaging over the union
// support (population moments). Returns nullopt when either variance is
// zero — a constant unified series carries no co-movement signal. Defined
// results are clamped to [-1, 1].
std::optional<double> correlate(const UnifiedPair& pair);

struct CorrelationMatrix {
    std::vector<std::string> ids;  // sorted ascending
    std::vector<double> entries;   // row-major N x N

    std::size_t size() const { return ids.size(); }
    double at(std::size_t i, std::size_t j) const { return entries[i * ids.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * ids.size() + j]; }
};

// Pairwise correlation over all eligible investors, ids sorted ascending.
// Undefined pair correlations are stored as 0; the diagonal is 1. Only the
// upper triangle is computed and mirrored. Pairs are independent, so they
// may be distributed across threads; the result is identical to serial
// evaluation. Throws std::invalid_argument with fewer than two investors.
CorrelationMatrix correlation_matrix(
    const std::map<std::string, AggregatedSeries>& eligible);

// CSV dump with an id header row and column, entries to 6 decimal places.
void write_matrix_csv(const CorrelationMatrix& matrix, std::ostream& out);

}  // namespace collusion
