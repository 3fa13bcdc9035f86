#include "collusion/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace collusion {

namespace {

// Visits the zero-filled union of two aggregated series in index order,
// calling fn(value_a, value_b) once per union index. Matches the vectors
// unify() materializes, element for element.
template <typename Fn>
void walk_unified(const AggregatedSeries& a, const AggregatedSeries& b, Fn&& fn) {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.points.size() || j < b.points.size()) {
        const bool take_a =
            j == b.points.size() ||
            (i < a.points.size() && a.points[i].window_index <= b.points[j].window_index);
        const bool take_b =
            i == a.points.size() ||
            (j < b.points.size() && b.points[j].window_index <= a.points[i].window_index);
        const double va = take_a ? static_cast<double>(a.points[i].value) : 0.0;
        const double vb = take_b ? static_cast<double>(b.points[j].value) : 0.0;
        if (take_a) ++i;
        if (take_b) ++j;
        fn(va, vb);
    }
}

double finish_pearson(double sxx, double syy, double sxy, bool& defined) {
    if (sxx <= 0.0 || syy <= 0.0) {
        defined = false;
        return 0.0;
    }
    defined = true;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

// Two-pass correlation over the merged walk; arithmetic order is identical
// to correlate(unify(a, b)).
double pair_correlation(const AggregatedSeries& a, const AggregatedSeries& b,
                        bool& defined) {
    double n = 0.0;
    double sum_a = 0.0;
    double sum_b = 0.0;
    walk_unified(a, b, [&](double va, double vb) {
        n += 1.0;
        sum_a += va;
        sum_b += vb;
    });
    if (n < 2.0) {
        defined = false;
        return 0.0;
    }
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    walk_unified(a, b, [&](double va, double vb) {
        const double da = va - mean_a;
        const double db = vb - mean_b;
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    });
    return finish_pearson(sxx, syy, sxy, defined);
}

}  // namespace

UnifiedPair unify(const AggregatedSeries& a, const AggregatedSeries& b) {
    if (a.points.empty() || b.points.empty()) {
        throw std::invalid_argument("unify requires two nonempty aggregated series");
    }
    UnifiedPair pair;
    pair.indices.reserve(a.points.size() + b.points.size());
    pair.values_a.reserve(a.points.size() + b.points.size());
    pair.values_b.reserve(a.points.size() + b.points.size());

    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.points.size() || j < b.points.size()) {
        const bool take_a =
            j == b.points.size() ||
            (i < a.points.size() && a.points[i].window_index <= b.points[j].window_index);
        const bool take_b =
            i == a.points.size() ||
            (j < b.points.size() && b.points[j].window_index <= a.points[i].window_index);
        const std::int64_t index =
            take_a ? a.points[i].window_index : b.points[j].window_index;
        pair.indices.push_back(index);
        pair.values_a.push_back(take_a ? static_cast<double>(a.points[i].value) : 0.0);
        pair.values_b.push_back(take_b ? static_cast<double>(b.points[j].value) : 0.0);
        if (take_a) ++i;
        if (take_b) ++j;
    }
    return pair;
}

std::optional<double> correlate(const UnifiedPair& pair) {
    const std::size_t n_points = pair.indices.size();
    if (n_points < 2) return std::nullopt;

    double n = 0.0;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t k = 0; k < n_points; ++k) {
        n += 1.0;
        sum_a += pair.values_a[k];
        sum_b += pair.values_b[k];
    }
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < n_points; ++k) {
        const double da = pair.values_a[k] - mean_a;
        const double db = pair.values_b[k] - mean_b;
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    bool defined = false;
    const double r = finish_pearson(sxx, syy, sxy, defined);
    if (!defined) return std::nullopt;
    return r;
}

CorrelationMatrix correlation_matrix(
    const std::map<std::string, AggregatedSeries>& eligible) {
    if (eligible.size() < 2) {
        throw std::invalid_argument(
            "correlation_matrix requires at least two eligible investors");
    }

    CorrelationMatrix matrix;
    matrix.ids.reserve(eligible.size());
    std::vector<const AggregatedSeries*> series;
    series.reserve(eligible.size());
    for (const auto& [id, s] : eligible) {  // std::map iterates sorted
        matrix.ids.push_back(id);
        series.push_back(&s);
    }
    const std::size_t n = matrix.ids.size();
    matrix.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) matrix.at(i, i) = 1.0;

    auto compute_row = [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool defined = false;
            const double r = pair_correlation(*series[i], *series[j], defined);
            const double value = defined ? r : 0.0;
            matrix.at(i, j) = value;
            matrix.at(j, i) = value;
        }
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, n);
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) compute_row(i);
    } else {
        // Each row is written by exactly one worker; values do not depend on
        // scheduling, so the result matches serial evaluation.
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    compute_row(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return matrix;
}

void write_matrix_csv(const CorrelationMatrix& matrix, std::ostream& out) {
    out << "id";
    for (const auto& id : matrix.ids) out << ',' << id;
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out << matrix.ids[i];
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.6f", matrix.at(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace collusion
