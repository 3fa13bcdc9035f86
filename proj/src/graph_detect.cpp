#include "collusion/graph_detect.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>

namespace collusion {

namespace {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

using EdgeKey = std::pair<std::string, std::string>;

// Day indices (into `daily`) on which each unordered pair occurred.
std::map<EdgeKey, std::vector<std::size_t>> edge_occurrences(
    const std::vector<DailyGraph>& daily) {
    std::map<EdgeKey, std::vector<std::size_t>> occurrences;
    for (std::size_t d = 0; d < daily.size(); ++d) {
        for (const auto& edge : daily[d].edges) {
            occurrences[{edge.a, edge.b}].push_back(d);
        }
    }
    return occurrences;
}

// Groups nodes connected by the given edges; components of size >= 2,
// members sorted, ordered by smallest member.
std::vector<std::vector<std::string>> components_of(
    const std::vector<std::string>& nodes,
    const std::vector<EdgeKey>& edges) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

    UnionFind uf(nodes.size());
    for (const auto& [a, b] : edges) {
        uf.unite(index.at(a), index.at(b));
    }

    std::map<std::size_t, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        groups[uf.find(i)].push_back(nodes[i]);
    }

    std::vector<std::vector<std::string>> result;
    for (auto& [root, members] : groups) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end());
        result.push_back(std::move(members));
    }
    std::sort(result.begin(), result.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return result;
}

void validate_occurrence_threshold(std::size_t occurrence_threshold) {
    if (occurrence_threshold < 1) {
        throw std::invalid_argument("occurrence_threshold must be >= 1");
    }
}

std::string dot_quoted(const std::string& id) {
    std::string out = "\"";
    for (char c : id) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

DailyGraph build_daily_graph(const CorrelationMatrix& matrix,
                             double corr_threshold, std::string day_label) {
    if (!(corr_threshold > 0.0 && corr_threshold < 1.0)) {
        throw std::invalid_argument("corr_threshold must lie in (0, 1)");
    }
    DailyGraph graph;
    graph.day = std::move(day_label);
    graph.nodes = matrix.ids;
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = matrix.at(i, j);
            if (r > corr_threshold) {
                graph.edges.push_back({matrix.ids[i], matrix.ids[j], r});
            }
        }
    }
    return graph;
}

std::vector<std::vector<std::string>> connected_components(const DailyGraph& graph) {
    std::vector<EdgeKey> keys;
    keys.reserve(graph.edges.size());
    for (const auto& edge : graph.edges) keys.emplace_back(edge.a, edge.b);
    return components_of(graph.nodes, keys);
}

IntegratedGraph integrate(const std::vector<DailyGraph>& daily,
                          std::size_t occurrence_threshold) {
    validate_occurrence_threshold(occurrence_threshold);
    if (daily.empty()) {
        throw std::invalid_argument("integrate requires at least one daily graph");
    }

    IntegratedGraph graph;
    std::set<std::string> nodes;
    for (const auto& [key, days] : edge_occurrences(daily)) {
        if (days.size() < occurrence_threshold) continue;
        graph.edges.push_back({key.first, key.second, days.size()});
        nodes.insert(key.first);
        nodes.insert(key.second);
    }
    graph.nodes.assign(nodes.begin(), nodes.end());
    return graph;
}

CliqueReport detect_cliques(const std::vector<DailyGraph>& daily,
                            std::size_t occurrence_threshold) {
    validate_occurrence_threshold(occurrence_threshold);
    if (daily.empty()) {
        throw std::invalid_argument("detect_cliques requires at least one daily graph");
    }

    CliqueReport report;
    report.days.reserve(daily.size());
    for (const auto& graph : daily) report.days.push_back(graph.day);

    std::map<EdgeKey, std::vector<std::size_t>> retained;
    for (auto& [key, days] : edge_occurrences(daily)) {
        if (days.size() >= occurrence_threshold) retained.emplace(key, std::move(days));
    }

    std::set<std::string> node_set;
    std::vector<EdgeKey> keys;
    keys.reserve(retained.size());
    for (const auto& [key, days] : retained) {
        keys.push_back(key);
        node_set.insert(key.first);
        node_set.insert(key.second);
    }
    const std::vector<std::string> nodes(node_set.begin(), node_set.end());

    for (auto& members : components_of(nodes, keys)) {
        Clique clique;
        clique.members = std::move(members);

        std::set<std::size_t> days_seen;
        std::size_t weight_sum = 0;
        clique.min_occurrence = daily.size() + 1;
        for (const auto& [key, days] : retained) {
            if (!std::binary_search(clique.members.begin(), clique.members.end(),
                                    key.first)) {
                continue;
            }
            if (!std::binary_search(clique.members.begin(), clique.members.end(),
                                    key.second)) {
                continue;
            }
            clique.edges.push_back({key.first, key.second, days.size()});
            clique.min_occurrence = std::min(clique.min_occurrence, days.size());
            weight_sum += days.size();
            days_seen.insert(days.begin(), days.end());
        }
        clique.mean_occurrence =
            static_cast<double>(weight_sum) / static_cast<double>(clique.edges.size());
        clique.days_observed = days_seen.size();
        const std::size_t k = clique.members.size();
        clique.complete = clique.edges.size() == k * (k - 1) / 2;
        report.cliques.push_back(std::move(clique));
    }
    return report;
}

nlohmann::json report_to_json(const CliqueReport& report,
                              const ReportParameters& parameters) {
    nlohmann::json cliques = nlohmann::json::array();
    for (const auto& clique : report.cliques) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& edge : clique.edges) {
            edges.push_back({{"a", edge.a}, {"b", edge.b}, {"occurrence", edge.occurrence}});
        }
        cliques.push_back({{"members", clique.members},
                           {"edges", std::move(edges)},
                           {"min_occurrence", clique.min_occurrence},
                           {"mean_occurrence", clique.mean_occurrence},
                           {"days_observed", clique.days_observed},
                           {"complete", clique.complete}});
    }
    return nlohmann::json{
        {"parameters",
         {{"window_seconds", parameters.window_seconds},
          {"min_length", parameters.min_length},
          {"corr_threshold", parameters.corr_threshold},
          {"occurrence_threshold", parameters.occurrence_threshold},
          {"anchor", parameters.anchor}}},
        {"days", report.days},
        {"cliques", std::move(cliques)}};
}

void write_dot(const DailyGraph& graph, std::ostream& out) {
    out << "graph " << dot_quoted(graph.day.empty() ? "daily" : graph.day) << " {\n";
    for (const auto& node : graph.nodes) {
        out << "  " << dot_quoted(node) << ";\n";
    }
    char label[32];
    for (const auto& edge : graph.edges) {
        std::snprintf(label, sizeof(label), "%.3f", edge.weight);
        out << "  " << dot_quoted(edge.a) << " -- " << dot_quoted(edge.b)
            << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
}

void write_dot(const IntegratedGraph& graph, std::ostream& out) {
    out << "graph \"integrated\" {\n";
    for (const auto& node : graph.nodes) {
        out << "  " << dot_quoted(node) << ";\n";
    }
    for (const auto& edge : graph.edges) {
        out << "  " << dot_quoted(edge.a) << " -- " << dot_quoted(edge.b)
            << " [label=\"" << edge.weight << "\"];\n";
    }
    out << "}\n";
}

}  // namespace collusion
