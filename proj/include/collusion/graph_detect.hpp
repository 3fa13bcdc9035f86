#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "collusion/correlation.hpp"

namespace collusion {

struct DailyEdge {
    std::string a;  // a < b
    std::string b;
    double weight = 0.0;  // correlation coefficient
};

// Simple weighted graph for one trading day. Nodes are all eligible
// investors, including isolated ones; edges only where the correlation
// strictly exceeds the threshold.
struct DailyGraph {
    std::string day;
    std::vector<std::string> nodes;
    std::vector<DailyEdge> edges;
};

// Edges are exactly the pairs with correlation > corr_threshold. The
// threshold must lie in (0, 1); negative or zero thresholds are rejected
// because only positive correlation is meaningful here.
DailyGraph build_daily_graph(const CorrelationMatrix& matrix,
                             double corr_threshold,
                             std::string day_label = "");

// Maximal connected node sets of size >= 2, each sorted ascending, in
// order of smallest member. Isolated nodes are excluded.
std::vector<std::vector<std::string>> connected_components(const DailyGraph& graph);

struct IntegratedEdge {
    std::string a;  // a < b
    std::string b;
    std::size_t weight = 0;  // number of daily graphs containing the edge
};

struct IntegratedGraph {
    std::vector<std::string> nodes;  // endpoints of retained edges
    std::vector<IntegratedEdge> edges;
};

// Per unordered pair, counts the days whose graph contains the edge and
// keeps pairs occurring on at least occurrence_threshold days.
// Requires occurrence_threshold >= 1 and at least one daily graph.
IntegratedGraph integrate(const std::vector<DailyGraph>& daily,
                          std::size_t occurrence_threshold);

struct CliqueEdge {
    std::string a;  // a < b
    std::string b;
    std::size_t occurrence = 0;
};

struct Clique {
    std::vector<std::string> members;  // sorted ascending, size >= 2
    std::vector<CliqueEdge> edges;
    std::size_t min_occurrence = 0;
    double mean_occurrence = 0.0;
    std::size_t days_observed = 0;  // days contributing at least one edge
    bool complete = false;          // whether the component is a full clique
};

struct CliqueReport {
    std::vector<std::string> days;  // labels of all input days, in order
    std::vector<Clique> cliques;    // disjoint member sets, by smallest member
};

// Integrates the daily graphs, prunes by occurrence_threshold, and reports
// each connected component of the result as a suspect clique.
CliqueReport detect_cliques(const std::vector<DailyGraph>& daily,
                            std::size_t occurrence_threshold);

struct ReportParameters {
    std::int64_t window_seconds = 60;
    std::size_t min_length = 15;
    double corr_threshold = 0.90;
    std::size_t occurrence_threshold = 2;
    std::string anchor = "09:00:00";
};

// {parameters, days, cliques:[{members, edges, ...}]}; keys sorted, members
// sorted ascending. Serialization is byte-deterministic for equal inputs.
nlohmann::json report_to_json(const CliqueReport& report,
                              const ReportParameters& parameters);

// Undirected DOT with node labels = investor ids; daily edge labels carry
// the correlation to 3 decimals, integrated labels the occurrence count.
void write_dot(const DailyGraph& graph, std::ostream& out);
void write_dot(const IntegratedGraph& graph, std::ostream& out);

}  // namespace collusion
