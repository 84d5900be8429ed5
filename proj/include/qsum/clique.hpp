#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qsum/bitset.hpp"
#include "qsum/combinatorics.hpp"
#include "qsum/status.hpp"

namespace qsum {

/// Undirected simple graph with bit-packed adjacency rows.
class Graph {
public:
    explicit Graph(std::size_t vertices);

    std::size_t size() const noexcept { return rows_.size(); }
    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
    const Bitset& neighbors(std::size_t v) const { return rows_[v]; }
    std::size_t degree(std::size_t v) const { return rows_[v].count(); }
    std::size_t edge_count() const;

private:
    std::vector<Bitset> rows_;
};

struct Budget {
    Count max_nodes = 200'000'000;
    double max_seconds = 600.0;
    unsigned threads = 1;
};

/// One line of the optional search trace.
struct TraceEvent {
    Count node = 0;
    int depth = 0;
    std::size_t bound = 0;
    std::size_t best = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct CliqueStats {
    /// Nodes expanded while establishing the optimum.
    Count nodes = 0;
    /// Nodes expanded by the sequential pass that selects the witness.
    Count witness_nodes = 0;
    /// Best clique size after the initial heuristic and after each top-level
    /// task, in task order.
    std::vector<std::size_t> best_trace;
};

struct CliqueResult {
    SearchStatus status = SearchStatus::exact;
    std::size_t optimum = 0;
    /// Sorted vertex indices. When exact, the lexicographically smallest
    /// maximum clique.
    std::vector<std::size_t> witness;
    CliqueStats stats;
};

struct CliqueOptions {
    Budget budget;
    /// Restricts top-level branching to these vertices (each task also drops
    /// the groups of earlier tasks), and skips the witness pass. Used for
    /// symmetry reduction: `groups[k]` lists the vertices equivalent to
    /// `roots[k]`.
    std::vector<std::size_t> roots;
    std::vector<std::vector<std::size_t>> groups;
    TraceSink trace;
};

/// Exact maximum clique by branch and bound with greedy-coloring bounds.
/// Results (optimum, witness, stats) do not depend on the thread count.
CliqueResult max_clique(const Graph& graph, const CliqueOptions& options);

/// Largest clique found by a greedy max-degree descent; a valid lower bound.
std::vector<std::size_t> greedy_clique(const Graph& graph);

}  // namespace qsum
