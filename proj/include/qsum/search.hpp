#pragma once

#include <optional>
#include <string>

#include "qsum/clique.hpp"
#include "qsum/constructions.hpp"
#include "qsum/qvec.hpp"

namespace qsum {

struct SearchProblem {
    int n = 1;
    int q = 1;
    Slice universe = Slice::everything();
    PredicateSpec predicate;
    Budget budget;
    /// Quotient by coordinate permutations; reports the optimum only.
    bool symmetry_reduction = false;
};

struct SearchResult {
    SearchStatus status = SearchStatus::exact;
    std::size_t optimum = 0;
    /// Colex-minimal maximum family when exact (empty under symmetry
    /// reduction); otherwise the best family found.
    VecFamily witness;
    std::size_t universe_size = 0;
    std::size_t edges = 0;
    CliqueStats stats;
};

/// Exact maximum family inside the universe slice satisfying the predicate,
/// as a maximum clique of the compatibility graph.
SearchResult max_family(const SearchProblem& problem, const TraceSink& trace = {});

/// M(n): largest 3-multisum 3-intersecting family in the rank-(n+1) slice of
/// {0,1,2}^n.
SearchResult m_of_n(int n, const Budget& budget, const TraceSink& trace = {});

enum class Verdict { verified, violated, inconclusive };
const char* to_string(Verdict v);

struct CertifyReport {
    BoundKind kind = BoundKind::nonuniform;
    BoundParams params;
    Count formula = 0;
    Count construction = 0;
    bool construction_valid = true;
    SearchResult search;
    /// Smallest n the theorem guarantees the bound for, when it has one.
    std::optional<Count> threshold;
    bool threshold_met = true;
    bool agree = false;
    Verdict verdict = Verdict::inconclusive;
    std::string note;
};

struct ConstructionResult {
    /// Parameters after defaults are filled in (s, and M(n) for t = 3).
    BoundParams params;
    VecFamily family;
    PredicateSpec predicate;
    Count formula = 0;
    bool valid = true;
};

/// The extremal construction matching `kind`, checked against its predicate.
ConstructionResult build_construction(BoundKind kind, const BoundParams& params,
                                      const Budget& budget = {}, const TraceSink& trace = {});

/// Evaluates the bound, builds the matching construction and runs the exact
/// search, then compares the three.
CertifyReport certify(BoundKind kind, const BoundParams& params, const Budget& budget,
                      const TraceSink& trace = {});

}  // namespace qsum
