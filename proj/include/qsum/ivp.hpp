#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsum/clique.hpp"
#include "qsum/qvec.hpp"

namespace qsum {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class SystemKind { strong, weak };

const char* to_string(SystemKind k);
SystemKind parse_system_kind(const std::string& s);

struct VecPair {
    QVec x;
    QVec y;

    friend bool operator==(const VecPair&, const VecPair&) = default;
};

/// Ordered list of vector pairs over a common ground length n.
class PairSystem {
public:
    PairSystem(int n, int q, int s, SystemKind kind, std::vector<VecPair> pairs = {});

    int n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    int s() const noexcept { return s_; }
    SystemKind kind() const noexcept { return kind_; }
    const std::vector<VecPair>& pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }

    void add(VecPair pair);
    /// Largest |S_x| and |S_y| over the pairs: the (a, b) of an (a,b)-system.
    std::pair<int, int> support_bounds() const;

    friend bool operator==(const PairSystem&, const PairSystem&) = default;

private:
    int n_;
    int q_;
    int s_;
    SystemKind kind_;
    std::vector<VecPair> pairs_;
};

struct SystemCheck {
    bool valid = true;
    /// 1-based (i, j); i == j marks a pair that intersects itself.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Validity of a strong or weak s-sum system. Pairs are scanned in order; for
/// each i the within-pair condition comes first, then j = 1..m.
SystemCheck system_check(const PairSystem& system);

/// a = |S_x \ S_y|, b = |S_y \ S_x|, c = |S_x ∩ S_y|.
struct AbcProfile {
    int a = 0;
    int b = 0;
    int c = 0;
};

AbcProfile abc_profile(const VecPair& pair);

bool is_saturated(const PairSystem& system);

/// Replaces every y by q - x on the pair's support union (s must be q+1).
PairSystem saturate(const PairSystem& system);

/// (q+t)-sum system, t > 1, to a (q-t+2)-sum system over {0..q-t+1} by
/// clipping every entry to max(v - t + 1, 0).
PairSystem reduce_parameter(const PairSystem& system);

/// One strong s-sum pair per 3-partition (A, B, C) of [a+b-c] with
/// |A| = a-c, |B| = b-c, |C| = c.
PairSystem construct_abc(int a, int b, int c, int s, int q);
BigInt abc_cardinality(int a, int b, int c);

/// One strong (q+1)-sum pair per ordered partition of [N] into parts of the
/// given sizes; x is i and y is q-i on part i.
PairSystem construct_alpha(std::span<const int> alphas, int q);
BigInt alpha_cardinality(std::span<const int> alphas);

struct FkResult {
    BigInt value;
    int x = 0, y = 0, z = 0;
};

/// max (x+y+z)!/(x! y! z!) over x + z <= k, y + z <= k; ties go to the
/// lexicographically smallest (x, y, z).
FkResult f_k(int k);

struct LymReport {
    Rational sum;
    int a = 0;
    int b = 0;
    int bound = 0;
    bool holds = true;
};

/// Σ a_j! b_j! c_j! / (a_j+b_j+c_j)! against min(a, b) for a valid strong
/// 3-sum system over {0,1,2}.
LymReport lym_strong(const PairSystem& system);

enum class AlphaScope { pair_local, global };

/// α_i for one pair: coordinates with x = i, counted over the pair's support
/// union (pair_local) or all n coordinates (global).
std::vector<int> alpha_profile(const VecPair& pair, int q, AlphaScope scope);

/// Σ_j Π_i p_i^{α^j_i} for a saturated weak (q+1)-sum system.
double weighted_sum(const PairSystem& system, std::span<const double> p,
                    AlphaScope scope = AlphaScope::pair_local);
Rational weighted_sum(const PairSystem& system, std::span<const Rational> p,
                      AlphaScope scope = AlphaScope::pair_local);

struct DisjointnessReport {
    std::uint64_t trials = 0;
    std::uint64_t event_hits = 0;
    std::uint64_t co_occurrences = 0;
    bool disjoint() const { return co_occurrences == 0; }
};

/// Samples random partitions (X_0..X_q) of the ground set and counts pairs of
/// events E_j = ∧_i (A^j_i ⊆ X_i) that hold together.
DisjointnessReport empirical_disjointness(const PairSystem& system, std::span<const double> p,
                                          std::uint64_t trials, std::uint64_t seed,
                                          AlphaScope scope = AlphaScope::pair_local);

/// Random valid system grown greedily from random candidate pairs with
/// supports of size <= max_support.
PairSystem random_system(int n, int q, int s, SystemKind kind, int max_support, int attempts,
                         std::mt19937_64& rng);

struct SystemSearchResult {
    SearchStatus status = SearchStatus::exact;
    std::size_t optimum = 0;
    PairSystem witness;
    std::size_t candidates = 0;
    int n_cap = 0;
    CliqueStats stats;
    /// f(k) and k f(k), reported for q = 2.
    std::optional<BigInt> f_k;
    std::optional<BigInt> k_f_k;
};

/// m(q,k) (strong) or m'(q,k) (weak) over a ground set capped at n_cap
/// coordinates.
SystemSearchResult max_system(int q, int k, SystemKind kind, int n_cap, const Budget& budget,
                              const TraceSink& trace = {});

/// α for construct_alpha at the limit-theorem proportions for a given k:
/// middle parts p_0^2-weighted, outer parts equal, both supports of size k.
std::vector<int> limit_alphas(int q, int k);
/// (√q + 1)^2.
double limit_base(int q);

}  // namespace qsum
