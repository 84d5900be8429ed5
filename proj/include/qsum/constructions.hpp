#pragma once

#include <optional>
#include <span>
#include <string>

#include "qsum/combinatorics.hpp"
#include "qsum/index_set.hpp"
#include "qsum/qvec.hpp"

namespace qsum {

/// Which extremal bound a formula evaluation or certification refers to.
enum class BoundKind {
    support_uniform,     // r-support uniform s-sum intersecting
    rank_uniform,        // r-rank uniform (q+1)-sum intersecting
    support_uniform_t,   // r-support uniform s-sum t-intersecting
    nonuniform,          // (q+1)-sum intersecting in Q^n
    nonuniform_small_s,  // s-sum intersecting in Q^n with s <= q
    katona_multisum_2,   // 3-multisum 2-intersecting in {0,1,2}^n
    katona_multisum_3,   // 3-multisum 3-intersecting in {0,1,2}^n
};

const char* to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);

struct BoundParams {
    int n = 0;
    int q = 0;
    int s = 0;
    int r = 0;
    int t = 1;
    /// Maximum 3-multisum 3-intersecting family in the rank-(n+1) slice; only
    /// read by katona_multisum_3.
    std::optional<Count> m_of_n;
};

/// Exact value of the extremal bound for `kind`.
Count bound(BoundKind kind, const BoundParams& p);

/// Smallest n for which the support-uniform bound is guaranteed: q r^2.
Count support_uniform_threshold(int q, int r);
/// Admissible n for the t-intersecting bound: q^t r (r + t).
Count support_uniform_t_threshold(int q, int r, int t);

/// Star-type extremal family for r-support uniform s-sum intersection.
/// Even s: `anchor` is one coordinate i and the family is every support-r
/// vector with x_i >= s/2. Odd s: `anchor` is an ordered r-tuple of distinct
/// coordinates and the family is the tuple-indexed star plus the vector
/// carrying floor(s/2) on the whole tuple. Coordinates are 1-based.
VecFamily support_star(int n, int q, int s, int r, std::span<const int> anchor);

/// Extremal family for r-support uniform s-sum t-intersection. For even s,
/// `fixed` is the t-set T (defaults to {1..t}); odd s ignores it.
VecFamily t_intersecting_construction(int n, int q, int s, int r, int t, const IndexSet& fixed = {});

/// Size of the odd-s t-intersecting construction, counted by generation.
Count f_size(int n, int q, int s, int r, int t);

struct RecursionCheck {
    /// 1 for r >= 2t, 2 for t < r < 2t, 0 when r == t (no recursion).
    int branch = 0;
    Count direct = 0;
    Count recursive = 0;
    bool recursion_agrees = true;
    /// Strict lower bound (q - floor(s/2))^t q^(r-t) C(n-t, r-t) < f for r > t.
    bool lower_bound_applicable = false;
    Count lower_bound = 0;
    bool lower_bound_holds = true;

    bool ok() const { return recursion_agrees && lower_bound_holds; }
};

RecursionCheck f_recursion_check(int n, int q, int s, int r, int t);

/// Colex-top extremal family for r-rank uniform (q+1)-sum intersection.
VecFamily rank_extremal(int n, int q, int r);

/// Extremal non-uniform s-sum intersecting family (s <= q+1). For s > 2q no
/// two vectors can intersect; `allow_trivial` then returns {(q,...,q)}.
VecFamily nonuniform_extremal(int n, int q, int s, bool allow_trivial = false);

/// Vectors of {0,1,2}^n with rank >= n+1 (t = 2) or rank >= n+2 (t = 3).
VecFamily katona_upper_family(int n, int t);

}  // namespace qsum
