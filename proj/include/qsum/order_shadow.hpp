#pragma once

#include <cstddef>
#include <vector>

#include "qsum/combinatorics.hpp"
#include "qsum/index_set.hpp"
#include "qsum/qvec.hpp"
#include "qsum/status.hpp"

namespace qsum {

/// A family of finite sets, colex-sorted and duplicate-free after
/// `canonical_sets`.
using SetFamily = std::vector<IndexSet>;

SetFamily canonical_sets(SetFamily family);

/// Δ applied `levels` times to an r-rank uniform vector family. The shadow of
/// a rank-0 vector is empty.
VecFamily shadow(const VecFamily& family, int levels = 1);

/// Δ applied `levels` times to a uniform set family.
SetFamily shadow(const SetFamily& family, int levels = 1);

/// The m colex-smallest members of Q(n, r).
VecFamily initial_segment(int n, int q, int r, std::size_t m);
/// The m colex-largest members of Q(n, r).
VecFamily final_segment(int n, int q, int r, std::size_t m);

VecFamily complement(const VecFamily& family);

/// Characteristic vector of a subset of [n].
QVec characteristic_vector(const IndexSet& set, int n);

/// τ_{i,j}: swaps coordinates i and j (1-based) when x_i < x_j.
QVec shift(const QVec& x, int i, int j);

/// Family shift: a member moves to its image only if the image is not
/// already present. Preserves the family size.
VecFamily shift(const VecFamily& family, int i, int j);

/// Repeats τ_{i,j} over all i < j until the family is left-shifted.
VecFamily left_shift(const VecFamily& family);

bool is_left_shifted(const VecFamily& family);

struct ShadowOracleResult {
    SearchStatus status = SearchStatus::exact;
    std::size_t min_size = 0;
    std::size_t segment_shadow_size = 0;
    bool achieved_by_segment = false;
    Count subsets_examined = 0;
};

/// Scans every m-subset of Q(n, r) for the minimum shadow size. Refuses
/// (status budget_exceeded, nothing examined) when C(|Q(n,r)|, m) exceeds
/// `max_subsets`.
ShadowOracleResult min_shadow_oracle(int n, int q, int r, std::size_t m, Count max_subsets);

}  // namespace qsum
