#pragma once

#include <compare>
#include <functional>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsum/combinatorics.hpp"
#include "qsum/index_set.hpp"

namespace qsum {

inline constexpr int kMaxAlphabet = 255;

/// A vector of length n over the alphabet {0, ..., q}.
class QVec {
public:
    using Entry = std::uint8_t;

    QVec() = default;
    QVec(int q, std::vector<Entry> entries);
    QVec(int q, std::initializer_list<int> entries);
    static QVec from_ints(int q, std::span<const int> entries);
    static QVec zero(int n, int q);

    int q() const noexcept { return q_; }
    int n() const noexcept { return static_cast<int>(entries_.size()); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    int operator[](std::size_t i) const { return entries_[i]; }

    int rank() const noexcept;
    /// Indices of nonzero entries, 1-based.
    IndexSet support() const;
    int support_size() const noexcept;
    QVec complement() const;

    /// Coordinatewise x <= y.
    bool dominated_by(const QVec& other) const;

    std::string to_string() const;

    friend bool operator==(const QVec&, const QVec&) = default;

private:
    int q_ = 1;
    std::vector<Entry> entries_;
};

void require_same_shape(const QVec& x, const QVec& y);

/// Colex order: decided by the largest coordinate in which x and y differ.
std::strong_ordering colex_compare(const QVec& x, const QVec& y);

struct ColexLess {
    bool operator()(const QVec& x, const QVec& y) const { return colex_compare(x, y) < 0; }
};

struct Measures {
    int rank;
    IndexSet support;
    QVec complement;
};

Measures measures(const QVec& x);

/// Deduplicated, colex-sorted collection of vectors sharing (n, q).
class VecFamily {
public:
    VecFamily() = default;
    VecFamily(int n, int q);
    /// Sorts and deduplicates; throws DimensionError on a shape mismatch.
    VecFamily(int n, int q, std::vector<QVec> members);

    int n() const noexcept { return n_; }
    int q() const noexcept { return q_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<QVec>& members() const noexcept { return members_; }
    const QVec& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(const QVec& x) const;
    /// Position of x in the colex-sorted member list.
    std::optional<std::size_t> index_of(const QVec& x) const;

    friend bool operator==(const VecFamily&, const VecFamily&) = default;

private:
    int n_ = 0;
    int q_ = 1;
    std::vector<QVec> members_;
};

enum class Mode { sum, multisum };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

/// Intersection regime for families: pairs must reach `t` under `mode` with
/// threshold `s`.
struct PredicateSpec {
    Mode mode = Mode::sum;
    int s = 1;
    int t = 1;
    bool distinct_only = true;

    void validate() const;
};

/// |x ∩_s y| in sum mode, Σ (x_i + y_i - s + 1)^+ in multisum mode.
int intersection_size(const QVec& x, const QVec& y, int s, Mode mode = Mode::sum);

bool satisfies(const QVec& x, const QVec& y, const PredicateSpec& p);

struct FamilyCheck {
    bool holds = true;
    std::optional<std::pair<QVec, QVec>> witness;
};

/// Checks every pair of distinct members (and each member against itself when
/// `distinct_only` is false). The witness is the first violating pair (i <= j)
/// in colex order of the members.
FamilyCheck family_check(const VecFamily& family, const PredicateSpec& p);

/// Which part of Q^n to enumerate.
struct Slice {
    enum class Kind { all, rank, support };
    Kind kind = Kind::all;
    int r = 0;

    static Slice everything() { return {Kind::all, 0}; }
    static Slice of_rank(int r) { return {Kind::rank, r}; }
    static Slice of_support(int r) { return {Kind::support, r}; }

    bool admits(const QVec& x) const;
    std::string to_string() const;
};

/// All vectors of the slice in colex order.
VecFamily enumerate_slice(int n, int q, Slice slice);

/// Streams the slice in colex order without materializing it.
void for_each_in_slice(int n, int q, Slice slice,
                       const std::function<void(std::span<const QVec::Entry>)>& visit);

/// |Q(n, r)|; zero for r < 0 or r > qn.
Count rank_slice_count(int n, int q, int r);
/// Number of vectors in Q^n with support size exactly r.
Count support_slice_count(int n, int q, int r);

}  // namespace qsum
