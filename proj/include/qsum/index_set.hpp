#pragma once

#include <compare>
#include <initializer_list>
#include <vector>

namespace qsum {

/// Finite set of positive integers kept as a strictly increasing sequence.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::initializer_list<int> elements);
    explicit IndexSet(std::vector<int> elements);

    const std::vector<int>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(int e) const;

    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::vector<int> elements_;
};

/// Colex order on sets: A < B iff the largest element of the symmetric
/// difference lies in B.
std::strong_ordering colex_compare(const IndexSet& a, const IndexSet& b);

struct SetColexLess {
    bool operator()(const IndexSet& a, const IndexSet& b) const { return colex_compare(a, b) < 0; }
};

}  // namespace qsum
