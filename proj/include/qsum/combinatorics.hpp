#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qsum {

using Count = std::uint64_t;

Count checked_add(Count a, Count b);
Count checked_mul(Count a, Count b);
Count checked_pow(Count base, unsigned exp);

/// C(n, k); zero when k < 0, k > n or n < 0.
Count binomial(long long n, long long k);

/// (sum parts)! / prod(parts!).
Count multinomial(std::span<const int> parts);

/// Calls `visit` with every k-subset of {0, ..., n-1} in colex order.
/// Subsets are passed as increasing index vectors.
template <class Visit>
void for_each_subset(int n, int k, Visit&& visit) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(static_cast<const std::vector<int>&>(idx));
        // Colex successor: bump the lowest index that can move up.
        int i = 0;
        while (i < k && idx[static_cast<std::size_t>(i)] + 1 ==
                            (i + 1 < k ? idx[static_cast<std::size_t>(i + 1)] : n)) {
            ++i;
        }
        if (i == k) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) idx[static_cast<std::size_t>(j)] = j;
    }
}

}  // namespace qsum
