#include "qsum/combinatorics.hpp"

#include <numeric>

#include "qsum/errors.hpp"

namespace qsum {

Count checked_add(Count a, Count b) {
    Count r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

Count checked_mul(Count a, Count b) {
    Count r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

Count checked_pow(Count base, unsigned exp) {
    Count r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

__extension__ using Wide = unsigned __int128;

Count binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Wide r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * static_cast<Wide>(n - k + i) / static_cast<Wide>(i);
        if (r > static_cast<Wide>(UINT64_MAX)) throw OverflowError("binomial coefficient overflow");
    }
    return static_cast<Count>(r);
}

Count multinomial(std::span<const int> parts) {
    Count r = 1;
    long long total = 0;
    for (int p : parts) {
        if (p < 0) throw ParameterError("multinomial part must be non-negative");
        total += p;
        r = checked_mul(r, binomial(total, p));
    }
    return r;
}

}  // namespace qsum
