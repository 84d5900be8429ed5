#include "qsum/constructions.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "qsum/errors.hpp"

namespace qsum {

namespace {

constexpr std::array<std::pair<BoundKind, const char*>, 7> kBoundNames{{
    {BoundKind::support_uniform, "support_uniform"},
    {BoundKind::rank_uniform, "rank_uniform"},
    {BoundKind::support_uniform_t, "support_uniform_t"},
    {BoundKind::nonuniform, "nonuniform"},
    {BoundKind::nonuniform_small_s, "nonuniform_small_s"},
    {BoundKind::katona_multisum_2, "katona_multisum_2"},
    {BoundKind::katona_multisum_3, "katona_multisum_3"},
}};

std::string str(int v) { return std::to_string(v); }

// Generators return only families that pass their own predicate.
VecFamily self_verified(VecFamily family, const PredicateSpec& p, const char* what) {
    auto check = family_check(family, p);
    if (!check.holds)
        throw Error(std::string(what) + " produced a family violating its predicate: " +
                    check.witness->first.to_string() + " vs " + check.witness->second.to_string());
    return family;
}

VecFamily filter_slice(int n, int q, Slice slice, const std::function<bool(std::span<const QVec::Entry>)>& keep) {
    std::vector<QVec> out;
    for_each_in_slice(n, q, slice, [&](std::span<const QVec::Entry> e) {
        if (keep(e)) out.emplace_back(q, std::vector<QVec::Entry>(e.begin(), e.end()));
    });
    return VecFamily(n, q, std::move(out));
}

void check_support_params(int n, int q, int s, int r) {
    if (q < 1) throw ParameterError("q must be >= 1");
    if (!(q < s && s <= 2 * q))
        throw ParameterError("support-uniform constructions need q < s <= 2q (q=" + str(q) + ", s=" + str(s) + ")");
    if (r < 1 || r > n) throw ParameterError("support size r must satisfy 1 <= r <= n (r=" + str(r) + ", n=" + str(n) + ")");
}

void check_odd_t_params(int n, int q, int s, int r, int t) {
    if (s % 2 == 0) throw ParameterError("odd-s construction called with even s=" + str(s));
    if (!(q < s && s < 2 * q))
        throw ParameterError("odd-s t-intersecting construction needs q < s < 2q (q=" + str(q) + ", s=" + str(s) + ")");
    if (!(n >= r && r >= t && t >= 1))
        throw ParameterError("need n >= r >= t >= 1 (n=" + str(n) + ", r=" + str(r) + ", t=" + str(t) + ")");
}

// Second-row membership of the odd-s t-construction: scanning coordinates
// 1..r, the first t entries above floor(s/2) are reached while every earlier
// entry equals floor(s/2).
bool odd_t_row_member(std::span<const QVec::Entry> e, int s, int r, int t) {
    const int h = s / 2;
    int above = 0;
    for (int i = 0; i < r; ++i) {
        const int v = e[static_cast<std::size_t>(i)];
        if (v > h) {
            if (++above == t) return true;
        } else if (v != h) {
            return false;
        }
    }
    return false;
}

// The vectors x_{T'}: support [r], ceil(s/2) on T', floor(s/2) elsewhere.
std::vector<QVec> odd_t_special_vectors(int n, int q, int s, int r, int t) {
    std::vector<QVec> out;
    const int h = s / 2;
    for_each_subset(r, t - 1, [&](const std::vector<int>& chosen) {
        std::vector<QVec::Entry> e(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < r; ++i) e[static_cast<std::size_t>(i)] = static_cast<QVec::Entry>(h);
        for (int i : chosen) e[static_cast<std::size_t>(i)] = static_cast<QVec::Entry>(h + 1);
        out.emplace_back(q, std::move(e));
    });
    return out;
}

}  // namespace

const char* to_string(BoundKind kind) {
    for (const auto& [k, name] : kBoundNames)
        if (k == kind) return name;
    return "?";
}

BoundKind parse_bound_kind(const std::string& name) {
    for (const auto& [k, n] : kBoundNames)
        if (name == n) return k;
    throw ParameterError("unknown bound kind '" + name + "'");
}

Count support_uniform_threshold(int q, int r) {
    return checked_mul(static_cast<Count>(q), checked_mul(static_cast<Count>(r), static_cast<Count>(r)));
}

Count support_uniform_t_threshold(int q, int r, int t) {
    return checked_mul(checked_pow(static_cast<Count>(q), static_cast<unsigned>(t)),
                       checked_mul(static_cast<Count>(r), static_cast<Count>(r + t)));
}

// ---- generators ----

VecFamily support_star(int n, int q, int s, int r, std::span<const int> anchor) {
    check_support_params(n, q, s, r);
    for (int a : anchor)
        if (a < 1 || a > n) throw ParameterError("anchor coordinate " + str(a) + " outside 1.." + str(n));

    VecFamily family;
    if (s % 2 == 0) {
        if (anchor.size() != 1)
            throw ParameterError("even s takes a single anchor coordinate, got " + str(static_cast<int>(anchor.size())));
        const auto i = static_cast<std::size_t>(anchor[0] - 1);
        family = filter_slice(n, q, Slice::of_support(r),
                              [&](std::span<const QVec::Entry> e) { return 2 * e[i] >= s; });
    } else {
        if (anchor.size() != static_cast<std::size_t>(r))
            throw ParameterError("odd s takes an ordered r-tuple anchor (r=" + str(r) + "), got " +
                                 str(static_cast<int>(anchor.size())) + " coordinates");
        if (std::set<int>(anchor.begin(), anchor.end()).size() != anchor.size())
            throw ParameterError("anchor tuple coordinates must be distinct");
        const int h = s / 2;
        family = filter_slice(n, q, Slice::of_support(r), [&](std::span<const QVec::Entry> e) {
            for (int a : anchor) {
                const int v = e[static_cast<std::size_t>(a - 1)];
                if (v > h) return true;
                if (v != h) return false;
            }
            return true;  // floor(s/2) on the whole tuple: the special vector
        });
    }
    return self_verified(std::move(family), {Mode::sum, s, 1, true}, "support_star");
}

VecFamily t_intersecting_construction(int n, int q, int s, int r, int t, const IndexSet& fixed) {
    if (s % 2 == 0) {
        check_support_params(n, q, s, r);
        if (!(r >= t && t >= 1)) throw ParameterError("need r >= t >= 1 (r=" + str(r) + ", t=" + str(t) + ")");
        std::vector<int> T = fixed.elements();
        if (T.empty())
            for (int i = 1; i <= t; ++i) T.push_back(i);
        if (static_cast<int>(T.size()) != t)
            throw ParameterError("fixed set T must have exactly t=" + str(t) + " elements");
        for (int i : T)
            if (i > n) throw ParameterError("fixed set element " + str(i) + " exceeds n=" + str(n));
        auto family = filter_slice(n, q, Slice::of_support(r), [&](std::span<const QVec::Entry> e) {
            for (int i : T)
                if (2 * e[static_cast<std::size_t>(i - 1)] < s) return false;
            return true;
        });
        return self_verified(std::move(family), {Mode::sum, s, t, true}, "t_intersecting_construction");
    }

    check_odd_t_params(n, q, s, r, t);
    std::vector<QVec> members;
    for_each_in_slice(n, q, Slice::of_support(r), [&](std::span<const QVec::Entry> e) {
        if (odd_t_row_member(e, s, r, t)) members.emplace_back(q, std::vector<QVec::Entry>(e.begin(), e.end()));
    });
    auto specials = odd_t_special_vectors(n, q, s, r, t);
    members.insert(members.end(), specials.begin(), specials.end());
    return self_verified(VecFamily(n, q, std::move(members)), {Mode::sum, s, t, true},
                         "t_intersecting_construction");
}

Count f_size(int n, int q, int s, int r, int t) {
    check_odd_t_params(n, q, s, r, t);
    Count count = binomial(r, t - 1);
    for_each_in_slice(n, q, Slice::of_support(r), [&](std::span<const QVec::Entry> e) {
        if (odd_t_row_member(e, s, r, t)) count = checked_add(count, 1);
    });
    return count;
}

RecursionCheck f_recursion_check(int n, int q, int s, int r, int t) {
    check_odd_t_params(n, q, s, r, t);
    RecursionCheck rc;
    rc.direct = f_size(n, q, s, r, t);
    const Count wide = static_cast<Count>(q - s / 2);
    const Count top = checked_mul(checked_mul(binomial(n - t, r - t), checked_pow(static_cast<Count>(q),
                                                                                   static_cast<unsigned>(r - t))),
                                  checked_pow(wide, static_cast<unsigned>(t)));
    if (r > t) {
        rc.lower_bound_applicable = true;
        rc.lower_bound = top;
        rc.lower_bound_holds = rc.direct > top;
    }
    if (r == t) return rc;

    rc.branch = r >= 2 * t ? 1 : 2;
    Count total = top;
    int smallest = 0;
    if (rc.branch == 2) {
        total = checked_add(total, binomial(t, 2 * t - r - 1));
        smallest = 2 * t - r;
    }
    // Subsets S of [t] enter only through |S| = k.
    for (int k = smallest; k < t; ++k) {
        const Count term = checked_mul(checked_mul(binomial(t, k), checked_pow(wide, static_cast<unsigned>(k))),
                                       f_size(n - t, q, s, r - t, t - k));
        total = checked_add(total, term);
    }
    rc.recursive = total;
    rc.recursion_agrees = total == rc.direct;
    return rc;
}

VecFamily rank_extremal(int n, int q, int r) {
    if (n < 1 || q < 1) throw ParameterError("rank_extremal needs n, q >= 1");
    if (!(2 * r >= q + 1 && 2 * r <= q * n))
        throw ParameterError("rank_extremal is defined for (q+1)/2 <= r <= qn/2 (q=" + str(q) + ", n=" + str(n) +
                             ", r=" + str(r) + ")");
    const auto last = static_cast<std::size_t>(n - 1);
    VecFamily family;
    if ((q + 1) % 2 == 0) {
        const int k = (q + 1) / 2;
        family = filter_slice(n, q, Slice::of_rank(r), [&](std::span<const QVec::Entry> e) { return e[last] >= k; });
    } else {
        const int k = q / 2;
        const int depth = (r - 1) / k;
        std::vector<QVec> members;
        for_each_in_slice(n, q, Slice::of_rank(r), [&](std::span<const QVec::Entry> e) {
            // Walk down from the last coordinate over entries equal to k; the
            // first other entry decides.
            for (int j = 0; j <= depth; ++j) {
                const int v = e[last - static_cast<std::size_t>(j)];
                if (v > k) {
                    members.emplace_back(q, std::vector<QVec::Entry>(e.begin(), e.end()));
                    return;
                }
                if (v != k) return;
            }
        });
        std::vector<QVec::Entry> star(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < depth; ++j) star[last - static_cast<std::size_t>(j)] = static_cast<QVec::Entry>(k);
        star[last - static_cast<std::size_t>(depth)] = static_cast<QVec::Entry>(r - depth * k);
        members.emplace_back(q, std::move(star));
        family = VecFamily(n, q, std::move(members));
    }
    return self_verified(std::move(family), {Mode::sum, q + 1, 1, true}, "rank_extremal");
}

VecFamily nonuniform_extremal(int n, int q, int s, bool allow_trivial) {
    if (n < 1 || q < 1 || s < 1) throw ParameterError("nonuniform_extremal needs n, q, s >= 1");
    if (s > 2 * q) {
        if (!allow_trivial)
            throw ParameterError("s=" + str(s) + " > 2q: no two vectors s-sum intersect; pass the trivial flag for {(q,...,q)}");
        std::vector<QVec> top{QVec(q, std::vector<QVec::Entry>(static_cast<std::size_t>(n), static_cast<QVec::Entry>(q)))};
        return VecFamily(n, q, std::move(top));
    }
    if (s > q + 1)
        throw ParameterError("no extremal non-uniform construction for q+1 < s <= 2q (q=" + str(q) + ", s=" + str(s) + ")");

    // Entries >= s intersect everything. Below that the alphabet is {0..s-1}
    // and we take the upper half of the complement pairing x <-> (s-1) - x.
    const int b = s - 1;
    auto family = filter_slice(n, q, Slice::everything(), [&](std::span<const QVec::Entry> e) {
        int rank = 0;
        for (auto v : e) {
            if (v >= s) return true;
            rank += v;
        }
        if (2 * rank != b * n) return 2 * rank > b * n;
        for (std::size_t i = e.size(); i-- > 0;) {
            const int mirrored = b - e[i];
            if (e[i] != mirrored) return e[i] > mirrored;
        }
        return true;  // self-complementary
    });
    return self_verified(std::move(family), {Mode::sum, s, 1, true}, "nonuniform_extremal");
}

VecFamily katona_upper_family(int n, int t) {
    if (n < 1) throw ParameterError("katona_upper_family needs n >= 1");
    if (t != 2 && t != 3) throw ParameterError("katona_upper_family supports t in {2, 3}, got " + str(t));
    const int min_rank = n + t - 1;
    auto family = filter_slice(n, 2, Slice::everything(), [&](std::span<const QVec::Entry> e) {
        int rank = 0;
        for (auto v : e) rank += v;
        return rank >= min_rank;
    });
    return self_verified(std::move(family), {Mode::multisum, 3, t, true}, "katona_upper_family");
}

// ---- bound formulas ----

namespace {

Count rank_uniform_bound(int n, int q, int r) {
    if (n < 1 || q < 1) throw ParameterError("rank_uniform bound needs n, q >= 1");
    if (!(2 * r >= q + 1 && 2 * r <= q * n))
        throw ParameterError("rank_uniform bound holds for (q+1)/2 <= r <= qn/2");
    Count total = 0;
    if ((q + 1) % 2 == 0) {
        for (int j = (q + 1) / 2; j <= q; ++j) total = checked_add(total, rank_slice_count(n - 1, q, r - j));
        return total;
    }
    const int k = q / 2;
    const int depth = 2 * (r - 1) / q;
    for (int j = k + 1; j <= q; ++j)
        for (int i = 1; i <= depth; ++i)
            total = checked_add(total, rank_slice_count(n - i, q, r - j - (i - 1) * k));
    return checked_add(total, 1);
}

Count cube_rank_range(int n, int lo) {
    Count total = 0;
    for (int r = lo; r <= 2 * n; ++r) total = checked_add(total, rank_slice_count(n, 2, r));
    return total;
}

}  // namespace

Count bound(BoundKind kind, const BoundParams& p) {
    const auto Q = static_cast<Count>(p.q);
    switch (kind) {
        case BoundKind::support_uniform: {
            check_support_params(p.n, p.q, p.s, p.r);
            if (p.s % 2 == 0)
                return checked_mul(checked_mul(static_cast<Count>(p.q - p.s / 2 + 1),
                                               checked_pow(Q, static_cast<unsigned>(p.r - 1))),
                                   binomial(p.n - 1, p.r - 1));
            Count sum = 0;
            for (int i = 1; i <= p.r; ++i)
                sum = checked_add(sum, checked_mul(binomial(p.n - i, p.r - i), checked_pow(Q, static_cast<unsigned>(p.r - i))));
            return checked_add(1, checked_mul(static_cast<Count>(p.q - (p.s + 1) / 2 + 1), sum));
        }
        case BoundKind::rank_uniform:
            if (p.s != 0 && p.s != p.q + 1) throw ParameterError("rank_uniform bound is for s = q+1");
            return rank_uniform_bound(p.n, p.q, p.r);
        case BoundKind::support_uniform_t: {
            if (p.s % 2 != 0) return f_size(p.n, p.q, p.s, p.r, p.t);
            check_support_params(p.n, p.q, p.s, p.r);
            if (!(p.r >= p.t && p.t >= 1)) throw ParameterError("need r >= t >= 1");
            return checked_mul(checked_mul(checked_pow(static_cast<Count>(p.q - p.s / 2 + 1), static_cast<unsigned>(p.t)),
                                           checked_pow(Q, static_cast<unsigned>(p.r - p.t))),
                               binomial(p.n - p.t, p.r - p.t));
        }
        case BoundKind::nonuniform: {
            if (p.n < 1 || p.q < 1) throw ParameterError("nonuniform bound needs n, q >= 1");
            if (p.s != 0 && p.s != p.q + 1) throw ParameterError("nonuniform bound is for s = q+1");
            const Count all = checked_pow(Q + 1, static_cast<unsigned>(p.n));
            return all / 2 + all % 2;
        }
        case BoundKind::nonuniform_small_s: {
            if (p.n < 1 || p.q < 1) throw ParameterError("nonuniform_small_s bound needs n, q >= 1");
            if (!(1 <= p.s && p.s <= p.q)) throw ParameterError("nonuniform_small_s bound needs 1 <= s <= q");
            const Count all = checked_pow(Q + 1, static_cast<unsigned>(p.n));
            const Count low = checked_pow(static_cast<Count>(p.s), static_cast<unsigned>(p.n));
            return all - low + (low / 2 + low % 2);
        }
        case BoundKind::katona_multisum_2:
            if (p.n < 1) throw ParameterError("katona bound needs n >= 1");
            return cube_rank_range(p.n, p.n + 1);
        case BoundKind::katona_multisum_3:
            if (p.n < 1) throw ParameterError("katona bound needs n >= 1");
            if (!p.m_of_n) throw ParameterError("katona_multisum_3 bound needs M(n)");
            return checked_add(cube_rank_range(p.n, p.n + 2), *p.m_of_n);
    }
    throw ParameterError("unknown bound kind");
}

}  // namespace qsum
