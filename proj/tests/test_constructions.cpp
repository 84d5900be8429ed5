#include <doctest.h>

#include "oracles.hpp"
#include "qsum/constructions.hpp"
#include "qsum/errors.hpp"

using namespace qsum;

namespace {

std::vector<oracle::Vec> ints(const VecFamily& f) {
    std::vector<oracle::Vec> out;
    for (const auto& v : f) out.emplace_back(v.entries().begin(), v.entries().end());
    return out;
}

VecFamily fam(int q, std::initializer_list<std::initializer_list<int>> members) {
    std::vector<QVec> v;
    for (auto m : members) v.emplace_back(q, m);
    const int n = v.front().n();
    return VecFamily(n, q, std::move(v));
}

std::uint64_t slice_size(int n, int q, int r) {
    if (r < 0 || n < 0) return 0;
    return oracle::rank_slice(n, q, r).size();
}

// The displayed bound formulas, evaluated with oracle arithmetic only.
std::uint64_t support_formula(int n, int q, int s, int r) {
    if (s % 2 == 0) return (q - s / 2 + 1) * oracle::ipow(q, r - 1) * oracle::binom(n - 1, r - 1);
    std::uint64_t sum = 0;
    for (int i = 1; i <= r; ++i) sum += oracle::binom(n - i, r - i) * oracle::ipow(q, r - i);
    return 1 + (q - (s + 1) / 2 + 1) * sum;
}

std::uint64_t rank_formula(int n, int q, int r) {
    std::uint64_t sum = 0;
    if ((q + 1) % 2 == 0) {
        for (int j = (q + 1) / 2; j <= q; ++j) sum += slice_size(n - 1, q, r - j);
        return sum;
    }
    for (int j = q / 2 + 1; j <= q; ++j)
        for (int i = 1; i <= 2 * (r - 1) / q; ++i) sum += slice_size(n - i, q, r - j - (i - 1) * q / 2);
    return 1 + sum;
}

std::vector<oracle::Vec> support_slice(int n, int q, int r) {
    std::vector<oracle::Vec> out;
    for (auto& v : oracle::cube(n, q))
        if (oracle::support(v) == r) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("support star examples") {
    const int one[] = {1};
    CHECK(support_star(3, 2, 4, 1, one) == fam(2, {{2, 0, 0}}));
    CHECK(support_star(3, 2, 3, 1, one) == fam(2, {{1, 0, 0}, {2, 0, 0}}));
    const int tuple[] = {1, 2};
    CHECK(support_star(2, 2, 3, 2, tuple) == fam(2, {{1, 1}, {2, 1}, {2, 2}, {1, 2}}));
    CHECK_THROWS_AS(support_star(3, 2, 3, 2, one), ParameterError);
    CHECK_THROWS_AS(support_star(3, 2, 4, 1, tuple), ParameterError);
    CHECK_THROWS_AS(support_star(3, 2, 5, 1, one), ParameterError);
}

TEST_CASE("support star size equals the formula and the brute-force optimum") {
    for (int q = 1; q <= 3; ++q)
        for (int s = q + 1; s <= 2 * q; ++s)
            for (int n = 1; n <= 4; ++n)
                for (int r = 1; r <= n; ++r) {
                    std::vector<int> anchor;
                    if (s % 2 == 0) anchor = {1};
                    else
                        for (int i = 1; i <= r; ++i) anchor.push_back(i);
                    auto f = support_star(n, q, s, r, anchor);
                    CHECK(family_check(f, {Mode::sum, s, 1, true}).holds);
                    BoundParams p{n, q, s, r};
                    CHECK(bound(BoundKind::support_uniform, p) == support_formula(n, q, s, r));
                    if (static_cast<Count>(n) >= support_uniform_threshold(q, r))
                        CHECK(f.size() == support_formula(n, q, s, r));
                    auto universe = support_slice(n, q, r);
                    if (universe.size() <= 20 && static_cast<Count>(n) >= support_uniform_threshold(q, r))
                        CHECK(oracle::max_family(universe, s, 1, false) == f.size());
                }
}

TEST_CASE("t-intersecting construction") {
    auto f = t_intersecting_construction(4, 2, 4, 2, 1, IndexSet{1});
    CHECK(f.size() == 6);
    CHECK(family_check(f, {Mode::sum, 4, 1, true}).holds);

    // Even s: size formula over a grid.
    for (int q = 2; q <= 3; ++q)
        for (int s = q + 1; s <= 2 * q; ++s) {
            if (s % 2) continue;
            for (int n = 1; n <= 6; ++n)
                for (int r = 1; r <= n && r <= 3; ++r)
                    for (int t = 1; t <= r; ++t) {
                        auto g = t_intersecting_construction(n, q, s, r, t);
                        const auto want = oracle::ipow(q - s / 2 + 1, t) * oracle::ipow(q, r - t) *
                                          oracle::binom(n - t, r - t);
                        CHECK(g.size() == want);
                        CHECK(bound(BoundKind::support_uniform_t, {n, q, s, r, t}) == want);
                        CHECK(family_check(g, {Mode::sum, s, t, true}).holds);
                    }
        }

    // Odd s with n = r = t: at most C(t, t-1) + (q - floor(s/2))^t.
    for (int t = 1; t <= 4; ++t) {
        auto g = t_intersecting_construction(t, 2, 3, t, t);
        CHECK(g.size() <= oracle::binom(t, t - 1) + oracle::ipow(2 - 1, t));
    }

    // t = 1, odd s: the support star anchored at (1..r).
    for (int n = 1; n <= 5; ++n)
        for (int r = 1; r <= n; ++r) {
            std::vector<int> anchor;
            for (int i = 1; i <= r; ++i) anchor.push_back(i);
            CHECK(t_intersecting_construction(n, 2, 3, r, 1) == support_star(n, 2, 3, r, anchor));
            CHECK(t_intersecting_construction(n, 3, 5, r, 1) == support_star(n, 3, 5, r, anchor));
        }
}

TEST_CASE("f_size and its recursion") {
    CHECK(f_size(3, 2, 3, 1, 1) == 2);
    CHECK(f_recursion_check(8, 2, 3, 4, 2).ok());
    auto lb = f_recursion_check(8, 2, 3, 3, 1);
    CHECK(lb.lower_bound_applicable);
    CHECK(lb.lower_bound_holds);
    CHECK(lb.direct > lb.lower_bound);
    for (int t = 1; t <= 3; ++t)
        for (int n = t; n <= 6; ++n)
            CHECK(f_size(n, 2, 3, t, t) == oracle::binom(t, t - 1) + oracle::ipow(2 - 1, t));
}

TEST_CASE("rank extremal examples") {
    auto f = rank_extremal(4, 1, 2);
    CHECK(f.size() == 3);
    for (const auto& x : f) CHECK(x[3] >= 1);

    auto g = rank_extremal(2, 3, 2);
    CHECK(g == fam(3, {{0, 2}}));
    CHECK(bound(BoundKind::rank_uniform, {2, 3, 0, 2}) == 1);

    auto h = rank_extremal(2, 2, 2);
    CHECK(h.size() == bound(BoundKind::rank_uniform, {2, 2, 0, 2}));
    CHECK(h.size() == rank_formula(2, 2, 2));
    CHECK_THROWS_AS(rank_extremal(2, 2, 3), ParameterError);
}

TEST_CASE("rank extremal reproduces the EKR star for q = 1") {
    for (int r = 1; 2 * r <= 8; ++r)
        for (int n = 2 * r; n <= 8; ++n) CHECK(rank_extremal(n, 1, r).size() == oracle::binom(n - 1, r - 1));
}

TEST_CASE("rank bound formula, construction and brute force agree") {
    for (int q = 1; q <= 4; ++q)
        for (int n = 1; n <= 4; ++n)
            for (int r = (q + 2) / 2; 2 * r <= q * n; ++r) {
                auto f = rank_extremal(n, q, r);
                const auto formula = rank_formula(n, q, r);
                CHECK(bound(BoundKind::rank_uniform, {n, q, 0, r}) == formula);
                CHECK(f.size() == formula);
                CHECK(family_check(f, {Mode::sum, q + 1, 1, true}).holds);
                auto universe = oracle::rank_slice(n, q, r);
                if (universe.size() <= 19) CHECK(oracle::max_family(universe, q + 1, 1, false) == formula);
            }
}

TEST_CASE("nonuniform extremal examples") {
    auto f = nonuniform_extremal(2, 2, 3);
    CHECK(f.size() == 5);
    CHECK(family_check(f, {Mode::sum, 3, 1, true}).holds);
    CHECK(nonuniform_extremal(3, 1, 2).size() == 4);
    CHECK(nonuniform_extremal(2, 2, 2).size() == 7);
    CHECK(bound(BoundKind::nonuniform_small_s, {2, 2, 2, 0}) == 7);
    CHECK(bound(BoundKind::nonuniform, {3, 2, 0, 0}) == 14);
    CHECK_THROWS_AS(nonuniform_extremal(2, 2, 5), ParameterError);
    CHECK(nonuniform_extremal(2, 2, 5, true) == fam(2, {{2, 2}}));
    CHECK_THROWS_AS(nonuniform_extremal(2, 2, 4), ParameterError);
}

TEST_CASE("nonuniform constructions match the brute-force optimum") {
    for (int q = 1; q <= 3; ++q)
        for (int n = 1; n <= 3; ++n) {
            auto universe = oracle::cube(n, q);
            if (universe.size() > 16) continue;
            for (int s = 1; s <= q + 1; ++s) {
                auto f = nonuniform_extremal(n, q, s);
                CHECK(family_check(f, {Mode::sum, s, 1, true}).holds);
                const auto best = oracle::max_family(universe, s, 1, false);
                CHECK(f.size() == best);
                const auto kind = s == q + 1 ? BoundKind::nonuniform : BoundKind::nonuniform_small_s;
                CHECK(bound(kind, {n, q, s, 0}) == best);
            }
        }
}

TEST_CASE("katona upper family examples") {
    CHECK(katona_upper_family(2, 2) == fam(2, {{2, 1}, {1, 2}, {2, 2}}));
    CHECK(katona_upper_family(3, 2).size() == 10);
    CHECK(katona_upper_family(2, 3) == fam(2, {{2, 2}}));
    CHECK_THROWS_AS(katona_upper_family(2, 4), ParameterError);
    for (int n = 1; n <= 5; ++n) {
        std::uint64_t want = 0;
        for (int r = n + 1; r <= 2 * n; ++r) want += slice_size(n, 2, r);
        CHECK(bound(BoundKind::katona_multisum_2, {n, 2, 3, 0, 2}) == want);
        CHECK(katona_upper_family(n, 2).size() == want);
        CHECK(family_check(katona_upper_family(n, 2), {Mode::multisum, 3, 2, true}).holds);
        CHECK(family_check(katona_upper_family(n, 3), {Mode::multisum, 3, 3, true}).holds);
    }
}

TEST_CASE("bound examples and kind names") {
    CHECK(bound(BoundKind::support_uniform, {8, 2, 3, 2}) == 16);
    CHECK(bound(BoundKind::rank_uniform, {5, 1, 0, 2}) == 4);
    CHECK(bound(BoundKind::nonuniform, {3, 2, 0, 0}) == 14);
    BoundParams k3{2, 2, 3, 0, 3};
    k3.m_of_n = 1;
    CHECK(bound(BoundKind::katona_multisum_3, k3) == 2);
    for (auto k : {BoundKind::support_uniform, BoundKind::rank_uniform, BoundKind::support_uniform_t,
                   BoundKind::nonuniform, BoundKind::nonuniform_small_s, BoundKind::katona_multisum_2,
                   BoundKind::katona_multisum_3})
        CHECK(parse_bound_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_bound_kind("hilton_milner"), ParameterError);
}

TEST_CASE("thresholds") {
    CHECK(support_uniform_threshold(2, 2) == 8);
    CHECK(support_uniform_t_threshold(2, 2, 2) == 32);
}
