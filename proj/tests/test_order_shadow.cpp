#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qsum/errors.hpp"
#include "qsum/order_shadow.hpp"

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
    const int n = v.empty() ? 0 : v.front().n();
    return VecFamily(n, q, std::move(v));
}

}  // namespace

TEST_CASE("vector shadow examples") {
    CHECK(shadow(fam(2, {{1, 1}})) == fam(2, {{1, 0}, {0, 1}}));
    auto s = shadow(fam(2, {{2, 0}, {1, 1}}));
    CHECK(s == fam(2, {{1, 0}, {0, 1}}));
    CHECK(s.size() == 2);
    CHECK(shadow(fam(2, {{0, 0}})).size() == 0);
    CHECK(shadow(fam(2, {{1, 1}}), 2) == fam(2, {{0, 0}}));
    CHECK(shadow(fam(2, {{1, 1}}), 3).size() == 0);
    CHECK_THROWS_AS(shadow(fam(2, {{1, 1}, {1, 0}})), ParameterError);
}

TEST_CASE("set shadow example") {
    SetFamily f{IndexSet{1, 2}, IndexSet{1, 3}};
    SetFamily want{IndexSet{1}, IndexSet{2}, IndexSet{3}};
    CHECK(shadow(f) == want);
}

TEST_CASE("shadow agrees with the oracle on every subfamily of small slices") {
    for (int q = 1; q <= 2; ++q)
        for (int r = 1; r <= 2 * q; ++r) {
            auto slice = enumerate_slice(3, q, Slice::of_rank(r));
            const auto members = slice.members();
            if (members.size() > 12) continue;
            for (std::uint32_t mask = 1; mask < (1u << members.size()); ++mask) {
                std::vector<QVec> pick;
                for (std::size_t i = 0; i < members.size(); ++i)
                    if (mask >> i & 1u) pick.push_back(members[i]);
                VecFamily f(3, q, pick);
                auto want = oracle::shadow(ints(f));
                auto got = ints(shadow(f));
                CHECK(std::set<oracle::Vec>(got.begin(), got.end()) == want);
                CHECK(got.size() == want.size());
            }
        }
}

TEST_CASE("initial segment examples") {
    CHECK(initial_segment(2, 2, 2, 2) == fam(2, {{2, 0}, {1, 1}}));
    CHECK(initial_segment(2, 2, 2, 0).size() == 0);
    CHECK(initial_segment(4, 1, 2, 3) ==
          VecFamily(4, 1, {characteristic_vector({1, 2}, 4), characteristic_vector({1, 3}, 4),
                           characteristic_vector({2, 3}, 4)}));
    CHECK_THROWS_AS(initial_segment(2, 2, 2, 4), ParameterError);
}

TEST_CASE("shadow of an initial segment is an initial segment") {
    for (int n = 1; n <= 4; ++n)
        for (int q = 1; q <= 3; ++q)
            for (int r = 1; r <= q * n; ++r) {
                const auto total = rank_slice_count(n, q, r);
                for (Count m = 0; m <= total; ++m) {
                    auto sh = shadow(initial_segment(n, q, r, m));
                    CHECK(sh == initial_segment(n, q, r - 1, sh.size()));
                }
            }
}

TEST_CASE("complement of a final segment is an initial segment") {
    for (int n = 1; n <= 4; ++n)
        for (int q = 1; q <= 3; ++q)
            for (int r = 0; r <= q * n; ++r)
                for (Count m = 0; m <= rank_slice_count(n, q, r); ++m)
                    CHECK(complement(final_segment(n, q, r, m)) == initial_segment(n, q, q * n - r, m));
}

TEST_CASE("shift examples") {
    CHECK(shift(fam(3, {{1, 3}}), 1, 2) == fam(3, {{3, 1}}));
    CHECK(shift(fam(3, {{3, 1}}), 1, 2) == fam(3, {{3, 1}}));
    CHECK(shift(fam(3, {{1, 3}, {3, 1}}), 1, 2) == fam(3, {{1, 3}, {3, 1}}));
    CHECK_THROWS_AS(shift(fam(3, {{1, 3}}), 1, 3), ParameterError);
    CHECK_THROWS_AS(shift(fam(3, {{1, 3}}), 2, 2), ParameterError);
}

TEST_CASE("shifting breaks s-sum 2-intersection on the pinned pair") {
    auto f = fam(3, {{3, 2}, {1, 3}});
    const PredicateSpec two{Mode::sum, 4, 2, true};
    const PredicateSpec one{Mode::sum, 4, 1, true};
    CHECK(family_check(f, two).holds);
    auto g = shift(f, 1, 2);
    CHECK(g == fam(3, {{3, 2}, {3, 1}}));
    CHECK_FALSE(family_check(g, two).holds);
    CHECK(family_check(g, one).holds);
}

TEST_CASE("family shift matches the oracle and left shift reaches a fixed point") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
        const int r = 1 + static_cast<int>(rng() % (q * n));
        auto slice = enumerate_slice(n, q, Slice::of_rank(r)).members();
        std::vector<QVec> pick;
        for (const auto& v : slice)
            if (rng() % 2) pick.push_back(v);
        VecFamily f(n, q, pick);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                auto got = shift(f, i, j);
                CHECK(ints(got) == oracle::shift(ints(f), i - 1, j - 1));
                CHECK(got.size() == f.size());
            }
        auto l = left_shift(f);
        CHECK(l.size() == f.size());
        CHECK(is_left_shifted(l));
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) CHECK(shift(l, i, j) == l);
    }
}

TEST_CASE("min shadow oracle examples") {
    auto r = min_shadow_oracle(2, 2, 2, 2, 1'000'000);
    CHECK(r.status == SearchStatus::exact);
    CHECK(r.min_size == 2);
    CHECK(r.achieved_by_segment);

    const auto full = rank_slice_count(3, 2, 3);
    r = min_shadow_oracle(3, 2, 3, full, 1'000'000);
    CHECK(r.min_size == rank_slice_count(3, 2, 2));

    r = min_shadow_oracle(3, 1, 2, 3, 1'000'000);
    CHECK(r.min_size == 3);
    CHECK(r.achieved_by_segment);

    r = min_shadow_oracle(4, 2, 4, 9, 10);
    CHECK(r.status == SearchStatus::budget_exceeded);
    CHECK(r.subsets_examined == 0);
}

TEST_CASE("min shadow oracle agrees with an independent subset scan") {
    for (int r = 1; r <= 4; ++r) {
        auto slice = ints(enumerate_slice(2, 2, Slice::of_rank(r)));
        for (std::size_t m = 1; m <= slice.size(); ++m) {
            std::size_t best = SIZE_MAX;
            for (std::uint32_t mask = 0; mask < (1u << slice.size()); ++mask) {
                if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
                std::vector<oracle::Vec> pick;
                for (std::size_t i = 0; i < slice.size(); ++i)
                    if (mask >> i & 1u) pick.push_back(slice[i]);
                best = std::min(best, oracle::shadow(pick).size());
            }
            CHECK(min_shadow_oracle(2, 2, r, m, 1'000'000).min_size == best);
        }
    }
}
