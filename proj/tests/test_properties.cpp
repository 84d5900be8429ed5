#include <doctest.h>

#include <algorithm>
#include <random>

#include "qsum/ivp.hpp"
#include "qsum/constructions.hpp"
#include "qsum/order_shadow.hpp"

using namespace qsum;

namespace {

VecFamily random_subfamily(int n, int q, int r, std::mt19937_64& rng) {
    auto slice = enumerate_slice(n, q, Slice::of_rank(r)).members();
    std::vector<QVec> pick;
    std::bernoulli_distribution take(0.4);
    for (const auto& v : slice)
        if (take(rng)) pick.push_back(v);
    return VecFamily(n, q, std::move(pick));
}

VecFamily random_intersecting(int n, int r, std::mt19937_64& rng) {
    auto slice = enumerate_slice(n, 2, Slice::of_rank(r)).members();
    std::shuffle(slice.begin(), slice.end(), rng);
    std::vector<QVec> pick;
    for (const auto& v : slice)
        if (std::all_of(pick.begin(), pick.end(), [&](const QVec& u) { return intersection_size(u, v, 3) >= 1; }))
            pick.push_back(v);
    return VecFamily(n, 2, std::move(pick));
}

}  // namespace

TEST_CASE("shifting never grows the shadow and preserves multisum t-intersection") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
        const int r = 1 + static_cast<int>(rng() % (q * n));
        auto f = random_subfamily(n, q, r, rng);
        const int i = 1 + static_cast<int>(rng() % n);
        int j = 1 + static_cast<int>(rng() % n);
        if (j == i) j = i % n + 1;
        auto g = shift(f, i, j);
        CHECK(shadow(g).size() <= shadow(f).size());
        for (int s = 1; s <= 2 * q; ++s)
            for (int t = 1; t <= 3; ++t) {
                const PredicateSpec p{Mode::multisum, s, t, true};
                if (family_check(f, p).holds) CHECK(family_check(g, p).holds);
            }
    }
}

TEST_CASE("3-sum intersecting families in 2(n,r) have shadows at least as large") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int r = 1 + static_cast<int>(rng() % (2 * n));
        auto f = random_intersecting(n, r, rng);
        REQUIRE(family_check(f, {Mode::sum, 3, 1, true}).holds);
        CHECK(shadow(f).size() >= f.size());
    }
}

TEST_CASE("saturation and parameter reduction preserve validity and size") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 3);
        const auto kind = trial % 2 ? SystemKind::weak : SystemKind::strong;
        auto sys = random_system(5, q, q + 1, kind, 3, 30, rng);
        REQUIRE(system_check(sys).valid);
        auto sat = saturate(sys);
        CHECK(sat.size() == sys.size());
        CHECK(system_check(sat).valid);
        CHECK(is_saturated(sat));

        if (q >= 2) {
            const int t = 2 + static_cast<int>(rng() % (q - 1));
            auto big = random_system(5, q, q + t, kind, 3, 30, rng);
            REQUIRE(system_check(big).valid);
            auto red = reduce_parameter(big);
            CHECK(red.size() == big.size());
            CHECK(red.q() == q - t + 1);
            CHECK(system_check(red).valid);
        }
    }
}

TEST_CASE("strong systems pass the weak check") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto sys = random_system(5, 2, 3, SystemKind::strong, 3, 30, rng);
        PairSystem weak(sys.n(), sys.q(), sys.s(), SystemKind::weak, sys.pairs());
        CHECK(system_check(weak).valid);
    }
}

TEST_CASE("lym holds exactly on random strong 3-sum systems") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        auto sys = random_system(6, 2, 3, SystemKind::strong, 3, 40, rng);
        auto l = lym_strong(sys);
        CHECK(l.holds);
        CHECK(l.sum <= l.bound);
    }
}

TEST_CASE("weighted sums stay at most one, in floating point and exactly") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> weight(0, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const int q = 1 + static_cast<int>(rng() % 3);
        auto sys = saturate(random_system(5, q, q + 1, trial % 2 ? SystemKind::weak : SystemKind::strong, 3, 30, rng));
        std::vector<int> w(q + 1);
        int total = 0;
        while (total == 0) {
            total = 0;
            for (auto& x : w) total += (x = weight(rng));
        }
        std::vector<double> p;
        std::vector<Rational> exact;
        for (int x : w) {
            p.push_back(static_cast<double>(x) / total);
            exact.emplace_back(x, total);
        }
        for (auto scope : {AlphaScope::pair_local, AlphaScope::global}) {
            CHECK(weighted_sum(sys, p, scope) <= 1.0 + 1e-12);
            CHECK(weighted_sum(sys, exact, scope) <= 1);
        }
    }
}

TEST_CASE("generators self-verify across parameter grids") {
    for (int n = 1; n <= 5; ++n)
        for (int q = 1; q <= 3; ++q) {
            for (int s = 1; s <= q + 1; ++s) CHECK(nonuniform_extremal(n, q, s).size() > 0);
            for (int r = (q + 2) / 2; 2 * r <= q * n; ++r) CHECK(rank_extremal(n, q, r).size() > 0);
        }
}
