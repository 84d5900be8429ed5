#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsum/errors.hpp"
#include "qsum/ivp.hpp"

using namespace qsum;

namespace {

VecPair pair(int q, std::initializer_list<int> x, std::initializer_list<int> y) {
    return {QVec(q, x), QVec(q, y)};
}

// Cross condition straight from the definition.
bool oracle_valid(const PairSystem& sys) {
    const auto& p = sys.pairs();
    auto hit = [&](const QVec& x, const QVec& y) {
        for (int t = 0; t < sys.n(); ++t)
            if (x[t] + y[t] >= sys.s()) return true;
        return false;
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (hit(p[i].x, p[i].y)) return false;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            const bool a = hit(p[i].x, p[j].y), b = hit(p[j].x, p[i].y);
            if (sys.kind() == SystemKind::strong ? !(a && b) : !(a || b)) return false;
        }
    }
    return true;
}

std::uint64_t multinomial3(int a, int b, int c) {
    return oracle::factorial(a + b + c) / (oracle::factorial(a) * oracle::factorial(b) * oracle::factorial(c));
}

}  // namespace

TEST_CASE("system check examples") {
    auto abc = construct_abc(2, 2, 1, 3, 2);
    CHECK(abc.size() == 6);
    CHECK(system_check(abc).valid);

    PairSystem two(2, 2, 3, SystemKind::strong, {pair(2, {2, 0}, {0, 2}), pair(2, {0, 2}, {2, 0})});
    CHECK(system_check(two).valid);

    PairSystem high(2, 2, 5, SystemKind::strong, two.pairs());
    auto chk = system_check(high);
    CHECK_FALSE(chk.valid);
    REQUIRE(chk.witness);
    CHECK(*chk.witness == std::pair<std::size_t, std::size_t>{1, 2});

    PairSystem self(2, 2, 3, SystemKind::strong, {pair(2, {2, 0}, {1, 0})});
    chk = system_check(self);
    CHECK_FALSE(chk.valid);
    CHECK(*chk.witness == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK_THROWS_AS(PairSystem(2, 2, 3, SystemKind::strong, {pair(2, {2, 0, 0}, {0, 2, 0})}), DimensionError);
}

TEST_CASE("abc profile") {
    auto p = abc_profile(pair(2, {2, 1, 0, 0}, {0, 1, 2, 0}));
    CHECK(p.a == 1);
    CHECK(p.b == 1);
    CHECK(p.c == 1);
}

TEST_CASE("saturate examples") {
    PairSystem s(3, 2, 3, SystemKind::strong, {pair(2, {2, 0, 1}, {0, 1, 0})});
    auto out = saturate(s);
    CHECK(out.pairs()[0].y == QVec(2, {0, 2, 1}));
    CHECK(out.pairs()[0].x == QVec(2, {2, 0, 1}));
    CHECK(saturate(out) == out);

    PairSystem forced(2, 2, 3, SystemKind::strong, {pair(2, {2, 0}, {0, 0})});
    CHECK(saturate(forced).pairs()[0].y == QVec(2, {0, 0}));

    PairSystem wrong(2, 2, 4, SystemKind::strong, {pair(2, {2, 0}, {0, 0})});
    CHECK_THROWS_AS(saturate(wrong), ParameterError);
}

TEST_CASE("reduce parameter examples") {
    PairSystem s(2, 3, 5, SystemKind::strong, {pair(3, {3, 0}, {0, 3})});
    auto out = reduce_parameter(s);
    CHECK(out.q() == 2);
    CHECK(out.s() == 3);
    CHECK(out.pairs()[0].x == QVec(2, {2, 0}));
    CHECK(out.pairs()[0].y == QVec(2, {0, 2}));

    PairSystem low(2, 3, 5, SystemKind::strong, {pair(3, {1, 0}, {0, 1})});
    CHECK(reduce_parameter(low).pairs()[0].x == QVec(2, {0, 0}));

    PairSystem cross(2, 3, 5, SystemKind::strong, {pair(3, {3, 0}, {0, 3}), pair(3, {0, 3}, {3, 0})});
    REQUIRE(system_check(cross).valid);
    CHECK(system_check(reduce_parameter(cross)).valid);

    PairSystem t1(2, 3, 4, SystemKind::strong, {});
    CHECK_THROWS_AS(reduce_parameter(t1), ParameterError);
}

TEST_CASE("construct abc examples and cardinality grid") {
    auto two = construct_abc(1, 1, 0, 3, 2);
    REQUIRE(two.size() == 2);
    CHECK(two.pairs()[0].x == two.pairs()[1].y);
    CHECK(two.pairs()[0].y == two.pairs()[1].x);
    CHECK(construct_abc(2, 2, 2, 3, 2).size() == 1);
    CHECK_THROWS_AS(construct_abc(2, 1, 0, 3, 2), ParameterError);
    CHECK_THROWS_AS(construct_abc(1, 1, 0, 4, 2), ParameterError);

    for (int q = 2; q <= 3; ++q)
        for (int s = 3; s < 2 * q; ++s)
            for (int b = 0; b <= 4; ++b)
                for (int a = 0; a <= b; ++a)
                    for (int c = 0; c <= a; ++c) {
                        auto sys = construct_abc(a, b, c, s, q);
                        CHECK(sys.size() == oracle::binom(a + b - c, b - c) * oracle::binom(a, c));
                        CHECK(system_check(sys).valid);
                        CHECK(oracle_valid(sys));
                        CHECK(sys.size() == abc_cardinality(a, b, c));
                    }
}

TEST_CASE("construct alpha examples") {
    const int q1[] = {1, 1};
    auto a = construct_alpha(q1, 1);
    CHECK(a.size() == 2);
    CHECK(system_check(a).valid);

    const int q2[] = {1, 1, 1};
    auto b = construct_alpha(q2, 2);
    CHECK(b.size() == 6);
    CHECK(system_check(b).valid);

    const int single[] = {0, 3, 0};
    CHECK(construct_alpha(single, 2).size() == 1);

    for (int x = 0; x <= 3; ++x)
        for (int y = 0; y <= 3; ++y)
            for (int z = 0; z <= 3; ++z) {
                const int al[] = {x, y, z};
                auto sys = construct_alpha(al, 2);
                CHECK(sys.size() == multinomial3(x, y, z));
                CHECK(oracle_valid(sys));
                CHECK(is_saturated(sys));
            }
}

TEST_CASE("f_k examples and brute force") {
    auto f1 = f_k(1);
    CHECK(f1.value == 2);
    CHECK((f1.x == 1 && f1.y == 1 && f1.z == 0));
    auto f2 = f_k(2);
    CHECK(f2.value == 6);
    CHECK((f2.x == 1 && f2.y == 1 && f2.z == 1));
    auto f3 = f_k(3);
    CHECK(f3.value == 30);
    CHECK((f3.x == 2 && f3.y == 2 && f3.z == 1));
    for (int k = 1; k <= 8; ++k) {
        std::uint64_t best = 0;
        for (int z = 0; z <= k; ++z)
            for (int x = 0; x + z <= k; ++x)
                for (int y = 0; y + z <= k; ++y) best = std::max(best, multinomial3(x, y, z));
        CHECK(f_k(k).value == best);
    }
}

TEST_CASE("lym examples") {
    auto l = lym_strong(construct_abc(2, 2, 1, 3, 2));
    CHECK(l.sum == 1);
    CHECK(l.bound == 2);
    CHECK(l.holds);

    PairSystem one(2, 2, 3, SystemKind::strong, {pair(2, {2, 0}, {0, 2})});
    CHECK(lym_strong(one).sum == Rational(1, 2));

    l = lym_strong(construct_abc(1, 1, 0, 3, 2));
    CHECK(l.sum == 1);
    CHECK(l.bound == 1);
    CHECK(l.holds);

    CHECK_THROWS_AS(lym_strong(construct_abc(1, 1, 0, 4, 3)), ParameterError);
}

TEST_CASE("weighted sum examples") {
    const double r2 = std::sqrt(2.0);
    const double p[] = {r2 - 1, 3 - 2 * r2, r2 - 1};
    auto sat = saturate(construct_abc(1, 1, 0, 3, 2));
    CHECK(alpha_profile(sat.pairs()[0], 2, AlphaScope::pair_local) == std::vector<int>{1, 0, 1});
    CHECK(weighted_sum(sat, p) == doctest::Approx(2 * (r2 - 1) * (r2 - 1)).epsilon(1e-12));

    PairSystem one(2, 2, 3, SystemKind::weak, {pair(2, {2, 1}, {0, 1})});
    const double any[] = {0.2, 0.3, 0.5};
    CHECK(weighted_sum(one, any) <= 1.0);

    const double conc[] = {1.0, 0.0, 0.0};
    CHECK(weighted_sum(sat, conc) == 0.0);

    PairSystem unsat(2, 2, 3, SystemKind::strong, {pair(2, {1, 0}, {0, 1})});
    CHECK_THROWS_AS(weighted_sum(unsat, any), ParameterError);
    const double bad[] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(weighted_sum(sat, bad), ParameterError);

    const Rational exact[] = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    CHECK(weighted_sum(sat, exact) == Rational(2, 9));
}

TEST_CASE("full supports give p0^(2k) per term") {
    for (int k = 1; k <= 4; ++k) {
        const int al[] = {k - 1, 1, k - 1};
        auto sys = construct_alpha(al, 2);
        const double p0 = 1.0 / (std::sqrt(2.0) + 1.0);
        const double p[] = {p0, p0 * p0, p0};
        for (const auto& pr : sys.pairs()) {
            auto alpha = alpha_profile(pr, 2, AlphaScope::pair_local);
            CHECK(alpha[0] == alpha[2]);
            CHECK(alpha[0] + alpha[1] == k);
        }
        CHECK(weighted_sum(sys, p) ==
              doctest::Approx(static_cast<double>(sys.size()) * std::pow(p0, 2 * k)).epsilon(1e-12));
    }
}

TEST_CASE("empirical disjointness on constructed systems") {
    auto sat = saturate(construct_abc(2, 2, 1, 3, 2));
    const double p[] = {0.3, 0.4, 0.3};
    auto d = empirical_disjointness(sat, p, 20'000, 42);
    CHECK(d.disjoint());
    CHECK(d.event_hits > 0);
    auto again = empirical_disjointness(sat, p, 20'000, 42);
    CHECK(again.event_hits == d.event_hits);
    CHECK(empirical_disjointness(sat, p, 5'000, 1, AlphaScope::global).disjoint());
}

TEST_CASE("max system examples") {
    auto strong = max_system(2, 1, SystemKind::strong, 3, Budget{});
    CHECK(strong.status == SearchStatus::exact);
    CHECK(strong.optimum == 2);
    REQUIRE(strong.f_k);
    CHECK(*strong.f_k == 2);
    CHECK(*strong.k_f_k == 2);
    CHECK(system_check(strong.witness).valid);
    auto weak = max_system(2, 1, SystemKind::weak, 3, Budget{});
    CHECK(weak.optimum >= strong.optimum);
    CHECK(system_check(weak.witness).valid);
}

TEST_CASE("limit alphas keep both supports at size k") {
    for (int q = 1; q <= 3; ++q)
        for (int k = 4; k <= 12; ++k) {
            auto al = limit_alphas(q, k);
            int mid = 0;
            for (int i = 1; i < q; ++i) mid += al[i];
            CHECK(al[0] == al[q]);
            CHECK(al[0] + mid == k);
        }
    CHECK(limit_base(1) == doctest::Approx(4.0));
    CHECK(limit_base(2) == doctest::Approx(3 + 2 * std::sqrt(2.0)));
}
