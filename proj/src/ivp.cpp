#include "qsum/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qsum/combinatorics.hpp"
#include "qsum/errors.hpp"

namespace qsum {

namespace {

constexpr Count kMaxMaterialized = 5'000'000;

BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt multinomial_big(std::span<const int> parts) {
    int total = 0;
    BigInt den = 1;
    for (int p : parts) {
        total += p;
        den *= factorial(p);
    }
    return factorial(total) / den;
}

bool meets(const QVec& x, const QVec& y, int s) { return intersection_size(x, y, s) > 0; }

bool cross_ok(const VecPair& u, const VecPair& v, int s, SystemKind kind) {
    const bool uv = meets(u.x, v.y, s);
    const bool vu = meets(v.x, u.y, s);
    return kind == SystemKind::strong ? (uv && vu) : (uv || vu);
}

SystemCheck check_as(const PairSystem& system, SystemKind kind) {
    const auto& pairs = system.pairs();
    const int s = system.s();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (meets(pairs[i].x, pairs[i].y, s)) return {false, std::pair{i + 1, i + 1}};
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (!cross_ok(pairs[i], pairs[j], s, kind)) return {false, std::pair{i + 1, j + 1}};
    }
    return {};
}

std::vector<bool> support_union(const VecPair& pair) {
    std::vector<bool> in(pair.x.n());
    for (int t = 0; t < pair.x.n(); ++t) in[t] = pair.x[t] != 0 || pair.y[t] != 0;
    return in;
}

void check_probability(std::span<const double> p, int q) {
    if (static_cast<int>(p.size()) != q + 1)
        throw ParameterError("probability vector must have q+1 entries");
    double total = 0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("probabilities must be >= 0");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ParameterError("probabilities must sum to 1");
}

void check_probability(std::span<const Rational> p, int q) {
    if (static_cast<int>(p.size()) != q + 1)
        throw ParameterError("probability vector must have q+1 entries");
    Rational total = 0;
    for (const auto& v : p) {
        if (v < 0) throw ParameterError("probabilities must be >= 0");
        total += v;
    }
    if (total != 1) throw ParameterError("probabilities must sum to 1");
}

void require_weighted_input(const PairSystem& system) {
    if (system.s() != system.q() + 1)
        throw ParameterError("weighted_sum needs a (q+1)-sum system");
    if (!is_saturated(system)) throw ParameterError("weighted_sum needs a saturated system");
    if (!check_as(system, SystemKind::weak).valid)
        throw ParameterError("weighted_sum needs a valid weak system");
}

}  // namespace

const char* to_string(SystemKind k) { return k == SystemKind::strong ? "strong" : "weak"; }

SystemKind parse_system_kind(const std::string& s) {
    if (s == "strong") return SystemKind::strong;
    if (s == "weak") return SystemKind::weak;
    throw ParameterError("unknown system kind: " + s);
}

PairSystem::PairSystem(int n, int q, int s, SystemKind kind, std::vector<VecPair> pairs)
    : n_(n), q_(q), s_(s), kind_(kind) {
    if (n < 0) throw ParameterError("n must be >= 0");
    if (q < 1 || q > kMaxAlphabet) throw ParameterError("q out of range");
    if (s < 1) throw ParameterError("s must be >= 1");
    pairs_.reserve(pairs.size());
    for (auto& p : pairs) add(std::move(p));
}

void PairSystem::add(VecPair pair) {
    for (const QVec* v : {&pair.x, &pair.y})
        if (v->n() != n_ || v->q() != q_) throw DimensionError(v->n(), v->q(), n_, q_);
    pairs_.push_back(std::move(pair));
}

std::pair<int, int> PairSystem::support_bounds() const {
    int a = 0, b = 0;
    for (const auto& p : pairs_) {
        a = std::max(a, p.x.support_size());
        b = std::max(b, p.y.support_size());
    }
    return {a, b};
}

SystemCheck system_check(const PairSystem& system) { return check_as(system, system.kind()); }

AbcProfile abc_profile(const VecPair& pair) {
    require_same_shape(pair.x, pair.y);
    AbcProfile out;
    for (int t = 0; t < pair.x.n(); ++t) {
        const bool in_x = pair.x[t] != 0, in_y = pair.y[t] != 0;
        if (in_x && in_y)
            ++out.c;
        else if (in_x)
            ++out.a;
        else if (in_y)
            ++out.b;
    }
    return out;
}

bool is_saturated(const PairSystem& system) {
    for (const auto& p : system.pairs())
        for (int t = 0; t < system.n(); ++t) {
            const int sum = p.x[t] + p.y[t];
            if (sum != 0 && sum != system.q()) return false;
        }
    return true;
}

PairSystem saturate(const PairSystem& system) {
    if (system.s() != system.q() + 1) throw ParameterError("saturate is defined for s = q+1 only");
    PairSystem out(system.n(), system.q(), system.s(), system.kind());
    for (std::size_t j = 0; j < system.size(); ++j) {
        const auto& p = system.pairs()[j];
        if (meets(p.x, p.y, system.s()))
            throw ParameterError("saturate: pair " + std::to_string(j + 1) + " intersects itself");
        const auto in = support_union(p);
        std::vector<QVec::Entry> y(system.n(), 0);
        for (int t = 0; t < system.n(); ++t)
            if (in[t]) y[t] = static_cast<QVec::Entry>(system.q() - p.x[t]);
        out.add({p.x, QVec(system.q(), std::move(y))});
    }
    return out;
}

PairSystem reduce_parameter(const PairSystem& system) {
    const int t = system.s() - system.q();
    if (t <= 1) throw ParameterError("reduce_parameter needs s = q+t with t > 1");
    const int q2 = system.q() - t + 1;
    if (q2 < 1) throw ParameterError("reduce_parameter needs s <= 2q");
    PairSystem out(system.n(), q2, q2 + 1, system.kind());
    auto clip = [&](const QVec& v) {
        std::vector<QVec::Entry> e(v.entries());
        for (auto& x : e) x = static_cast<QVec::Entry>(std::max(int{x} - t + 1, 0));
        return QVec(q2, std::move(e));
    };
    for (const auto& p : system.pairs()) out.add({clip(p.x), clip(p.y)});
    return out;
}

PairSystem construct_abc(int a, int b, int c, int s, int q) {
    if (c < 0 || c > a || a > b) throw ParameterError("construct_abc needs 0 <= c <= a <= b");
    if (s < 3 || s / 2 + 1 > q) throw ParameterError("construct_abc needs 3 <= s < 2q");
    if (abc_cardinality(a, b, c) > kMaxMaterialized)
        throw ParameterError("construct_abc: system too large to materialize");
    const int n = a + b - c;
    const auto hi = static_cast<QVec::Entry>(s / 2 + 1);
    const auto mid = static_cast<QVec::Entry>((s + 1) / 2 - 1);
    PairSystem out(n, q, s, SystemKind::strong);
    for_each_subset(n, a - c, [&](std::span<const int> A) {
        std::vector<int> rest;
        std::vector<bool> in_a(n);
        for (int i : A) in_a[i] = true;
        for (int i = 0; i < n; ++i)
            if (!in_a[i]) rest.push_back(i);
        for_each_subset(static_cast<int>(rest.size()), b - c, [&](std::span<const int> Bpos) {
            std::vector<QVec::Entry> x(n, mid), y(n, mid);
            for (int i : A) x[i] = hi, y[i] = 0;
            for (int k : Bpos) x[rest[k]] = 0, y[rest[k]] = hi;
            out.add({QVec(q, std::move(x)), QVec(q, std::move(y))});
        });
    });
    return out;
}

BigInt abc_cardinality(int a, int b, int c) {
    if (c < 0 || c > a || a > b) return 0;
    const int parts[] = {a - c, b - c, c};
    return multinomial_big(parts);
}

PairSystem construct_alpha(std::span<const int> alphas, int q) {
    if (q < 1 || q > kMaxAlphabet) throw ParameterError("q out of range");
    if (static_cast<int>(alphas.size()) != q + 1)
        throw ParameterError("construct_alpha needs q+1 part sizes");
    if (std::any_of(alphas.begin(), alphas.end(), [](int a) { return a < 0; }))
        throw ParameterError("part sizes must be >= 0");
    if (alpha_cardinality(alphas) > kMaxMaterialized)
        throw ParameterError("construct_alpha: system too large to materialize");
    std::vector<QVec::Entry> labels;
    for (int i = 0; i <= q; ++i) labels.insert(labels.end(), alphas[i], static_cast<QVec::Entry>(i));
    const int n = static_cast<int>(labels.size());
    PairSystem out(n, q, q + 1, SystemKind::strong);
    do {
        std::vector<QVec::Entry> y(n);
        for (int t = 0; t < n; ++t) y[t] = static_cast<QVec::Entry>(q - labels[t]);
        out.add({QVec(q, labels), QVec(q, std::move(y))});
    } while (std::next_permutation(labels.begin(), labels.end()));
    return out;
}

BigInt alpha_cardinality(std::span<const int> alphas) { return multinomial_big(alphas); }

FkResult f_k(int k) {
    if (k < 1) throw ParameterError("f_k needs k >= 1");
    FkResult best;
    best.value = 0;
    for (int x = 0; x <= k; ++x)
        for (int y = 0; y <= k; ++y)
            for (int z = 0; z <= k - std::max(x, y); ++z) {
                const int parts[] = {x, y, z};
                BigInt v = multinomial_big(parts);
                if (v > best.value) best = {v, x, y, z};
            }
    return best;
}

LymReport lym_strong(const PairSystem& system) {
    if (system.q() != 2 || system.s() != 3) throw ParameterError("lym_strong needs q = 2, s = 3");
    if (system.kind() != SystemKind::strong || !system_check(system).valid)
        throw ParameterError("lym_strong needs a valid strong system");
    LymReport out;
    out.sum = 0;
    for (const auto& p : system.pairs()) {
        const auto abc = abc_profile(p);
        const int parts[] = {abc.a, abc.b, abc.c};
        out.sum += Rational(BigInt(1), multinomial_big(parts));
    }
    // The smallest admissible (a, b) with a, b >= 1.
    std::tie(out.a, out.b) = system.support_bounds();
    out.a = std::max(out.a, 1);
    out.b = std::max(out.b, 1);
    out.bound = std::min(out.a, out.b);
    out.holds = out.sum <= out.bound;
    return out;
}

std::vector<int> alpha_profile(const VecPair& pair, int q, AlphaScope scope) {
    std::vector<int> alpha(q + 1, 0);
    const auto in = support_union(pair);
    for (int t = 0; t < pair.x.n(); ++t)
        if (in[t] || scope == AlphaScope::global) ++alpha[pair.x[t]];
    return alpha;
}

double weighted_sum(const PairSystem& system, std::span<const double> p, AlphaScope scope) {
    check_probability(p, system.q());
    require_weighted_input(system);
    double sum = 0;
    for (const auto& pair : system.pairs()) {
        const auto alpha = alpha_profile(pair, system.q(), scope);
        double term = 1;
        for (int i = 0; i <= system.q(); ++i)
            if (alpha[i] > 0) term *= std::pow(p[i], alpha[i]);
        sum += term;
    }
    return sum;
}

Rational weighted_sum(const PairSystem& system, std::span<const Rational> p, AlphaScope scope) {
    check_probability(p, system.q());
    require_weighted_input(system);
    Rational sum = 0;
    for (const auto& pair : system.pairs()) {
        const auto alpha = alpha_profile(pair, system.q(), scope);
        Rational term = 1;
        for (int i = 0; i <= system.q(); ++i)
            for (int e = 0; e < alpha[i]; ++e) term *= p[i];
        sum += term;
    }
    return sum;
}

DisjointnessReport empirical_disjointness(const PairSystem& system, std::span<const double> p,
                                          std::uint64_t trials, std::uint64_t seed,
                                          AlphaScope scope) {
    check_probability(p, system.q());
    require_weighted_input(system);
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> draw(p.begin(), p.end());
    std::vector<std::vector<bool>> scopes;
    for (const auto& pair : system.pairs()) {
        auto in = support_union(pair);
        if (scope == AlphaScope::global) std::fill(in.begin(), in.end(), true);
        scopes.push_back(std::move(in));
    }
    DisjointnessReport out;
    out.trials = trials;
    std::vector<int> part(system.n());
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (auto& v : part) v = draw(rng);
        std::uint64_t hits = 0;
        for (std::size_t j = 0; j < system.size(); ++j) {
            const auto& x = system.pairs()[j].x;
            bool holds = true;
            for (int t = 0; t < system.n() && holds; ++t)
                if (scopes[j][t] && part[t] != x[t]) holds = false;
            if (holds) ++hits;
        }
        out.event_hits += hits;
        if (hits >= 2) out.co_occurrences += hits * (hits - 1) / 2;
    }
    return out;
}

PairSystem random_system(int n, int q, int s, SystemKind kind, int max_support, int attempts,
                         std::mt19937_64& rng) {
    if (n < 1 || max_support < 1) throw ParameterError("random_system needs n, max_support >= 1");
    PairSystem out(n, q, s, kind);
    std::uniform_int_distribution<int> size_dist(1, std::min(max_support, n));
    std::uniform_int_distribution<int> value_dist(1, q);
    std::vector<int> coords(n);
    auto random_vec = [&]() {
        std::iota(coords.begin(), coords.end(), 0);
        std::shuffle(coords.begin(), coords.end(), rng);
        std::vector<QVec::Entry> e(n, 0);
        const int size = size_dist(rng);
        for (int i = 0; i < size; ++i) e[coords[i]] = static_cast<QVec::Entry>(value_dist(rng));
        return e;
    };
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto x = random_vec();
        auto y = random_vec();
        bool ok = true;
        for (int t = 0; t < n && ok; ++t) {
            if (x[t] + y[t] < s) continue;
            if (x[t] >= s) ok = false;
            else y[t] = static_cast<QVec::Entry>(s - 1 - x[t]);
        }
        if (!ok) continue;
        VecPair pair{QVec(q, std::move(x)), QVec(q, std::move(y))};
        if (!std::all_of(out.pairs().begin(), out.pairs().end(),
                         [&](const VecPair& other) { return cross_ok(pair, other, s, kind); }))
            continue;
        out.add(std::move(pair));
    }
    return out;
}

SystemSearchResult max_system(int q, int k, SystemKind kind, int n_cap, const Budget& budget,
                              const TraceSink& trace) {
    if (k < 1) throw ParameterError("max_system needs k >= 1");
    if (n_cap < 1) throw ParameterError("max_system needs n_cap >= 1");
    const int s = q + 1;
    std::vector<QVec> vecs;
    for_each_in_slice(n_cap, q, Slice::everything(), [&](std::span<const QVec::Entry> e) {
        QVec v(q, std::vector<QVec::Entry>(e.begin(), e.end()));
        if (v.support_size() <= k) vecs.push_back(std::move(v));
    });
    std::vector<VecPair> cand;
    for (const auto& x : vecs)
        for (const auto& y : vecs)
            if (!meets(x, y, s)) cand.push_back({x, y});
    if (cand.size() > 20'000) throw ParameterError("max_system: candidate set too large");

    Graph g(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i + 1; j < cand.size(); ++j)
            if (cross_ok(cand[i], cand[j], s, kind)) g.add_edge(i, j);

    CliqueOptions opts;
    opts.budget = budget;
    opts.trace = trace;
    const auto clique = max_clique(g, opts);

    SystemSearchResult out{clique.status, clique.optimum, PairSystem(n_cap, q, s, kind),
                           cand.size(), n_cap, clique.stats, std::nullopt, std::nullopt};
    for (std::size_t v : clique.witness) out.witness.add(cand[v]);
    if (q == 2) {
        out.f_k = f_k(k).value;
        out.k_f_k = *out.f_k * k;
    }
    return out;
}

std::vector<int> limit_alphas(int q, int k) {
    if (q < 1 || k < 1) throw ParameterError("limit_alphas needs q, k >= 1");
    std::vector<int> alphas(q + 1, 0);
    if (q == 1) {
        alphas[0] = alphas[1] = k;
        return alphas;
    }
    const double p0 = 1.0 / (std::sqrt(static_cast<double>(q)) + 1.0);
    const int mid = static_cast<int>(std::lround(k * p0 * p0 / (1.0 - p0)));
    const int outer = k - (q - 1) * mid;
    if (outer < 0) throw ParameterError("limit_alphas: k too small for q");
    alphas[0] = alphas[q] = outer;
    for (int i = 1; i < q; ++i) alphas[i] = mid;
    return alphas;
}

double limit_base(int q) {
    const double r = std::sqrt(static_cast<double>(q)) + 1.0;
    return r * r;
}

}  // namespace qsum
