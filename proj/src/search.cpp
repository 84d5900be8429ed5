#include "qsum/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qsum/errors.hpp"

namespace qsum {

namespace {

// Orbit representative under coordinate permutations: entries sorted
// non-increasingly.
std::vector<QVec::Entry> orbit_key(const QVec& x) {
    auto e = x.entries();
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
}

}  // namespace

SearchResult max_family(const SearchProblem& problem, const TraceSink& trace) {
    problem.predicate.validate();
    const auto slice = enumerate_slice(problem.n, problem.q, problem.universe);

    // Vertices that fail the predicate against themselves cannot appear when
    // self-pairs count.
    std::vector<QVec> vertices;
    for (const auto& x : slice)
        if (problem.predicate.distinct_only || satisfies(x, x, problem.predicate)) vertices.push_back(x);

    Graph graph(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (satisfies(vertices[i], vertices[j], problem.predicate)) graph.add_edge(i, j);

    CliqueOptions opts;
    opts.budget = problem.budget;
    opts.trace = trace;
    if (problem.symmetry_reduction) {
        std::map<std::vector<QVec::Entry>, std::size_t> root_of;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            auto key = orbit_key(vertices[v]);
            auto it = root_of.find(key);
            if (it == root_of.end()) {
                root_of.emplace(std::move(key), opts.roots.size());
                opts.roots.push_back(v);
                opts.groups.push_back({v});
            } else {
                opts.groups[it->second].push_back(v);
            }
        }
    }

    auto clique = max_clique(graph, opts);
    SearchResult res;
    res.status = clique.status;
    res.optimum = clique.optimum;
    res.universe_size = vertices.size();
    res.edges = graph.edge_count();
    res.stats = std::move(clique.stats);
    std::vector<QVec> members;
    for (std::size_t v : clique.witness) members.push_back(vertices[v]);
    res.witness = VecFamily(problem.n, problem.q, std::move(members));
    return res;
}

SearchResult m_of_n(int n, const Budget& budget, const TraceSink& trace) {
    if (n < 1) throw ParameterError("M(n) needs n >= 1");
    SearchProblem p;
    p.n = n;
    p.q = 2;
    p.universe = Slice::of_rank(n + 1);
    p.predicate = {Mode::multisum, 3, 3, true};
    p.budget = budget;
    return max_family(p, trace);
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

struct Plan {
    SearchProblem problem;
    VecFamily construction;
    std::optional<Count> threshold;
};

Plan plan_for(BoundKind kind, BoundParams& p, const Budget& budget, const TraceSink& trace) {
    Plan plan;
    plan.problem.n = p.n;
    plan.problem.q = p.q;
    plan.problem.budget = budget;
    switch (kind) {
        case BoundKind::support_uniform: {
            std::vector<int> anchor;
            if (p.s % 2 == 0) {
                anchor = {1};
            } else {
                anchor.resize(static_cast<std::size_t>(p.r));
                std::iota(anchor.begin(), anchor.end(), 1);
            }
            plan.construction = support_star(p.n, p.q, p.s, p.r, anchor);
            plan.problem.universe = Slice::of_support(p.r);
            plan.problem.predicate = {Mode::sum, p.s, 1, true};
            plan.threshold = support_uniform_threshold(p.q, p.r);
            break;
        }
        case BoundKind::rank_uniform:
            if (p.s == 0) p.s = p.q + 1;
            plan.construction = rank_extremal(p.n, p.q, p.r);
            plan.problem.universe = Slice::of_rank(p.r);
            plan.problem.predicate = {Mode::sum, p.q + 1, 1, true};
            break;
        case BoundKind::support_uniform_t:
            plan.construction = t_intersecting_construction(p.n, p.q, p.s, p.r, p.t);
            plan.problem.universe = Slice::of_support(p.r);
            plan.problem.predicate = {Mode::sum, p.s, p.t, true};
            plan.threshold = support_uniform_t_threshold(p.q, p.r, p.t);
            break;
        case BoundKind::nonuniform:
            if (p.s == 0) p.s = p.q + 1;
            if (p.s != p.q + 1) throw ParameterError("nonuniform certification is for s = q+1");
            plan.construction = nonuniform_extremal(p.n, p.q, p.s);
            plan.problem.predicate = {Mode::sum, p.s, 1, true};
            break;
        case BoundKind::nonuniform_small_s:
            if (!(1 <= p.s && p.s <= p.q)) throw ParameterError("nonuniform_small_s needs 1 <= s <= q");
            plan.construction = nonuniform_extremal(p.n, p.q, p.s);
            plan.problem.predicate = {Mode::sum, p.s, 1, true};
            break;
        case BoundKind::katona_multisum_2:
        case BoundKind::katona_multisum_3: {
            const int t = kind == BoundKind::katona_multisum_2 ? 2 : 3;
            p.q = 2;
            p.s = 3;
            p.t = t;
            plan.problem.q = 2;
            plan.construction = katona_upper_family(p.n, t);
            if (t == 3) {
                auto layer = m_of_n(p.n, budget, trace);
                if (layer.status != SearchStatus::exact)
                    throw ParameterError("M(n) search exceeded its budget");
                p.m_of_n = layer.optimum;
                std::vector<QVec> members = plan.construction.members();
                members.insert(members.end(), layer.witness.begin(), layer.witness.end());
                plan.construction = VecFamily(p.n, 2, std::move(members));
            }
            plan.problem.predicate = {Mode::multisum, 3, t, true};
            break;
        }
    }
    return plan;
}

}  // namespace

ConstructionResult build_construction(BoundKind kind, const BoundParams& params,
                                      const Budget& budget, const TraceSink& trace) {
    ConstructionResult out;
    out.params = params;
    Plan plan = plan_for(kind, out.params, budget, trace);
    out.family = std::move(plan.construction);
    out.predicate = plan.problem.predicate;
    out.formula = bound(kind, out.params);
    out.valid = family_check(out.family, out.predicate).holds;
    return out;
}

CertifyReport certify(BoundKind kind, const BoundParams& params, const Budget& budget, const TraceSink& trace) {
    CertifyReport rep;
    rep.kind = kind;
    rep.params = params;
    Plan plan = plan_for(kind, rep.params, budget, trace);
    rep.formula = bound(kind, rep.params);
    rep.construction = plan.construction.size();
    rep.construction_valid = family_check(plan.construction, plan.problem.predicate).holds;
    rep.threshold = plan.threshold;
    rep.threshold_met = !plan.threshold || static_cast<Count>(rep.params.n) >= *plan.threshold;
    rep.search = max_family(plan.problem, trace);

    const bool exact = rep.search.status == SearchStatus::exact;
    rep.agree = exact && rep.formula == rep.construction && rep.formula == rep.search.optimum;
    if (!rep.construction_valid) {
        rep.verdict = Verdict::violated;
        rep.note = "construction fails its predicate";
    } else if (!exact) {
        rep.verdict = Verdict::inconclusive;
        rep.note = "search budget exceeded";
    } else if (!rep.threshold_met) {
        rep.verdict = Verdict::inconclusive;
        rep.note = "n below the theorem's threshold " + std::to_string(*rep.threshold);
    } else if (rep.agree) {
        rep.verdict = Verdict::verified;
    } else {
        rep.verdict = Verdict::violated;
        rep.note = rep.search.optimum > rep.formula ? "search optimum exceeds the bound"
                                                    : "bound not attained by construction or search";
    }
    return rep;
}

}  // namespace qsum
