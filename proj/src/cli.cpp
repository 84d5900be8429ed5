#include "qsum/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qsum/errors.hpp"
#include "qsum/io.hpp"
#include "qsum/ivp.hpp"
#include "qsum/order_shadow.hpp"
#include "qsum/search.hpp"

namespace qsum {

namespace {

struct Options {
    std::optional<int> n, q, s, rank, support, levels, i, j, a, b, c, k, n_cap;
    int t = 1;
    std::optional<Count> m;
    std::string mode = "sum";
    std::string kind = "strong";
    std::string target;
    std::string alphas;
    std::string p;
    Count budget_nodes = Budget{}.max_nodes;
    double budget_secs = Budget{}.max_seconds;
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 100'000;
    int samples = 1000;
    bool trace = false;
    bool symmetry = false;
    bool left = false;
    bool global = false;
    std::string in;
    std::string out;
};

enum class Status { verified, violated, inconclusive, error };

const char* to_string(Status s) {
    switch (s) {
        case Status::verified: return "verified";
        case Status::violated: return "violated";
        case Status::inconclusive: return "inconclusive";
        case Status::error: return "error";
    }
    return "?";
}

struct Report {
    Json parameters = Json::object();
    Json results = Json::object();
    Json stats = Json::object();
    Status status = Status::verified;
    bool budget_exceeded = false;
};

class UsageError : public Error {
public:
    using Error::Error;
};

struct Context {
    Options& o;
    std::ostream& err;

    int need(const std::optional<int>& v, const char* flag) const {
        if (!v) throw UsageError(std::string("missing required flag ") + flag);
        return *v;
    }
    int n() const { return need(o.n, "--n"); }
    int q() const { return need(o.q, "--q"); }
    int s_or_default() const { return o.s ? *o.s : q() + 1; }

    Budget budget() const {
        Budget b;
        b.max_nodes = o.budget_nodes;
        b.max_seconds = o.budget_secs;
        b.threads = 1;
        if (o.threads) {
            b.threads = *o.threads;
        } else if (const char* env = std::getenv("QSUM_THREADS")) {
            b.threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        }
        if (b.threads == 0) b.threads = 1;
        return b;
    }

    TraceSink trace() const {
        if (!o.trace) return {};
        std::ostream* e = &err;
        return [e](const TraceEvent& ev) {
            Json j{{"node", ev.node}, {"depth", ev.depth}, {"bound", ev.bound}, {"best", ev.best}};
            *e << j.dump() << '\n';
        };
    }

    std::uint64_t seed() const {
        if (o.seed) return *o.seed;
        std::random_device rd;
        const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
        err << "seed: " << s << '\n';
        return s;
    }

    Slice universe() const {
        if (o.rank && o.support) throw UsageError("--rank and --support are exclusive");
        if (o.rank) return Slice::of_rank(*o.rank);
        if (o.support) return Slice::of_support(*o.support);
        return Slice::everything();
    }

    void write_out(const Json& j) const {
        if (o.out.empty()) return;
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ParameterError("cannot write " + o.out);
        f << dump(j);
    }

    Json input() const {
        if (o.in.empty()) throw UsageError("missing required flag --in");
        return read_json_file(o.in);
    }
};

Json stats_json(const CliqueStats& s) {
    return {{"nodes", s.nodes}, {"witness_nodes", s.witness_nodes}, {"best_trace", s.best_trace}};
}

Json members_json(const VecFamily& f) { return to_json(f)["members"]; }

Json search_json(const SearchResult& r) {
    Json j{{"status", to_string(r.status)},
           {"optimum", r.optimum},
           {"universe_size", r.universe_size},
           {"edges", r.edges}};
    if (r.witness.size() > 0 || r.optimum == 0) j["witness"] = members_json(r.witness);
    return j;
}

Status status_of(Verdict v) {
    switch (v) {
        case Verdict::verified: return Status::verified;
        case Verdict::violated: return Status::violated;
        case Verdict::inconclusive: return Status::inconclusive;
    }
    return Status::error;
}

std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<int> parse_ints(const std::string& s, const char* flag) {
    std::vector<int> v;
    for (const auto& part : split(s, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError(std::string("bad integer list for ") + flag + ": " + s);
        }
    }
    return v;
}

Json params_json(const BoundParams& p) {
    Json j{{"n", p.n}, {"q", p.q}, {"s", p.s}, {"r", p.r}, {"t", p.t}};
    if (p.m_of_n) j["m_of_n"] = *p.m_of_n;
    return j;
}

BoundParams bound_params(const Context& cx, BoundKind kind) {
    BoundParams p;
    p.n = cx.n();
    const bool katona = kind == BoundKind::katona_multisum_2 || kind == BoundKind::katona_multisum_3;
    p.q = katona ? (cx.o.q ? *cx.o.q : 2) : cx.q();
    p.s = cx.o.s ? *cx.o.s : 0;
    if (p.s == 0 && (kind == BoundKind::support_uniform || kind == BoundKind::support_uniform_t ||
                     kind == BoundKind::nonuniform_small_s))
        throw UsageError("missing required flag --s");
    p.r = cx.o.rank ? *cx.o.rank : (cx.o.support ? *cx.o.support : 0);
    p.t = cx.o.t;
    if (cx.o.m) p.m_of_n = *cx.o.m;
    return p;
}

// ---------------------------------------------------------------- commands

void cmd_enumerate(const Context& cx, Report& rep) {
    const int n = cx.n(), q = cx.q();
    const Slice slice = cx.universe();
    rep.parameters = {{"n", n}, {"q", q}, {"universe", slice.to_string()}};
    const auto fam = enumerate_slice(n, q, slice);
    rep.results = {{"count", fam.size()}, {"members", members_json(fam)}};
    cx.write_out(to_json(fam));
}

void cmd_construct(const Context& cx, Report& rep) {
    const BoundKind kind = parse_bound_kind(cx.o.target);
    const auto built = build_construction(kind, bound_params(cx, kind), cx.budget(), cx.trace());
    rep.parameters = params_json(built.params);
    rep.parameters["kind"] = to_string(kind);
    rep.results = {{"formula", built.formula},
                   {"size", built.family.size()},
                   {"valid", built.valid},
                   {"members", members_json(built.family)}};
    rep.status = built.valid && built.formula == built.family.size() ? Status::verified : Status::violated;
    cx.write_out(to_json(built.family));
}

void cmd_shadow(const Context& cx, Report& rep) {
    const int levels = cx.o.levels.value_or(1);
    if (!cx.o.in.empty()) {
        const auto fam = family_from_json(cx.input());
        const auto sh = shadow(fam, levels);
        rep.parameters = {{"in", to_json(fam)}, {"levels", levels}};
        rep.results = {{"family_size", fam.size()},
                       {"shadow_size", sh.size()},
                       {"shadow", members_json(sh)}};
        cx.write_out(to_json(sh));
        return;
    }
    const int n = cx.n(), q = cx.q(), r = cx.need(cx.o.rank, "--rank");
    if (!cx.o.m) throw UsageError("missing required flag --m (or --in)");
    const auto seg = initial_segment(n, q, r, static_cast<std::size_t>(*cx.o.m));
    const auto sh = shadow(seg, levels);
    rep.parameters = {{"n", n}, {"q", q}, {"rank", r}, {"m", *cx.o.m}, {"levels", levels}};
    rep.results = {{"segment", members_json(seg)}, {"shadow_size", sh.size()}, {"shadow", members_json(sh)}};
    if (levels == 1) {
        const auto oracle = min_shadow_oracle(n, q, r, static_cast<std::size_t>(*cx.o.m), cx.o.budget_nodes);
        rep.results["oracle"] = {{"status", to_string(oracle.status)},
                                 {"min_size", oracle.min_size},
                                 {"subsets_examined", oracle.subsets_examined},
                                 {"achieved_by_segment", oracle.achieved_by_segment}};
        if (oracle.status != SearchStatus::exact) {
            rep.status = Status::inconclusive;
            rep.budget_exceeded = true;
        } else {
            rep.status = oracle.achieved_by_segment ? Status::verified : Status::violated;
        }
    }
    cx.write_out(to_json(sh));
}

void cmd_shift(const Context& cx, Report& rep) {
    const auto fam = family_from_json(cx.input());
    VecFamily shifted(fam.n(), fam.q());
    rep.parameters = {{"in", to_json(fam)}};
    if (cx.o.left) {
        shifted = left_shift(fam);
        rep.parameters["left"] = true;
    } else {
        const int i = cx.need(cx.o.i, "--i"), j = cx.need(cx.o.j, "--j");
        shifted = shift(fam, i, j);
        rep.parameters["i"] = i;
        rep.parameters["j"] = j;
    }
    rep.results = {{"family", members_json(shifted)}, {"size", shifted.size()}};
    std::optional<int> rank;
    bool uniform = fam.size() > 0;
    for (const auto& x : fam) {
        if (!rank) rank = x.rank();
        uniform = uniform && x.rank() == *rank;
    }
    if (uniform && *rank > 0) {
        const auto before = shadow(fam).size(), after = shadow(shifted).size();
        rep.results["shadow_before"] = before;
        rep.results["shadow_after"] = after;
        if (after > before) rep.status = Status::violated;
    }
    cx.write_out(to_json(shifted));
}

void cmd_verify(const Context& cx, Report& rep) {
    const auto fam = family_from_json(cx.input());
    PredicateSpec p{parse_mode(cx.o.mode), cx.o.s ? *cx.o.s : fam.q() + 1, cx.o.t, true};
    p.validate();
    const auto check = family_check(fam, p);
    rep.parameters = {{"family", to_json(fam)}, {"mode", to_string(p.mode)}, {"s", p.s}, {"t", p.t}};
    rep.results = {{"holds", check.holds}, {"size", fam.size()}};
    if (check.witness)
        rep.results["witness"] = {entries_json(check.witness->first), entries_json(check.witness->second)};
    rep.status = check.holds ? Status::verified : Status::violated;
    cx.write_out(to_json(fam));
}

void apply_search(Report& rep, const SearchResult& r) {
    rep.results = search_json(r);
    rep.stats = stats_json(r.stats);
    if (r.status != SearchStatus::exact) {
        rep.status = Status::inconclusive;
        rep.budget_exceeded = true;
    }
}

void cmd_search(const Context& cx, Report& rep) {
    if (cx.o.target == "mofn") {
        const int n = cx.n();
        rep.parameters = {{"target", "mofn"}, {"n", n}, {"budget_nodes", cx.o.budget_nodes}};
        const auto r = m_of_n(n, cx.budget(), cx.trace());
        apply_search(rep, r);
        cx.write_out(to_json(r.witness));
        return;
    }
    if (!cx.o.target.empty() && cx.o.target != "family")
        throw UsageError("search target must be 'family' or 'mofn'");
    SearchProblem prob;
    prob.n = cx.n();
    prob.q = cx.q();
    prob.universe = cx.universe();
    prob.predicate = {parse_mode(cx.o.mode), cx.s_or_default(), cx.o.t, true};
    prob.budget = cx.budget();
    prob.symmetry_reduction = cx.o.symmetry;
    rep.parameters = {{"n", prob.n},
                      {"q", prob.q},
                      {"universe", prob.universe.to_string()},
                      {"mode", to_string(prob.predicate.mode)},
                      {"s", prob.predicate.s},
                      {"t", prob.predicate.t},
                      {"symmetry", prob.symmetry_reduction},
                      {"budget_nodes", cx.o.budget_nodes}};
    const auto r = max_family(prob, cx.trace());
    apply_search(rep, r);
    cx.write_out(to_json(r.witness));
}

void cmd_certify(const Context& cx, Report& rep) {
    const BoundKind kind = parse_bound_kind(cx.o.target);
    const auto c = certify(kind, bound_params(cx, kind), cx.budget(), cx.trace());
    rep.parameters = params_json(c.params);
    rep.parameters["kind"] = to_string(kind);
    rep.parameters["budget_nodes"] = cx.o.budget_nodes;
    rep.results = {{"formula", c.formula},
                   {"construction", c.construction},
                   {"construction_valid", c.construction_valid},
                   {"search", c.search.optimum},
                   {"search_status", to_string(c.search.status)},
                   {"agree", c.agree},
                   {"threshold_met", c.threshold_met},
                   {"verdict", to_string(c.verdict)}};
    if (c.search.witness.size() > 0) rep.results["witness"] = members_json(c.search.witness);
    if (c.threshold) rep.results["threshold"] = *c.threshold;
    if (!c.note.empty()) rep.results["note"] = c.note;
    rep.stats = stats_json(c.search.stats);
    rep.stats["universe_size"] = c.search.universe_size;
    rep.stats["edges"] = c.search.edges;
    rep.status = status_of(c.verdict);
    rep.budget_exceeded = c.search.status != SearchStatus::exact;
}

// ---------------------------------------------------------------- ivp

Json check_json(const SystemCheck& c) {
    Json j{{"valid", c.valid}};
    if (c.witness) j["witness"] = {c.witness->first, c.witness->second};
    return j;
}

std::vector<double> default_p(int q) {
    const double p0 = 1.0 / (std::sqrt(static_cast<double>(q)) + 1.0);
    std::vector<double> p(q + 1, p0 * p0);
    p[0] = p[q] = p0;
    if (q == 1) p = {0.5, 0.5};
    return p;
}

void ivp_system_result(const Context& cx, Report& rep, const PairSystem& sys) {
    const auto chk = system_check(sys);
    rep.results = {{"system", to_json(sys)}, {"size", sys.size()}, {"check", check_json(chk)}};
    rep.status = chk.valid ? Status::verified : Status::violated;
    cx.write_out(to_json(sys));
}

void cmd_ivp(const Context& cx, Report& rep) {
    const std::string& op = cx.o.target;
    const AlphaScope scope = cx.o.global ? AlphaScope::global : AlphaScope::pair_local;
    rep.parameters["op"] = op;
    if (op == "check") {
        const auto sys = system_from_json(cx.input());
        rep.parameters["system"] = to_json(sys);
        const auto chk = system_check(sys);
        rep.results = check_json(chk);
        rep.status = chk.valid ? Status::verified : Status::violated;
    } else if (op == "saturate" || op == "reduce") {
        const auto sys = system_from_json(cx.input());
        rep.parameters["system"] = to_json(sys);
        ivp_system_result(cx, rep, op == "saturate" ? saturate(sys) : reduce_parameter(sys));
    } else if (op == "abc") {
        const int a = cx.need(cx.o.a, "--a"), b = cx.need(cx.o.b, "--b"), c = cx.need(cx.o.c, "--c");
        const int q = cx.o.q.value_or(2), s = cx.o.s.value_or(3);
        rep.parameters.update({{"a", a}, {"b", b}, {"c", c}, {"q", q}, {"s", s}});
        ivp_system_result(cx, rep, construct_abc(a, b, c, s, q));
        rep.results["formula"] = abc_cardinality(a, b, c).str();
    } else if (op == "alpha") {
        const int q = cx.q();
        if (cx.o.alphas.empty()) throw UsageError("missing required flag --alphas");
        const auto alphas = parse_ints(cx.o.alphas, "--alphas");
        rep.parameters.update({{"q", q}, {"alphas", alphas}});
        ivp_system_result(cx, rep, construct_alpha(alphas, q));
        rep.results["formula"] = alpha_cardinality(alphas).str();
    } else if (op == "fk") {
        const int k = cx.need(cx.o.k, "--k");
        rep.parameters["k"] = k;
        const auto f = f_k(k);
        rep.results = {{"value", f.value.str()}, {"argmax", {f.x, f.y, f.z}}};
    } else if (op == "lym") {
        const auto sys = system_from_json(cx.input());
        rep.parameters["system"] = to_json(sys);
        const auto l = lym_strong(sys);
        rep.results = {{"sum", rational_string(l.sum)},
                       {"sum_num", numerator(l.sum).str()},
                       {"sum_den", denominator(l.sum).str()},
                       {"a", l.a},
                       {"b", l.b},
                       {"bound", l.bound},
                       {"holds", l.holds}};
        rep.status = l.holds ? Status::verified : Status::violated;
    } else if (op == "weighted" || op == "disjoint") {
        const auto sys = system_from_json(cx.input());
        rep.parameters["system"] = to_json(sys);
        rep.parameters["scope"] = cx.o.global ? "global" : "pair_local";
        const bool exact = !cx.o.p.empty() && cx.o.p.find('.') == std::string::npos && op == "weighted";
        if (exact) {
            std::vector<Rational> p;
            for (const auto& part : split(cx.o.p, ',')) {
                try {
                    p.emplace_back(part);
                } catch (const std::exception&) {
                    throw UsageError("bad rational in --p: " + part);
                }
            }
            rep.parameters["p"] = cx.o.p;
            const auto sum = weighted_sum(sys, p, scope);
            rep.results = {{"sum", rational_string(sum)},
                           {"sum_num", numerator(sum).str()},
                           {"sum_den", denominator(sum).str()},
                           {"bound", 1},
                           {"holds", sum <= 1}};
            rep.status = sum <= 1 ? Status::verified : Status::violated;
            return;
        }
        std::vector<double> p;
        if (cx.o.p.empty()) {
            p = default_p(sys.q());
        } else {
            for (const auto& part : split(cx.o.p, ',')) {
                try {
                    p.push_back(std::stod(part));
                } catch (const std::exception&) {
                    throw UsageError("bad number in --p: " + part);
                }
            }
        }
        rep.parameters["p"] = p;
        if (op == "weighted") {
            const double sum = weighted_sum(sys, p, scope);
            rep.results = {{"sum", sum}, {"bound", 1}, {"holds", sum <= 1.0 + 1e-12}};
            rep.status = sum <= 1.0 + 1e-12 ? Status::verified : Status::violated;
        } else {
            const std::uint64_t seed = cx.seed();
            rep.parameters["seed"] = seed;
            rep.parameters["trials"] = cx.o.trials;
            const auto d = empirical_disjointness(sys, p, cx.o.trials, seed, scope);
            rep.results = {{"trials", d.trials},
                           {"event_hits", d.event_hits},
                           {"co_occurrences", d.co_occurrences},
                           {"disjoint", d.disjoint()}};
            rep.status = d.disjoint() ? Status::verified : Status::violated;
        }
    } else if (op == "search") {
        const int q = cx.o.q.value_or(2), k = cx.need(cx.o.k, "--k");
        const SystemKind kind = parse_system_kind(cx.o.kind);
        const int n_cap = cx.o.n_cap.value_or(2 * k);
        rep.parameters.update({{"q", q}, {"k", k}, {"kind", to_string(kind)}, {"n_cap", n_cap},
                               {"budget_nodes", cx.o.budget_nodes}});
        const auto r = max_system(q, k, kind, n_cap, cx.budget(), cx.trace());
        rep.results = {{"status", to_string(r.status)},
                       {"optimum", r.optimum},
                       {"candidates", r.candidates},
                       {"n_cap", r.n_cap},
                       {"witness", to_json(r.witness)}};
        if (r.f_k) {
            rep.results["f_k"] = r.f_k->str();
            rep.results["k_f_k"] = r.k_f_k->str();
        }
        rep.stats = stats_json(r.stats);
        if (r.status != SearchStatus::exact) {
            rep.status = Status::inconclusive;
            rep.budget_exceeded = true;
        }
        cx.write_out(to_json(r.witness));
    } else if (op == "audit") {
        const std::uint64_t seed = cx.seed();
        const int q = cx.o.q.value_or(2);
        const int n = cx.o.n.value_or(6);
        rep.parameters.update({{"seed", seed}, {"samples", cx.o.samples}, {"q", q}, {"n", n}});
        std::mt19937_64 rng(seed);
        int lym_failures = 0, weighted_failures = 0, saturate_failures = 0, checked = 0;
        double max_weighted = 0;
        for (int i = 0; i < cx.o.samples; ++i) {
            const auto kind = i % 2 == 0 ? SystemKind::strong : SystemKind::weak;
            const auto sys = random_system(n, q, q + 1, kind, 3, 40, rng);
            ++checked;
            if (q == 2 && kind == SystemKind::strong && !lym_strong(sys).holds) ++lym_failures;
            const auto sat = saturate(sys);
            if (!system_check(sat).valid || sat.size() != sys.size()) ++saturate_failures;
            const double w = weighted_sum(sat, default_p(q), AlphaScope::pair_local);
            max_weighted = std::max(max_weighted, w);
            if (w > 1.0 + 1e-12) ++weighted_failures;
        }
        rep.results = {{"systems", checked},
                       {"lym_failures", lym_failures},
                       {"saturate_failures", saturate_failures},
                       {"weighted_failures", weighted_failures},
                       {"max_weighted_sum", max_weighted}};
        rep.status = lym_failures + saturate_failures + weighted_failures == 0 ? Status::verified
                                                                                : Status::violated;
    } else {
        throw UsageError("unknown ivp operation: " + op);
    }
}

// ---------------------------------------------------------------- wiring

using Binder = std::function<void(CLI::App*, Options&)>;

const std::map<std::string, Binder>& binders() {
    static const std::map<std::string, Binder> table = {
        {"n", [](CLI::App* a, Options& o) { a->add_option("--n", o.n, "ground length"); }},
        {"q", [](CLI::App* a, Options& o) { a->add_option("--q", o.q, "alphabet bound"); }},
        {"s", [](CLI::App* a, Options& o) { a->add_option("--s", o.s, "sum threshold (default q+1)"); }},
        {"t", [](CLI::App* a, Options& o) { a->add_option("--t", o.t, "intersection size"); }},
        {"rank", [](CLI::App* a, Options& o) { a->add_option("--rank", o.rank, "rank slice"); }},
        {"support", [](CLI::App* a, Options& o) { a->add_option("--support", o.support, "support slice"); }},
        {"mode", [](CLI::App* a, Options& o) {
             a->add_option("--mode", o.mode, "sum|multisum")->check(CLI::IsMember({"sum", "multisum"}));
         }},
        {"kind", [](CLI::App* a, Options& o) {
             a->add_option("--kind", o.kind, "strong|weak")->check(CLI::IsMember({"strong", "weak"}));
         }},
        {"budget", [](CLI::App* a, Options& o) {
             a->add_option("--budget-nodes", o.budget_nodes, "search node limit");
             a->add_option("--budget-secs", o.budget_secs, "search wall-clock limit");
             a->add_option("--threads", o.threads, "worker threads (env QSUM_THREADS)");
             a->add_flag("--trace", o.trace, "emit search events on stderr");
         }},
        {"in", [](CLI::App* a, Options& o) { a->add_option("--in", o.in, "input JSON"); }},
        {"out", [](CLI::App* a, Options& o) { a->add_option("--out", o.out, "write canonical output JSON"); }},
        {"seed", [](CLI::App* a, Options& o) { a->add_option("--seed", o.seed, "random seed"); }},
        {"levels", [](CLI::App* a, Options& o) { a->add_option("--levels", o.levels, "shadow depth"); }},
        {"m", [](CLI::App* a, Options& o) { a->add_option("--m", o.m, "segment length / M(n) override"); }},
        {"ij", [](CLI::App* a, Options& o) {
             a->add_option("--i", o.i, "shift target coordinate");
             a->add_option("--j", o.j, "shift source coordinate");
             a->add_flag("--left", o.left, "shift to a left-shifted family");
         }},
        {"abc", [](CLI::App* a, Options& o) {
             a->add_option("--a", o.a);
             a->add_option("--b", o.b);
             a->add_option("--c", o.c);
         }},
        {"ivp", [](CLI::App* a, Options& o) {
             a->add_option("--alphas", o.alphas, "comma-separated part sizes");
             a->add_option("--k", o.k, "support bound k");
             a->add_option("--p", o.p, "comma-separated probabilities");
             a->add_option("--trials", o.trials, "random partitions to sample");
             a->add_option("--samples", o.samples, "random systems to audit");
             a->add_option("--n-cap", o.n_cap, "ground set cap for search");
             a->add_flag("--global", o.global, "count alpha over all n coordinates");
         }},
        {"symmetry", [](CLI::App* a, Options& o) {
             a->add_flag("--symmetry", o.symmetry, "quotient by coordinate permutations");
         }},
    };
    return table;
}

struct Command {
    const char* name;
    const char* help;
    const char* positional;
    bool positional_required;
    std::vector<std::string> flags;
    void (*run)(const Context&, Report&);
};

const std::vector<Command>& commands() {
    static const std::vector<Command> list = {
        {"enumerate", "list a slice of Q^n in colex order", nullptr, false, {"n", "q", "rank", "support", "out"}, cmd_enumerate},
        {"construct", "build an extremal construction", "kind", true,
         {"n", "q", "s", "t", "rank", "support", "m", "budget", "out"}, cmd_construct},
        {"shadow", "shadow of a family or of an initial segment", nullptr, false,
         {"n", "q", "rank", "m", "levels", "in", "out", "budget"}, cmd_shadow},
        {"shift", "apply a shifting operator", nullptr, false, {"in", "ij", "out"}, cmd_shift},
        {"verify", "check a family against a predicate", nullptr, false, {"in", "s", "t", "mode", "out"}, cmd_verify},
        {"search", "exact maximum family search", "target", false,
         {"n", "q", "s", "t", "rank", "support", "mode", "budget", "symmetry", "out"}, cmd_search},
        {"certify", "formula vs construction vs search", "kind", true,
         {"n", "q", "s", "t", "rank", "support", "m", "budget"}, cmd_certify},
        {"ivp", "vector-pair systems", "op", true,
         {"n", "q", "s", "kind", "abc", "ivp", "in", "out", "seed", "budget"}, cmd_ivp},
    };
    return list;
}

int exit_code(const Report& rep) {
    if (rep.budget_exceeded) return 3;
    switch (rep.status) {
        case Status::verified:
        case Status::inconclusive: return 0;
        case Status::violated: return 1;
        case Status::error: return 2;
    }
    return 2;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"s-sum t-intersecting families of vectors over {0..q}", "qsum"};
    app.require_subcommand(1);
    const Command* chosen = nullptr;
    for (const auto& cmd : commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        if (cmd.positional) {
            auto* opt = sub->add_option(cmd.positional, opts.target, cmd.positional);
            if (cmd.positional_required) opt->required();
        }
        for (const auto& f : cmd.flags) binders().at(f)(sub, opts);
        sub->callback([&chosen, &cmd] { chosen = &cmd; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    std::string command = chosen->name;
    if (!opts.target.empty()) command += " " + opts.target;

    Report rep;
    Context cx{opts, err};
    const auto start = std::chrono::steady_clock::now();
    try {
        chosen->run(cx, rep);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.get_subcommand(chosen->name)->help();
        return 2;
    } catch (const SchemaError& e) {
        err << "error: schema violation at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
            << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        rep.status = Status::error;
        rep.results = {{"error", e.what()}};
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

    Json report{{"command", command},
                {"parameters", rep.parameters},
                {"results", rep.results},
                {"status", to_string(rep.status)},
                {"wall_time_ms", static_cast<long long>(elapsed.count())},
                {"stats", rep.stats}};
    out << dump(report);
    return exit_code(rep);
}

}  // namespace qsum
