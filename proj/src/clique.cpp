#include "qsum/clique.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "qsum/errors.hpp"

namespace qsum {

Graph::Graph(std::size_t vertices) : rows_(vertices, Bitset(vertices)) {}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) return;
    rows_[u].set(v);
    rows_[v].set(u);
}

std::size_t Graph::edge_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.count();
    return total / 2;
}

std::vector<std::size_t> greedy_clique(const Graph& graph) {
    Bitset cand(graph.size());
    cand.set_all();
    std::vector<std::size_t> clique;
    while (cand.any()) {
        std::size_t pick = graph.size(), pick_deg = 0;
        cand.for_each([&](std::size_t v) {
            const std::size_t d = graph.neighbors(v).intersection_count(cand);
            if (pick == graph.size() || d > pick_deg) {
                pick = v;
                pick_deg = d;
            }
        });
        clique.push_back(pick);
        cand &= graph.neighbors(pick);
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Shared {
    const Graph& graph;
    const Budget& budget;
    const TraceSink& trace;
    Clock::time_point start = Clock::now();
    std::atomic<Count> nodes{0};
    std::atomic<bool> abort{false};
    std::mutex trace_mutex;

    Shared(const Graph& g, const Budget& b, const TraceSink& t) : graph(g), budget(b), trace(t) {}

    void emit(const TraceEvent& ev) {
        if (!trace) return;
        std::lock_guard lock(trace_mutex);
        trace(ev);
    }
};

// Greedy coloring of `cand`. Vertices are taken by degree inside `cand`
// (highest first, ties by index); `order` lists them by color class and
// `colors[i]` is the class number of order[i].
void color_sort(const Graph& g, const Bitset& cand, std::vector<std::size_t>& order,
                std::vector<std::size_t>& colors) {
    std::vector<std::pair<std::size_t, std::size_t>> by_degree;  // (degree, vertex)
    cand.for_each([&](std::size_t v) { by_degree.emplace_back(g.neighbors(v).intersection_count(cand), v); });
    std::sort(by_degree.begin(), by_degree.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    order.clear();
    colors.clear();
    Bitset uncolored = cand;
    std::size_t color = 0;
    while (order.size() < by_degree.size()) {
        ++color;
        Bitset avail = uncolored;
        for (const auto& [deg, v] : by_degree) {
            if (!avail.test(v)) continue;
            order.push_back(v);
            colors.push_back(color);
            uncolored.reset(v);
            avail.reset(v);
            avail.subtract(g.neighbors(v));
        }
    }
}

std::size_t color_count(const Graph& g, Bitset uncolored) {
    std::size_t color = 0;
    while (uncolored.any()) {
        ++color;
        Bitset avail = uncolored;
        for (std::size_t v = avail.next(); v < avail.size(); v = avail.next(v + 1)) {
            uncolored.reset(v);
            avail.subtract(g.neighbors(v));
        }
    }
    return color;
}

class Worker {
public:
    Worker(Shared& shared, std::size_t floor) : sh_(shared), g_(shared.graph), best_(floor) {}

    Count nodes() const { return nodes_; }
    std::size_t best() const { return best_; }
    const std::vector<std::size_t>& best_clique() const { return best_clique_; }

    // Maximum clique through `root` with the rest drawn from `cand`; only
    // cliques larger than the floor are recorded.
    void solve(std::size_t root, const Bitset& cand) {
        current_.assign(1, root);
        expand(cand);
    }

    // Depth-first in increasing vertex order; the first clique of size
    // `target` reached is the lexicographically smallest one.
    bool find_first(const Bitset& cand, std::size_t target) {
        if (!tick()) return false;
        if (current_.size() == target) {
            best_clique_ = current_;
            return true;
        }
        if (current_.size() + cand.count() < target) return false;
        if (current_.size() + color_count(g_, cand) < target) return false;
        Bitset rest = cand;
        for (std::size_t v = rest.next(); v < rest.size(); v = rest.next(v + 1)) {
            rest.reset(v);
            current_.push_back(v);
            const bool found = find_first(rest & g_.neighbors(v), target);
            current_.pop_back();
            if (found || sh_.abort.load(std::memory_order_relaxed)) return found;
            if (current_.size() + 1 + rest.count() < target) break;
        }
        return false;
    }

    bool tick() {
        ++nodes_;
        if ((nodes_ & 255) == 0) {
            const Count total = sh_.nodes.fetch_add(256, std::memory_order_relaxed) + 256;
            if (total > sh_.budget.max_nodes ||
                std::chrono::duration<double>(Clock::now() - sh_.start).count() > sh_.budget.max_seconds)
                sh_.abort.store(true, std::memory_order_relaxed);
        }
        return !sh_.abort.load(std::memory_order_relaxed);
    }

private:
    void expand(Bitset cand) {
        if (!tick()) return;
        if (cand.none()) {
            if (current_.size() > best_) {
                best_ = current_.size();
                best_clique_ = current_;
                sh_.emit({nodes_, static_cast<int>(current_.size()), best_, best_});
            }
            return;
        }
        std::vector<std::size_t> order, colors;
        color_sort(g_, cand, order, colors);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current_.size() + colors[i] <= best_) return;
            const std::size_t v = order[i];
            current_.push_back(v);
            expand(cand & g_.neighbors(v));
            current_.pop_back();
            if (sh_.abort.load(std::memory_order_relaxed)) return;
            cand.reset(v);
        }
    }

    Shared& sh_;
    const Graph& g_;
    std::size_t best_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_clique_;
    Count nodes_ = 0;
};

struct Task {
    std::size_t root;
    Bitset cand;
};

struct TaskResult {
    std::size_t best = 0;
    std::vector<std::size_t> clique;
    Count nodes = 0;
};

}  // namespace

CliqueResult max_clique(const Graph& graph, const CliqueOptions& options) {
    const Budget& budget = options.budget;
    if (budget.threads == 0) throw ParameterError("thread count must be >= 1");
    Shared shared(graph, budget, options.trace);
    CliqueResult res;

    std::vector<std::size_t> incumbent = greedy_clique(graph);
    const std::size_t floor = incumbent.size();
    res.stats.best_trace.push_back(floor);

    // Independent top-level tasks: each starts from the same heuristic floor
    // and never sees another task's progress, so node counts and per-task
    // results are the same for any thread count.
    std::vector<Task> tasks;
    const bool symmetric = !options.roots.empty();
    std::size_t root_bound = graph.size();
    if (symmetric) {
        Bitset excluded(graph.size());
        for (std::size_t k = 0; k < options.roots.size(); ++k) {
            Bitset cand = graph.neighbors(options.roots[k]);
            cand.subtract(excluded);
            tasks.push_back({options.roots[k], std::move(cand)});
            for (std::size_t v : options.groups.at(k)) excluded.set(v);
        }
    } else {
        Bitset all(graph.size());
        all.set_all();
        std::vector<std::size_t> order, colors;
        color_sort(graph, all, order, colors);
        if (!colors.empty()) root_bound = colors.back();
        Bitset earlier(graph.size());
        std::vector<Task> forward;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (colors[i] > floor) forward.push_back({order[i], graph.neighbors(order[i]) & earlier});
            earlier.set(order[i]);
        }
        tasks.assign(std::make_move_iterator(forward.rbegin()), std::make_move_iterator(forward.rend()));
    }

    shared.emit({0, 0, root_bound, floor});

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size() || shared.abort.load()) return;
            Worker w(shared, floor);
            w.solve(tasks[k].root, tasks[k].cand);
            results[k] = {w.best(), w.best_clique(), w.nodes()};
        }
    };
    const unsigned workers = std::min<std::size_t>(budget.threads, std::max<std::size_t>(tasks.size(), 1));
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    std::size_t best = floor;
    for (const auto& r : results) {
        res.stats.nodes += r.nodes;
        if (r.best > best && !r.clique.empty()) {
            best = r.best;
            incumbent = r.clique;
            std::sort(incumbent.begin(), incumbent.end());
        }
        res.stats.best_trace.push_back(best);
    }
    res.optimum = best;
    res.witness = incumbent;
    shared.emit({res.stats.nodes, 0, shared.abort.load() ? root_bound : best, best});
    if (shared.abort.load()) {
        res.status = SearchStatus::budget_exceeded;
        return res;
    }
    if (symmetric) {
        res.witness.clear();
        return res;
    }

    // Canonical witness: lexicographically smallest clique of optimum size.
    if (best > 0) {
        Worker w(shared, best);
        Bitset all(graph.size());
        all.set_all();
        const bool found = w.find_first(all, best);
        res.stats.witness_nodes = w.nodes();
        if (!found) {
            res.status = SearchStatus::budget_exceeded;
            return res;
        }
        res.witness = w.best_clique();
    }
    return res;
}

}  // namespace qsum
