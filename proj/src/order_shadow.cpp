#include "qsum/order_shadow.hpp"

#include <algorithm>
#include <string>

#include "qsum/bitset.hpp"
#include "qsum/errors.hpp"

namespace qsum {

SetFamily canonical_sets(SetFamily family) {
    std::sort(family.begin(), family.end(), SetColexLess{});
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

namespace {

int uniform_rank(const VecFamily& family) {
    if (family.empty()) return 0;
    const int r = family[0].rank();
    for (const auto& x : family)
        if (x.rank() != r)
            throw ParameterError("shadow requires a rank-uniform family; found ranks " + std::to_string(r) + " and " +
                                 std::to_string(x.rank()));
    return r;
}

VecFamily shadow_once(const VecFamily& family) {
    std::vector<QVec> out;
    for (const auto& x : family) {
        auto e = x.entries();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            --e[i];
            out.emplace_back(x.q(), e);
            ++e[i];
        }
    }
    return VecFamily(family.n(), family.q(), std::move(out));
}

}  // namespace

VecFamily shadow(const VecFamily& family, int levels) {
    if (levels < 1) throw ParameterError("shadow levels must be >= 1");
    uniform_rank(family);
    VecFamily cur = family;
    for (int l = 0; l < levels; ++l) cur = shadow_once(cur);
    return cur;
}

SetFamily shadow(const SetFamily& family, int levels) {
    if (levels < 1) throw ParameterError("shadow levels must be >= 1");
    if (family.empty()) return {};
    const std::size_t r = family[0].size();
    for (const auto& f : family)
        if (f.size() != r) throw ParameterError("shadow requires a uniform set family");
    SetFamily cur = canonical_sets(family);
    for (int l = 0; l < levels; ++l) {
        SetFamily next;
        for (const auto& f : cur) {
            for (std::size_t skip = 0; skip < f.size(); ++skip) {
                std::vector<int> g;
                g.reserve(f.size() - 1);
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (k != skip) g.push_back(f.elements()[k]);
                next.emplace_back(std::move(g));
            }
        }
        cur = canonical_sets(std::move(next));
    }
    return cur;
}

namespace {

std::vector<QVec> slice_members(int n, int q, int r, std::size_t m) {
    auto slice = enumerate_slice(n, q, Slice::of_rank(r));
    if (m > slice.size())
        throw ParameterError("segment size " + std::to_string(m) + " exceeds |Q(n,r)| = " +
                             std::to_string(slice.size()));
    return slice.members();
}

}  // namespace

VecFamily initial_segment(int n, int q, int r, std::size_t m) {
    auto all = slice_members(n, q, r, m);
    all.resize(m);
    return VecFamily(n, q, std::move(all));
}

VecFamily final_segment(int n, int q, int r, std::size_t m) {
    auto all = slice_members(n, q, r, m);
    std::vector<QVec> top(all.end() - static_cast<std::ptrdiff_t>(m), all.end());
    return VecFamily(n, q, std::move(top));
}

VecFamily complement(const VecFamily& family) {
    std::vector<QVec> out;
    out.reserve(family.size());
    for (const auto& x : family) out.push_back(x.complement());
    return VecFamily(family.n(), family.q(), std::move(out));
}

QVec characteristic_vector(const IndexSet& set, int n) {
    std::vector<QVec::Entry> e(static_cast<std::size_t>(n), 0);
    for (int i : set) {
        if (i > n) throw ParameterError("set element " + std::to_string(i) + " exceeds ground size " + std::to_string(n));
        e[static_cast<std::size_t>(i - 1)] = 1;
    }
    return QVec(1, std::move(e));
}

namespace {

void check_shift_indices(int n, int i, int j) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw ParameterError("shift indices must satisfy 1 <= i != j <= n (n=" + std::to_string(n) + ", i=" +
                             std::to_string(i) + ", j=" + std::to_string(j) + ")");
}

}  // namespace

QVec shift(const QVec& x, int i, int j) {
    check_shift_indices(x.n(), i, j);
    const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
    if (x.entries()[a] >= x.entries()[b]) return x;
    auto e = x.entries();
    std::swap(e[a], e[b]);
    return QVec(x.q(), std::move(e));
}

VecFamily shift(const VecFamily& family, int i, int j) {
    check_shift_indices(family.n(), i, j);
    std::vector<QVec> out;
    out.reserve(family.size());
    for (const auto& x : family) {
        QVec image = shift(x, i, j);
        out.push_back(family.contains(image) ? x : std::move(image));
    }
    return VecFamily(family.n(), family.q(), std::move(out));
}

VecFamily left_shift(const VecFamily& family) {
    VecFamily cur = family;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 1; i <= cur.n() && !changed; ++i) {
            for (int j = i + 1; j <= cur.n(); ++j) {
                VecFamily next = shift(cur, i, j);
                if (next != cur) {
                    cur = std::move(next);
                    changed = true;
                    break;
                }
            }
        }
    }
    return cur;
}

bool is_left_shifted(const VecFamily& family) {
    for (int i = 1; i <= family.n(); ++i)
        for (int j = i + 1; j <= family.n(); ++j)
            if (shift(family, i, j) != family) return false;
    return true;
}

namespace {

// Depth-first walk over index subsets with a running shadow union per depth.
class SubsetScan {
public:
    SubsetScan(const std::vector<Bitset>& shadows, std::size_t m)
        : shadows_(shadows), m_(m), stack_(m + 1, Bitset(shadows.empty() ? 0 : shadows[0].size())) {}

    std::size_t run() {
        best_ = SIZE_MAX;
        stack_[0].clear();
        walk(0, 0);
        return best_;
    }

    Count examined() const { return examined_; }

private:
    void walk(std::size_t depth, std::size_t from) {
        if (depth == m_) {
            ++examined_;
            best_ = std::min(best_, stack_[depth].count());
            return;
        }
        const std::size_t remaining = m_ - depth;
        for (std::size_t v = from; v + remaining <= shadows_.size(); ++v) {
            stack_[depth + 1] = stack_[depth];
            stack_[depth + 1] |= shadows_[v];
            walk(depth + 1, v + 1);
        }
    }

    const std::vector<Bitset>& shadows_;
    std::size_t m_;
    std::vector<Bitset> stack_;
    std::size_t best_ = SIZE_MAX;
    Count examined_ = 0;
};

}  // namespace

ShadowOracleResult min_shadow_oracle(int n, int q, int r, std::size_t m, Count max_subsets) {
    const auto level = enumerate_slice(n, q, Slice::of_rank(r));
    if (m > level.size())
        throw ParameterError("subset size " + std::to_string(m) + " exceeds |Q(n,r)| = " +
                             std::to_string(level.size()));
    ShadowOracleResult res;
    const Count subsets = binomial(static_cast<long long>(level.size()), static_cast<long long>(m));
    if (subsets > max_subsets) {
        res.status = SearchStatus::budget_exceeded;
        return res;
    }

    const VecFamily below =
        r > 0 ? enumerate_slice(n, q, Slice::of_rank(r - 1)) : VecFamily(n, q);
    std::vector<Bitset> shadows;
    shadows.reserve(level.size());
    for (const auto& x : level) {
        Bitset b(below.size());
        if (r > 0) {
            for (const auto& y : shadow(VecFamily(n, q, {x})))
                b.set(*below.index_of(y));
        }
        shadows.push_back(std::move(b));
    }

    SubsetScan scan(shadows, m);
    res.min_size = scan.run();
    res.subsets_examined = scan.examined();
    // The initial segment is the first m members in colex order.
    Bitset seg(below.size());
    for (std::size_t k = 0; k < m; ++k) seg |= shadows[k];
    res.segment_shadow_size = seg.count();
    res.achieved_by_segment = res.segment_shadow_size == res.min_size;
    return res;
}

}  // namespace qsum
