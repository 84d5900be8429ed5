#include "qsum/qvec.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "qsum/errors.hpp"

namespace qsum {

// ---- IndexSet ----

IndexSet::IndexSet(std::initializer_list<int> elements) : IndexSet(std::vector<int>(elements)) {}

IndexSet::IndexSet(std::vector<int> elements) : elements_(std::move(elements)) {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] < 1) throw ParameterError("index set elements must be positive");
        if (i > 0 && elements_[i - 1] >= elements_[i])
            throw ParameterError("index set elements must be strictly increasing");
    }
}

bool IndexSet::contains(int e) const { return std::binary_search(elements_.begin(), elements_.end(), e); }

std::strong_ordering colex_compare(const IndexSet& a, const IndexSet& b) {
    auto ia = a.elements().rbegin(), ea = a.elements().rend();
    auto ib = b.elements().rbegin(), eb = b.elements().rend();
    // Walk both from the top; the first mismatch is the largest element of
    // the symmetric difference.
    while (ia != ea && ib != eb) {
        if (*ia != *ib) return *ia < *ib ? std::strong_ordering::less : std::strong_ordering::greater;
        ++ia;
        ++ib;
    }
    if (ia == ea && ib == eb) return std::strong_ordering::equal;
    return ia == ea ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---- QVec ----

namespace {

void check_alphabet(int q) {
    if (q < 1 || q > kMaxAlphabet)
        throw ParameterError("alphabet maximum q must lie in 1.." + std::to_string(kMaxAlphabet) + ", got " +
                             std::to_string(q));
}

}  // namespace

QVec::QVec(int q, std::vector<Entry> entries) : q_(q), entries_(std::move(entries)) {
    check_alphabet(q);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] > q)
            throw ParameterError("entry " + std::to_string(entries_[i]) + " at coordinate " + std::to_string(i + 1) +
                                 " exceeds q=" + std::to_string(q));
    }
}

QVec::QVec(int q, std::initializer_list<int> entries)
    : QVec(from_ints(q, std::span<const int>(entries.begin(), entries.size()))) {}

QVec QVec::from_ints(int q, std::span<const int> entries) {
    check_alphabet(q);
    std::vector<Entry> e;
    e.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] < 0 || entries[i] > q)
            throw ParameterError("entry " + std::to_string(entries[i]) + " at coordinate " + std::to_string(i + 1) +
                                 " outside 0.." + std::to_string(q));
        e.push_back(static_cast<Entry>(entries[i]));
    }
    return QVec(q, std::move(e));
}

QVec QVec::zero(int n, int q) {
    if (n < 0) throw ParameterError("vector length must be non-negative");
    return QVec(q, std::vector<Entry>(static_cast<std::size_t>(n), 0));
}

int QVec::rank() const noexcept { return std::accumulate(entries_.begin(), entries_.end(), 0); }

IndexSet QVec::support() const {
    std::vector<int> s;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != 0) s.push_back(static_cast<int>(i) + 1);
    return IndexSet(std::move(s));
}

int QVec::support_size() const noexcept {
    return static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [](Entry e) { return e != 0; }));
}

QVec QVec::complement() const {
    QVec c = *this;
    for (auto& e : c.entries_) e = static_cast<Entry>(q_ - e);
    return c;
}

bool QVec::dominated_by(const QVec& other) const {
    require_same_shape(*this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] > other.entries_[i]) return false;
    return true;
}

std::string QVec::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

void require_same_shape(const QVec& x, const QVec& y) {
    if (x.n() != y.n() || x.q() != y.q()) throw DimensionError(x.n(), x.q(), y.n(), y.q());
}

std::strong_ordering colex_compare(const QVec& x, const QVec& y) {
    require_same_shape(x, y);
    for (std::size_t i = x.entries().size(); i-- > 0;) {
        if (x.entries()[i] != y.entries()[i]) return x.entries()[i] <=> y.entries()[i];
    }
    return std::strong_ordering::equal;
}

Measures measures(const QVec& x) { return {x.rank(), x.support(), x.complement()}; }

// ---- VecFamily ----

VecFamily::VecFamily(int n, int q) : n_(n), q_(q) {
    if (n < 0) throw ParameterError("family dimension n must be non-negative");
    check_alphabet(q);
}

VecFamily::VecFamily(int n, int q, std::vector<QVec> members) : VecFamily(n, q) {
    for (const auto& m : members)
        if (m.n() != n || m.q() != q) throw DimensionError(n, q, m.n(), m.q());
    std::sort(members.begin(), members.end(), ColexLess{});
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);
}

std::optional<std::size_t> VecFamily::index_of(const QVec& x) const {
    if (x.n() != n_ || x.q() != q_) return std::nullopt;
    auto it = std::lower_bound(members_.begin(), members_.end(), x, ColexLess{});
    if (it == members_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

bool VecFamily::contains(const QVec& x) const { return index_of(x).has_value(); }

// ---- predicates ----

const char* to_string(Mode m) { return m == Mode::sum ? "sum" : "multisum"; }

Mode parse_mode(const std::string& s) {
    if (s == "sum") return Mode::sum;
    if (s == "multisum") return Mode::multisum;
    throw ParameterError("unknown intersection mode '" + s + "' (expected sum|multisum)");
}

void PredicateSpec::validate() const {
    if (s < 1) throw ParameterError("threshold s must be >= 1");
    if (t < 1) throw ParameterError("strength t must be >= 1");
}

int intersection_size(const QVec& x, const QVec& y, int s, Mode mode) {
    require_same_shape(x, y);
    const auto& a = x.entries();
    const auto& b = y.entries();
    int total = 0;
    if (mode == Mode::sum) {
        for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] + b[i] >= s) ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) total += std::max(0, a[i] + b[i] - s + 1);
    }
    return total;
}

bool satisfies(const QVec& x, const QVec& y, const PredicateSpec& p) {
    return intersection_size(x, y, p.s, p.mode) >= p.t;
}

FamilyCheck family_check(const VecFamily& family, const PredicateSpec& p) {
    p.validate();
    const auto& m = family.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = p.distinct_only ? i + 1 : i; j < m.size(); ++j) {
            if (!satisfies(m[i], m[j], p)) return {false, std::make_pair(m[i], m[j])};
        }
    }
    return {};
}

// ---- slices ----

bool Slice::admits(const QVec& x) const {
    switch (kind) {
        case Kind::all: return true;
        case Kind::rank: return x.rank() == r;
        case Kind::support: return x.support_size() == r;
    }
    return false;
}

std::string Slice::to_string() const {
    switch (kind) {
        case Kind::all: return "all";
        case Kind::rank: return "rank " + std::to_string(r);
        case Kind::support: return "support " + std::to_string(r);
    }
    return "?";
}

namespace {

// Fills coordinates from the top down; ascending values at each level give
// colex order directly.
class SliceWalker {
public:
    SliceWalker(int n, int q, Slice slice, const std::function<void(std::span<const QVec::Entry>)>& visit)
        : n_(n), q_(q), slice_(slice), buf_(static_cast<std::size_t>(n), 0), visit_(visit) {}

    void run() { step(n_, slice_.r); }

private:
    // `pos` coordinates (0..pos-1) remain unfilled; `need` is the remaining
    // rank or support budget.
    void step(int pos, int need) {
        if (pos == 0) {
            if (slice_.kind == Slice::Kind::all || need == 0) visit_(buf_);
            return;
        }
        const auto i = static_cast<std::size_t>(pos - 1);
        for (int v = 0; v <= q_; ++v) {
            int rest = need;
            if (slice_.kind == Slice::Kind::rank) {
                rest = need - v;
                if (rest < 0) break;
                if (rest > q_ * (pos - 1)) continue;
            } else if (slice_.kind == Slice::Kind::support) {
                rest = need - (v > 0 ? 1 : 0);
                if (rest < 0) break;
                if (rest > pos - 1) continue;
            }
            buf_[i] = static_cast<QVec::Entry>(v);
            step(pos - 1, rest);
        }
        buf_[i] = 0;
    }

    int n_, q_;
    Slice slice_;
    std::vector<QVec::Entry> buf_;
    const std::function<void(std::span<const QVec::Entry>)>& visit_;
};

void check_slice(int n, int q, Slice slice) {
    if (slice.kind == Slice::Kind::rank && (slice.r < 0 || slice.r > q * n))
        throw ParameterError("rank " + std::to_string(slice.r) + " outside 0.." + std::to_string(q * n));
    if (slice.kind == Slice::Kind::support && (slice.r < 0 || slice.r > n))
        throw ParameterError("support size " + std::to_string(slice.r) + " outside 0.." + std::to_string(n));
}

}  // namespace

void for_each_in_slice(int n, int q, Slice slice,
                       const std::function<void(std::span<const QVec::Entry>)>& visit) {
    VecFamily shape(n, q);
    check_slice(n, q, slice);
    SliceWalker(n, q, slice, visit).run();
}

VecFamily enumerate_slice(int n, int q, Slice slice) {
    std::vector<QVec> out;
    for_each_in_slice(n, q, slice, [&](std::span<const QVec::Entry> e) {
        out.emplace_back(q, std::vector<QVec::Entry>(e.begin(), e.end()));
    });
    // Already colex-sorted and unique.
    return VecFamily(n, q, std::move(out));
}

Count rank_slice_count(int n, int q, int r) {
    if (n < 0 || r < 0 || r > q * n) return 0;
    // ways[j] = number of length-i vectors of rank j.
    std::vector<Count> ways(static_cast<std::size_t>(r) + 1, 0);
    ways[0] = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<Count> next(ways.size(), 0);
        for (int j = 0; j <= r; ++j) {
            if (!ways[static_cast<std::size_t>(j)]) continue;
            for (int v = 0; v <= q && j + v <= r; ++v)
                next[static_cast<std::size_t>(j + v)] =
                    checked_add(next[static_cast<std::size_t>(j + v)], ways[static_cast<std::size_t>(j)]);
        }
        ways = std::move(next);
    }
    return ways[static_cast<std::size_t>(r)];
}

Count support_slice_count(int n, int q, int r) {
    if (r < 0 || r > n) return 0;
    return checked_mul(binomial(n, r), checked_pow(static_cast<Count>(q), static_cast<unsigned>(r)));
}

}  // namespace qsum
