#include "qsum/io.hpp"

#include <fstream>
#include <sstream>

#include "qsum/errors.hpp"

namespace qsum {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const Json& field(const Json& obj, const std::string& ptr, const char* key) {
    if (!obj.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(ptr, key), "missing field");
    return *it;
}

int int_in(const Json& j, const std::string& ptr, int lo, int hi) {
    if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > hi)
        throw SchemaError(ptr, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                   ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

QVec vec_at(const Json& j, const std::string& ptr, int q, int n) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of entries");
    if (n >= 0 && static_cast<int>(j.size()) != n)
        throw SchemaError(ptr, "expected " + std::to_string(n) + " entries");
    std::vector<QVec::Entry> e;
    e.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        e.push_back(static_cast<QVec::Entry>(int_in(j[i], child(ptr, i), 0, q)));
    return QVec(q, std::move(e));
}

}  // namespace

Json entries_json(const QVec& v) {
    Json a = Json::array();
    for (auto e : v.entries()) a.push_back(int{e});
    return a;
}

Json to_json(const QVec& v) { return {{"q", v.q()}, {"entries", entries_json(v)}}; }

Json to_json(const VecFamily& family) {
    Json members = Json::array();
    for (const auto& m : family) members.push_back(entries_json(m));
    return {{"q", family.q()}, {"n", family.n()}, {"members", members}};
}

Json to_json(const PairSystem& system) {
    Json pairs = Json::array();
    for (const auto& p : system.pairs())
        pairs.push_back({{"x", entries_json(p.x)}, {"y", entries_json(p.y)}});
    return {{"q", system.q()},
            {"s", system.s()},
            {"n", system.n()},
            {"kind", to_string(system.kind())},
            {"pairs", pairs}};
}

QVec qvec_from_json(const Json& j) {
    const int q = int_in(field(j, "", "q"), "/q", 1, kMaxAlphabet);
    return vec_at(field(j, "", "entries"), "/entries", q, -1);
}

VecFamily family_from_json(const Json& j) {
    const int q = int_in(field(j, "", "q"), "/q", 1, kMaxAlphabet);
    const int n = int_in(field(j, "", "n"), "/n", 0, 1 << 16);
    const Json& members = field(j, "", "members");
    if (!members.is_array()) throw SchemaError("/members", "expected an array");
    std::vector<QVec> out;
    out.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        out.push_back(vec_at(members[i], child("/members", i), q, n));
    return VecFamily(n, q, std::move(out));
}

PairSystem system_from_json(const Json& j) {
    const int q = int_in(field(j, "", "q"), "/q", 1, kMaxAlphabet);
    const int s = int_in(field(j, "", "s"), "/s", 1, 2 * kMaxAlphabet);
    const Json& kind_j = field(j, "", "kind");
    if (!kind_j.is_string() || (kind_j != "strong" && kind_j != "weak"))
        throw SchemaError("/kind", "expected \"strong\" or \"weak\"");
    const Json& pairs = field(j, "", "pairs");
    if (!pairs.is_array()) throw SchemaError("/pairs", "expected an array");
    int n = -1;
    if (j.contains("n")) n = int_in(j["n"], "/n", 0, 1 << 16);
    std::vector<VecPair> parsed;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string ptr = child("/pairs", i);
        QVec x = vec_at(field(pairs[i], ptr, "x"), child(ptr, "x"), q, n);
        if (n < 0) n = x.n();
        QVec y = vec_at(field(pairs[i], ptr, "y"), child(ptr, "y"), q, n);
        parsed.push_back({std::move(x), std::move(y)});
    }
    return PairSystem(n < 0 ? 0 : n, q, s, parse_system_kind(kind_j.get<std::string>()),
                      std::move(parsed));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace qsum
