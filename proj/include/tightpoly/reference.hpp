#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/criterion.hpp"
#include "tightpoly/serialize.hpp"
#include "tightpoly/tables.hpp"

#ifndef TIGHTPOLY_DATA_DIR
#define TIGHTPOLY_DATA_DIR "data"
#endif

namespace tightpoly {

class UnknownTableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reference data directory: $TIGHTPOLY_DATA_DIR, else the build-time path.
inline std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("TIGHTPOLY_DATA_DIR"); env && *env) return env;
    return std::filesystem::path(TIGHTPOLY_DATA_DIR);
}

/// One row of the CS(m,n) table: either a single pair with an explicit set,
/// or a family {n, ..., 2n} / {n, ..., 2n-1} over a range of n.
struct CriterionEntry {
    integer m_min = 0;
    std::optional<integer> m_max;  // equals m_min for single-m rows
    std::optional<integer> n_exact;
    integer n_min = 0;
    std::optional<integer> n_max;
    std::optional<std::pair<integer, integer>> n_min_linear;  // n >= a*m + b
    bool proved = false;
    std::vector<integer> cs;  // explicit rows
    std::string family;       // "n..2n" or "n..2n-1"

    integer lowest_n(integer m) const {
        if (n_exact) return *n_exact;
        if (n_min_linear) return n_min_linear->first * m + n_min_linear->second;
        return n_min;
    }

    bool covers(integer m, integer n) const {
        if (m < m_min || (m_max && m > *m_max)) return false;
        if (n_exact) return n == *n_exact;
        if (n < lowest_n(m)) return false;
        return !n_max || n <= *n_max;
    }

    std::vector<integer> expected(integer n) const {
        if (n_exact) return cs;
        std::vector<integer> out;
        const integer top = family == "n..2n-1" ? 2 * n - 1 : 2 * n;
        for (integer x = n; x <= top; ++x) out.push_back(x);
        return out;
    }

    std::string label() const {
        std::ostringstream os;
        os << "m" << (m_max && *m_max == m_min ? "=" : ">=") << m_min << " n";
        if (n_exact) {
            os << "=" << *n_exact;
        } else if (n_min_linear) {
            os << ">=" << n_min_linear->first << "m" << std::showpos << n_min_linear->second << std::noshowpos;
        } else {
            os << "=" << n_min << ".." << (n_max ? std::to_string(*n_max) : std::string("inf"));
        }
        return os.str();
    }
};

struct GammaEntry {
    integer m = 0;
    integer gamma = 0;
    bool proved = false;
};

struct ReferenceTable {
    int id = 0;
    std::string kind;  // "gamma", "criterion_sets", "candidates"
    std::string source;
    integer m = 0;  // candidates tables
    integer n = 0;
    std::vector<CandidateRow> rows;
    std::vector<GammaEntry> gammas;
    std::vector<CriterionEntry> criteria;

    const CriterionEntry* criterion_for(integer pm, integer pn) const {
        for (const auto& e : criteria)
            if (e.covers(pm, pn)) return &e;
        return nullptr;
    }

    /// Concrete (m, n) pairs checked for the CS table: every explicit pair,
    /// each n of a bounded family, and the first two n (and m) of open ones.
    std::vector<std::pair<integer, integer>> default_pairs() const {
        std::vector<std::pair<integer, integer>> out;
        for (const auto& e : criteria) {
            std::vector<integer> ms{e.m_min};
            if (!e.m_max) ms.push_back(e.m_min + 1);
            for (integer pm : ms) {
                if (e.n_exact) {
                    out.emplace_back(pm, *e.n_exact);
                    continue;
                }
                integer lo = e.lowest_n(pm);
                integer hi = e.n_max ? *e.n_max : lo + 1;
                for (integer pn = lo; pn <= hi; ++pn) out.emplace_back(pm, pn);
            }
        }
        return out;
    }
};

inline ReferenceTable parse_reference_table(const json& j) {
    ReferenceTable t;
    t.id = j.at("table").get<int>();
    t.kind = j.at("kind").get<std::string>();
    t.source = j.value("source", std::string());
    if (t.kind == "gamma") {
        for (const auto& e : j.at("entries"))
            t.gammas.push_back({e.at("m").get<integer>(), e.at("gamma").get<integer>(), e.value("proved", false)});
    } else if (t.kind == "criterion_sets") {
        for (const auto& e : j.at("entries")) {
            CriterionEntry c;
            if (e.contains("m")) {
                c.m_min = e.at("m").get<integer>();
                c.m_max = c.m_min;
            } else {
                c.m_min = e.at("m_min").get<integer>();
            }
            if (e.contains("n")) c.n_exact = e.at("n").get<integer>();
            c.n_min = e.value("n_min", integer{1});
            if (e.contains("n_max")) c.n_max = e.at("n_max").get<integer>();
            if (e.contains("n_min_linear")) {
                auto ab = e.at("n_min_linear").get<std::vector<integer>>();
                c.n_min_linear = std::make_pair(ab.at(0), ab.at(1));
            }
            c.proved = e.value("proved", false);
            c.cs = e.value("cs", std::vector<integer>{});
            c.family = e.value("family", std::string());
            if (!c.n_exact && c.family != "n..2n" && c.family != "n..2n-1")
                throw std::invalid_argument("reference table: unknown family '" + c.family + "'");
            t.criteria.push_back(std::move(c));
        }
    } else if (t.kind == "candidates") {
        t.m = j.at("m").get<integer>();
        t.n = j.at("n").get<integer>();
        for (const auto& r : j.at("rows")) t.rows.push_back(row_from_json(r));
    } else {
        throw std::invalid_argument("reference table: unknown kind '" + t.kind + "'");
    }
    return t;
}

inline std::vector<int> reference_table_ids() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

inline ReferenceTable load_reference_table(int id, const std::filesystem::path& dir = default_data_dir()) {
    bool known = false;
    for (int k : reference_table_ids()) known = known || k == id;
    if (!known) throw UnknownTableError("unknown reference table id " + std::to_string(id));
    auto path = dir / "reference" / ("table" + std::to_string(id) + ".json");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference table " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed reference table " + path.string() + ": " + e.what());
    }
    auto t = parse_reference_table(j);
    if (t.id != id) throw std::runtime_error("reference table " + path.string() + " carries id " + std::to_string(t.id));
    return t;
}

/// Pairs whose tight T(n)-universal forms are completely classified; for
/// all other pairs, universal forms found at a finite bound are candidates.
inline bool classified_pair(integer m, integer n) {
    switch (m) {
        case 3:
        case 4:
            return true;
        case 5:
            return n == 1 || n >= 7;
        case 6:
            return false;
        case 7:
            return n >= 11;
        case 8:
            return n == 1 || n >= 11;
        case 9:
            return n >= 13;
        default:
            return m >= 10 && n >= 2 * m - 5;
    }
}

struct DiffRow {
    std::string key;
    std::string expected;
    std::string actual;
    bool match = false;
};

struct DiffReport {
    int table = 0;
    std::vector<DiffRow> rows;

    std::size_t mismatches() const {
        std::size_t c = 0;
        for (const auto& r : rows) c += r.match ? 0 : 1;
        return c;
    }
    bool ok() const { return mismatches() == 0; }

    std::string summary() const {
        return std::to_string(rows.size()) + " rows, " + std::to_string(mismatches()) + " mismatches";
    }

    std::string render() const {
        std::ostringstream os;
        os << "table " << table << ": " << summary() << "\n";
        for (const auto& r : rows) {
            os << (r.match ? "  ok       " : "  MISMATCH ") << r.key;
            if (r.match) {
                os << "  " << r.actual << "\n";
            } else {
                os << "\n    expected: " << r.expected << "\n    actual:   " << r.actual << "\n";
            }
        }
        return os.str();
    }
};

namespace detail {

inline std::string set_text(const std::vector<integer>& v) { return "{" + join(v, ',') + "}"; }

inline std::string row_text(const std::optional<CandidateRow>& row) {
    if (!row) return "(absent)";
    std::string s = row->prefix.to_string();
    s.insert(s.size() - 1, row->prefix.empty() ? "a_k" : ",a_k");
    std::string cond = row->is_fixed() ? "a_" + std::to_string(row->length()) + " = " + std::to_string(row->values.front())
                                       : row->condition_text();
    return s + " : " + cond;
}

}  // namespace detail

/// Compares new tight universal candidates against a candidates table. Rows
/// are matched by (length, prefix) and compared as sets of vectors, so the
/// choice between "a = x,y" and "x <= a <= y" spellings does not matter.
inline DiffReport diff_candidates(const ReferenceTable& ref, const std::vector<CoeffVector>& candidates) {
    if (ref.kind != "candidates") throw std::invalid_argument("diff_candidates: table is not a candidates table");
    using Key = std::pair<std::size_t, CoeffVector>;
    std::map<Key, CandidateRow> expected, actual;
    for (const auto& r : ref.rows) {
        Key key{r.length(), r.prefix};
        if (expected.count(key)) throw std::invalid_argument("reference table: duplicate row " + r.prefix.to_string());
        expected.emplace(key, r);
    }
    for (auto& r : compress(candidates)) actual.emplace(Key{r.length(), r.prefix}, std::move(r));

    std::set<Key> keys;
    for (const auto& [k, _] : expected) keys.insert(k);
    for (const auto& [k, _] : actual) keys.insert(k);

    DiffReport report;
    report.table = ref.id;
    for (const auto& key : keys) {
        std::optional<CandidateRow> e, a;
        if (auto it = expected.find(key); it != expected.end()) e = it->second;
        if (auto it = actual.find(key); it != actual.end()) a = it->second;
        DiffRow row;
        row.key = "k=" + std::to_string(key.first) + " prefix " + key.second.to_string();
        row.expected = detail::row_text(e);
        row.actual = detail::row_text(a);
        row.match = e && a && e->expand() == a->expand();
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline DiffReport diff_candidates(const ReferenceTable& ref, const EscalationResult& run) {
    if (run.m != ref.m || run.n != ref.n)
        throw std::invalid_argument("diff_candidates: run is for (m,n)=(" + std::to_string(run.m) + "," +
                                    std::to_string(run.n) + "), table " + std::to_string(ref.id) + " is for (" +
                                    std::to_string(ref.m) + "," + std::to_string(ref.n) + ")");
    return diff_candidates(ref, run.all_new_universal());
}

/// gamma_m comparison over the computed subset of m.
inline DiffReport diff_gamma(const ReferenceTable& ref, const std::vector<std::pair<integer, integer>>& computed) {
    if (ref.kind != "gamma") throw std::invalid_argument("diff_gamma: table is not a gamma table");
    DiffReport report;
    report.table = ref.id;
    for (auto [m, g] : computed) {
        DiffRow row;
        row.key = "m=" + std::to_string(m);
        row.actual = std::to_string(g);
        row.expected = "(absent)";
        for (const auto& e : ref.gammas) {
            if (e.m == m) row.expected = std::to_string(e.gamma);
        }
        row.match = row.expected == row.actual;
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// CS(m,n) comparison for each computed pair.
inline DiffReport diff_criterion(const ReferenceTable& ref, const std::vector<CriterionSet>& computed) {
    if (ref.kind != "criterion_sets") throw std::invalid_argument("diff_criterion: table is not a CS table");
    DiffReport report;
    report.table = ref.id;
    for (const auto& cs : computed) {
        DiffRow row;
        row.key = "m=" + std::to_string(cs.m) + " n=" + std::to_string(cs.n);
        row.actual = detail::set_text(cs.elements);
        const CriterionEntry* e = ref.criterion_for(cs.m, cs.n);
        row.expected = e ? detail::set_text(e->expected(cs.n)) : "(absent)";
        row.match = e && e->expected(cs.n) == cs.elements;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace tightpoly
