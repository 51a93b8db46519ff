#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/coeff_vector.hpp"
#include "tightpoly/polygonal.hpp"

namespace tightpoly {

/// One row of a candidate table: a fixed prefix (a_1..a_{k-1}) and the set of
/// admissible last coefficients a_k, written as explicit values and/or a
/// range lo..hi with exceptions.
struct CandidateRow {
    struct Range {
        integer lo = 0;
        integer hi = 0;
        std::vector<integer> except;  // sorted, strictly inside (lo, hi)
        friend bool operator==(const Range&, const Range&) = default;
    };

    CoeffVector prefix;  // length k-1
    std::vector<integer> values;  // explicit a_k values, ascending
    std::optional<Range> range;

    std::size_t length() const { return prefix.size() + 1; }

    /// Single-vector row ("2 2 3" with no condition).
    bool is_fixed() const { return !range && values.size() == 1; }

    std::vector<integer> last_values() const {
        std::vector<integer> out = values;
        if (range) {
            for (integer x = range->lo; x <= range->hi; ++x) {
                if (!std::binary_search(range->except.begin(), range->except.end(), x)) out.push_back(x);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<CoeffVector> expand() const {
        std::vector<CoeffVector> out;
        for (integer x : last_values()) {
            if (!prefix.empty() && x < prefix.back())
                throw std::invalid_argument("CandidateRow: a_k=" + std::to_string(x) + " below prefix " + prefix.to_string());
            out.push_back(prefix.insert(x));
        }
        return out;
    }

    /// "6 ≤ a_3 ≤ 9, a_3 ≠ 8", "a_5 = 6 or 11 ≤ a_5 ≤ 16", or "" for fixed rows.
    std::string condition_text() const {
        if (is_fixed()) return {};
        const std::string var = "a_" + std::to_string(length());
        std::ostringstream os;
        if (!values.empty()) {
            os << var << " = ";
            for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
        }
        if (range) {
            if (!values.empty()) os << " or ";
            os << range->lo << " ≤ " << var << " ≤ " << range->hi;
            if (!range->except.empty()) {
                os << ", " << var << " ≠ ";
                for (std::size_t i = 0; i < range->except.size(); ++i) os << (i ? "," : "") << range->except[i];
            }
        }
        return os.str();
    }

    friend bool operator==(const CandidateRow&, const CandidateRow&) = default;
};

namespace detail {

/// Encodes an ascending set of last coefficients with the fewest printed
/// numbers: a bounding range with exceptions, explicit values plus one
/// exception-free run (of length >= 4), or a plain list. Ties prefer the
/// range form, then the plain list.
inline void encode_last_values(const std::vector<integer>& vals, CandidateRow& row) {
    if (vals.size() == 1) {
        row.values = vals;
        return;
    }
    const integer lo = vals.front(), hi = vals.back();
    CandidateRow::Range bounding{lo, hi, {}};
    for (integer x = lo, i = 0; x <= hi; ++x) {
        if (vals[static_cast<std::size_t>(i)] == x) {
            ++i;
        } else {
            bounding.except.push_back(x);
        }
    }
    const std::size_t cost_range = 2 + bounding.except.size();
    const std::size_t cost_list = vals.size();

    // Longest run of consecutive values.
    std::size_t best_start = 0, best_len = 1;
    for (std::size_t i = 0, start = 0; i < vals.size(); ++i) {
        if (i > 0 && vals[i] != vals[i - 1] + 1) start = i;
        if (i - start + 1 > best_len) {
            best_len = i - start + 1;
            best_start = start;
        }
    }
    std::size_t cost_mixed = static_cast<std::size_t>(-1);
    if (best_len >= 4 && best_len < vals.size()) cost_mixed = vals.size() - best_len + 2;

    if (cost_range <= cost_list && cost_range <= cost_mixed) {
        row.range = std::move(bounding);
    } else if (cost_list <= cost_mixed) {
        row.values = vals;
    } else {
        row.range = CandidateRow::Range{vals[best_start], vals[best_start + best_len - 1], {}};
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i < best_start || i >= best_start + best_len) row.values.push_back(vals[i]);
        }
    }
}

}  // namespace detail

/// Groups vectors by their first k-1 coefficients; one row per group, rows
/// ordered by (length, prefix).
inline std::vector<CandidateRow> compress(const std::vector<CoeffVector>& vectors) {
    std::map<std::pair<std::size_t, CoeffVector>, std::vector<integer>> groups;
    for (const auto& v : vectors) {
        if (v.empty()) throw std::invalid_argument("compress: empty vector");
        groups[{v.size(), v.without_index(v.size() - 1)}].push_back(v.back());
    }
    std::vector<CandidateRow> rows;
    for (auto& [key, vals] : groups) {
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        CandidateRow row;
        row.prefix = key.second;
        detail::encode_last_values(vals, row);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<CoeffVector> expand(const std::vector<CandidateRow>& rows) {
    std::vector<CoeffVector> out;
    for (const auto& r : rows) {
        auto part = r.expand();
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end(), [](const CoeffVector& a, const CoeffVector& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

enum class Format { markdown, csv, json };

inline Format parse_format(const std::string& s) {
    if (s == "markdown" || s == "md") return Format::markdown;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + s + "' (expected markdown, csv or json)");
}

/// Markdown rendering of candidate rows in the published table layout: one
/// section per vector length, columns a_1..a_K plus the condition.
inline std::string render_rows_markdown(const std::vector<CandidateRow>& rows, const std::string& title = {}) {
    std::ostringstream os;
    if (!title.empty()) os << "## " << title << "\n\n";
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.length());
    auto header = [&](std::size_t len) {
        os << "|";
        for (std::size_t i = 1; i <= std::max<std::size_t>(width, 1); ++i) os << " a_" << i << " |";
        os << " Conditions on a_" << len << " |\n|";
        for (std::size_t i = 0; i <= std::max<std::size_t>(width, 1); ++i) os << "---|";
        os << "\n";
    };
    if (rows.empty()) {
        header(1);
        return os.str();
    }
    std::size_t current = 0;
    for (const auto& r : rows) {
        if (r.length() != current) {
            if (current != 0) os << "\n";
            current = r.length();
            os << "### k = " << current << "\n\n";
            header(current);
        }
        os << "|";
        for (auto c : r.prefix) os << " " << c << " |";
        if (r.is_fixed()) {
            os << " " << r.values.front() << " |";
        } else {
            os << " a_" << r.length() << " |";
        }
        for (std::size_t i = r.length(); i < width; ++i) os << "  |";
        os << " " << r.condition_text() << " |\n";
    }
    return os.str();
}

namespace detail {
inline std::string join(const std::vector<integer>& v, char sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? std::string(1, sep) : "") << v[i];
    return os.str();
}
}  // namespace detail

/// CSV with header: length,prefix,values,range_lo,range_hi,exceptions.
/// List cells are ';'-separated.
inline std::string render_rows_csv(const std::vector<CandidateRow>& rows) {
    std::ostringstream os;
    os << "length,prefix,values,range_lo,range_hi,exceptions\n";
    for (const auto& r : rows) {
        os << r.length() << "," << detail::join(r.prefix.values(), ';') << "," << detail::join(r.values, ';') << ",";
        if (r.range) {
            os << r.range->lo << "," << r.range->hi << "," << detail::join(r.range->except, ';');
        } else {
            os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace tightpoly
