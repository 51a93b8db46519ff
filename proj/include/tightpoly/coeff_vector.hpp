#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tightpoly {

/// Sorted multiset of positive coefficients a_1 <= a_2 <= ... <= a_k.
///
/// The canonical (sorted) form is the only form ever stored, so equality and
/// ordering are multiset equality and lexicographic order on the sorted list.
class CoeffVector {
public:
    using value_type = std::int64_t;

    CoeffVector() = default;

    CoeffVector(std::initializer_list<value_type> coeffs)
        : CoeffVector(std::vector<value_type>(coeffs)) {}

    explicit CoeffVector(std::vector<value_type> coeffs) : coeffs_(std::move(coeffs)) {
        for (auto c : coeffs_) {
            if (c <= 0) throw std::invalid_argument("coefficients must be positive");
        }
        std::sort(coeffs_.begin(), coeffs_.end());
    }

    /// Parses "1,2,3" (spaces and surrounding parentheses tolerated).
    static CoeffVector parse(std::string_view text) {
        std::vector<value_type> out;
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(token, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad coefficient '" + token + "'");
            }
            if (used != token.size()) throw std::invalid_argument("bad coefficient '" + token + "'");
            out.push_back(v);
            token.clear();
        };
        for (char ch : text) {
            if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') {
                flush();
            } else {
                token.push_back(ch);
            }
        }
        flush();
        if (out.empty()) throw std::invalid_argument("empty coefficient vector");
        return CoeffVector(std::move(out));
    }

    std::size_t size() const noexcept { return coeffs_.size(); }
    bool empty() const noexcept { return coeffs_.empty(); }
    value_type operator[](std::size_t i) const { return coeffs_[i]; }
    value_type front() const { return coeffs_.front(); }
    value_type back() const { return coeffs_.back(); }
    auto begin() const noexcept { return coeffs_.begin(); }
    auto end() const noexcept { return coeffs_.end(); }
    const std::vector<value_type>& values() const noexcept { return coeffs_; }

    /// a*g: insert g after the last coefficient <= g.
    CoeffVector insert(value_type g) const {
        if (g <= 0) throw std::invalid_argument("coefficients must be positive");
        CoeffVector out;
        out.coeffs_.reserve(coeffs_.size() + 1);
        auto pos = std::upper_bound(coeffs_.begin(), coeffs_.end(), g);
        out.coeffs_.assign(coeffs_.begin(), pos);
        out.coeffs_.push_back(g);
        out.coeffs_.insert(out.coeffs_.end(), pos, coeffs_.end());
        return out;
    }

    CoeffVector insert(const CoeffVector& other) const {
        std::vector<value_type> merged;
        merged.reserve(size() + other.size());
        std::merge(coeffs_.begin(), coeffs_.end(), other.coeffs_.begin(), other.coeffs_.end(),
                   std::back_inserter(merged));
        CoeffVector out;
        out.coeffs_ = std::move(merged);
        return out;
    }

    CoeffVector without_index(std::size_t i) const {
        CoeffVector out = *this;
        out.coeffs_.erase(out.coeffs_.begin() + static_cast<std::ptrdiff_t>(i));
        return out;
    }

    /// Every coefficient multiplied by c.
    CoeffVector scaled(value_type c) const {
        if (c <= 0) throw std::invalid_argument("scale must be positive");
        CoeffVector out = *this;
        for (auto& v : out.coeffs_) v *= c;
        return out;
    }

    /// The distinct sub-multisets obtained by dropping one coefficient.
    std::vector<CoeffVector> codim_one_subvectors() const {
        std::vector<CoeffVector> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i > 0 && coeffs_[i] == coeffs_[i - 1]) continue;
            out.push_back(without_index(i));
        }
        return out;
    }

    /// Sub-multiset relation (non-strict).
    bool is_submultiset_of(const CoeffVector& other) const {
        return std::includes(other.coeffs_.begin(), other.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    }

    bool is_proper_submultiset_of(const CoeffVector& other) const {
        return size() < other.size() && is_submultiset_of(other);
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << ',';
            os << coeffs_[i];
        }
        os << ')';
        return os.str();
    }

    friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
    friend auto operator<=>(const CoeffVector& a, const CoeffVector& b) { return a.coeffs_ <=> b.coeffs_; }
    friend std::ostream& operator<<(std::ostream& os, const CoeffVector& a) { return os << a.to_string(); }

private:
    std::vector<value_type> coeffs_;
};

}  // namespace tightpoly
