#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tightpoly/bit_kernel.hpp"
#include "tightpoly/coeff_vector.hpp"

namespace tightpoly {

using integer = std::int64_t;

/// P_m(u) = ((m-2)u^2 - (m-4)u) / 2, exact. Throws std::overflow_error
/// instead of wrapping.
inline integer polygonal_number(integer m, integer u) {
    if (m < 3) throw std::invalid_argument("polygonal_number: m must be >= 3");
    integer u2 = 0, a = 0, b = 0, num = 0;
    if (__builtin_mul_overflow(u, u, &u2) || __builtin_mul_overflow(m - 2, u2, &a) ||
        __builtin_mul_overflow(m - 4, u, &b) || __builtin_sub_overflow(a, b, &num)) {
        throw std::overflow_error("polygonal_number: P_" + std::to_string(m) + "(" + std::to_string(u) +
                                  ") overflows 64-bit range");
    }
    // (m-2)u^2 - (m-4)u = (m-2)u(u-1) + 2u, always even.
    return num / 2;
}

/// Distinct generalized m-gonal numbers in [0, bound], ascending.
class PolygonalSequence {
public:
    PolygonalSequence(integer m, integer bound) : m_(m), bound_(bound) {
        if (m < 3) throw std::invalid_argument("polygonal_sequence: m must be >= 3");
        if (bound < 0) throw std::invalid_argument("polygonal_sequence: bound must be >= 0");
        values_.push_back(0);
        // Walk u = 1, -1, 2, -2, ...; both branches are increasing in |u|.
        for (integer u = 1;; ++u) {
            integer pos = polygonal_number(m, u);
            integer neg = polygonal_number(m, -u);
            if (pos <= bound) values_.push_back(pos);
            if (neg <= bound) values_.push_back(neg);
            if (pos > bound && neg > bound) break;
        }
        std::sort(values_.begin(), values_.end());
        values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    }

    integer m() const noexcept { return m_; }
    integer bound() const noexcept { return bound_; }
    const std::vector<integer>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    /// Values v with v <= limit (prefix of the ascending list).
    std::span<const integer> up_to(integer limit) const {
        auto it = std::upper_bound(values_.begin(), values_.end(), limit);
        return {values_.data(), static_cast<std::size_t>(it - values_.begin())};
    }

private:
    integer m_;
    integer bound_;
    std::vector<integer> values_;
};

inline PolygonalSequence polygonal_sequence(integer m, integer bound) { return PolygonalSequence(m, bound); }

/// Dense membership set over {0, 1, ..., bound}, word-packed.
class ReprSet {
public:
    using word_t = kernel::word_t;

    ReprSet() = default;

    /// Empty set over [0, bound] (does not contain 0; use repr_base for the
    /// representation set of the empty form).
    explicit ReprSet(integer bound) : bound_(bound) {
        if (bound < 0) throw std::invalid_argument("ReprSet: bound must be >= 0");
        words_.assign(kernel::words_for_bits(static_cast<std::size_t>(bound) + 1), 0);
    }

    static ReprSet from_values(integer bound, std::span<const integer> values) {
        ReprSet s(bound);
        for (auto v : values) s.insert(v);
        return s;
    }

    integer bound() const noexcept { return bound_; }

    bool contains(integer x) const noexcept {
        if (x < 0 || x > bound_) return false;
        auto ux = static_cast<std::size_t>(x);
        return (words_[ux / kernel::word_bits] >> (ux % kernel::word_bits)) & 1U;
    }

    void insert(integer x) {
        if (x < 0 || x > bound_) throw std::out_of_range("ReprSet::insert: value outside [0, bound]");
        auto ux = static_cast<std::size_t>(x);
        words_[ux / kernel::word_bits] |= word_t{1} << (ux % kernel::word_bits);
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Smallest non-member in [from, bound], if any.
    std::optional<integer> first_missing(integer from) const {
        if (from < 0) from = 0;
        if (from > bound_) return std::nullopt;
        auto r = kernel::first_zero(words_, static_cast<std::size_t>(from), static_cast<std::size_t>(bound_) + 1);
        if (!r) return std::nullopt;
        return static_cast<integer>(*r);
    }

    /// Smallest member in [from, bound], if any.
    std::optional<integer> first_member(integer from) const {
        if (from < 0) from = 0;
        if (from > bound_) return std::nullopt;
        auto r = kernel::first_one(words_, static_cast<std::size_t>(from), static_cast<std::size_t>(bound_) + 1);
        if (!r) return std::nullopt;
        return static_cast<integer>(*r);
    }

    std::vector<integer> members() const {
        std::vector<integer> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_t bits = words_[w];
            while (bits) {
                out.push_back(static_cast<integer>(w * kernel::word_bits + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    std::span<const word_t> words() const noexcept { return words_; }
    std::span<word_t> mutable_words() noexcept { return words_; }

    /// Clears bits above bound in the last word.
    void trim() noexcept {
        std::size_t used = static_cast<std::size_t>(bound_) + 1;
        std::size_t rem = used % kernel::word_bits;
        if (rem != 0 && !words_.empty()) words_.back() &= (word_t{1} << rem) - 1;
    }

    friend bool operator==(const ReprSet&, const ReprSet&) = default;

private:
    integer bound_ = 0;
    std::vector<word_t> words_;
};

/// Representation set of the empty form: {0}.
inline ReprSet repr_base(integer bound) {
    ReprSet s(bound);
    s.insert(0);
    return s;
}

/// R(a*g) from R(a): union of copies of R shifted by g*p for each
/// generalized m-gonal p with g*p <= bound.
inline ReprSet repr_extend(const ReprSet& r, const PolygonalSequence& gp, integer g) {
    if (g <= 0) throw std::invalid_argument("repr_extend: coefficient must be positive");
    const integer bound = r.bound();
    if (gp.bound() < bound / g) throw std::invalid_argument("repr_extend: polygonal sequence too short for bound");
    ReprSet out = r;
    auto dst = out.mutable_words();
    for (integer p : gp.up_to(bound / g)) {
        if (p == 0) continue;
        kernel::or_shifted(dst, r.words(), static_cast<std::size_t>(g * p), 0, dst.size());
    }
    out.trim();
    return out;
}

inline ReprSet repr_extend(const ReprSet& r, integer m, integer g, integer bound) {
    if (g <= 0) throw std::invalid_argument("repr_extend: coefficient must be positive");
    if (r.bound() != bound) throw std::invalid_argument("repr_extend: set bound does not match");
    return repr_extend(r, PolygonalSequence(m, bound / g), g);
}

/// R_{GP_m}(a) restricted to [0, bound].
inline ReprSet repr_set(integer m, const CoeffVector& a, integer bound) {
    PolygonalSequence gp(m, bound);
    ReprSet r = repr_base(bound);
    for (auto g : a) r = repr_extend(r, gp, g);
    return r;
}

}  // namespace tightpoly
