#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace tightpoly::kernel {

using word_t = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

/// dst[i] |= (src shifted left by `shift` bits)[i] for i in [lo, hi).
///
/// Bits of src that would land below bit 0 are dropped; src words past
/// src.size() read as zero.
inline void or_shifted(std::span<word_t> dst, std::span<const word_t> src, std::size_t shift,
                       std::size_t lo, std::size_t hi) {
    const std::size_t ws = shift / word_bits;
    const unsigned bs = static_cast<unsigned>(shift % word_bits);
    if (hi > dst.size()) hi = dst.size();
    if (lo < ws) lo = ws;
    // Only src words [0, src.size()) exist.
    if (hi > src.size() + ws + 1) hi = src.size() + ws + 1;
    if (lo >= hi) return;

    word_t* __restrict d = dst.data();
    const word_t* __restrict s = src.data();
    const std::size_t n = src.size();

    if (bs == 0) {
        std::size_t end = hi < n + ws ? hi : n + ws;
        for (std::size_t i = lo; i < end; ++i) d[i] |= s[i - ws];
        return;
    }
    const unsigned rs = static_cast<unsigned>(word_bits) - bs;
    std::size_t i = lo;
    // Boundary words where src[j-1] or src[j] may be out of range.
    if (i == ws) {
        if (n > 0) d[i] |= s[0] << bs;
        ++i;
    }
    std::size_t end = hi < n + ws ? hi : n + ws;
    for (; i < end; ++i) {
        const std::size_t j = i - ws;
        d[i] |= (s[j] << bs) | (s[j - 1] >> rs);
    }
    if (end < hi && end == n + ws && n > 0) d[end] |= s[n - 1] >> rs;
}

/// Lowest zero bit at position in [from, to), or nothing.
inline std::optional<std::size_t> first_zero(std::span<const word_t> words, std::size_t from, std::size_t to) {
    if (from >= to) return std::nullopt;
    std::size_t w = from / word_bits;
    const std::size_t last = (to - 1) / word_bits;
    word_t inv = ~words[w] & (~word_t{0} << (from % word_bits));
    for (;;) {
        if (inv != 0) {
            std::size_t pos = w * word_bits + static_cast<std::size_t>(std::countr_zero(inv));
            if (pos < to) return pos;
            return std::nullopt;
        }
        if (w == last) return std::nullopt;
        ++w;
        inv = ~words[w];
    }
}

/// Lowest set bit at position in [from, to), or nothing.
inline std::optional<std::size_t> first_one(std::span<const word_t> words, std::size_t from, std::size_t to) {
    if (from >= to) return std::nullopt;
    std::size_t w = from / word_bits;
    const std::size_t last = (to - 1) / word_bits;
    word_t cur = words[w] & (~word_t{0} << (from % word_bits));
    for (;;) {
        if (cur != 0) {
            std::size_t pos = w * word_bits + static_cast<std::size_t>(std::countr_zero(cur));
            if (pos < to) return pos;
            return std::nullopt;
        }
        if (w == last) return std::nullopt;
        ++w;
        cur = words[w];
    }
}

}  // namespace tightpoly::kernel
