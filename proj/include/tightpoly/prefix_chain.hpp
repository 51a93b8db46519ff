#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tightpoly/bit_kernel.hpp"
#include "tightpoly/polygonal.hpp"

namespace tightpoly {

/// Stack of representation sets R(a_1), R(a_1,a_2), ..., each materialized
/// only as far as a query needed it.
///
/// Stage j covering words [0, w) depends only on stage j-1 covering [0, w),
/// so the smallest missing value of the top form can usually be found after
/// computing a short prefix. The full set is produced only for forms that turn
/// out to cover the whole range.
class PrefixChain {
public:
    using word_t = kernel::word_t;

    PrefixChain(std::shared_ptr<const PolygonalSequence> gp, integer bound)
        : gp_(std::move(gp)), bound_(bound), total_words_(kernel::words_for_bits(static_cast<std::size_t>(bound) + 1)) {
        if (gp_->bound() < bound) throw std::invalid_argument("PrefixChain: polygonal sequence shorter than bound");
        Stage base;
        base.words.assign(total_words_, 0);
        base.words[0] = 1;  // {0}
        base.computed = total_words_;
        stages_.push_back(std::move(base));
    }

    integer bound() const noexcept { return bound_; }
    std::size_t depth() const noexcept { return stages_.size() - 1; }

    void push(integer g) {
        if (g <= 0) throw std::invalid_argument("PrefixChain::push: coefficient must be positive");
        Stage s;
        if (!pool_.empty()) {
            s.words = std::move(pool_.back());
            pool_.pop_back();
        }
        s.words.assign(total_words_, 0);
        s.coeff = g;
        stages_.push_back(std::move(s));
    }

    void push(const CoeffVector& a) {
        for (auto g : a) push(g);
    }

    void pop() {
        if (stages_.size() <= 1) throw std::logic_error("PrefixChain::pop on empty chain");
        pool_.push_back(std::move(stages_.back().words));
        stages_.pop_back();
    }

    /// Smallest value in [from, bound] not represented by the top form.
    std::optional<integer> first_missing(integer from) {
        if (from > bound_) return std::nullopt;
        if (from < 0) from = 0;
        const std::size_t top = stages_.size() - 1;
        const std::size_t end_bit = static_cast<std::size_t>(bound_) + 1;
        std::size_t scanned = static_cast<std::size_t>(from);
        std::size_t want = std::max<std::size_t>(initial_words, kernel::words_for_bits(scanned + 1));
        for (;;) {
            if (want > total_words_) want = total_words_;
            ensure(top, want);
            std::size_t limit = std::min(want * kernel::word_bits, end_bit);
            if (auto z = kernel::first_zero(stages_[top].words, scanned, limit)) return static_cast<integer>(*z);
            if (limit >= end_bit) return std::nullopt;
            scanned = limit;
            want *= 2;
        }
    }

    /// Fully materialized top set.
    ReprSet materialize() {
        const std::size_t top = stages_.size() - 1;
        ensure(top, total_words_);
        ReprSet out(bound_);
        auto dst = out.mutable_words();
        std::copy(stages_[top].words.begin(), stages_[top].words.end(), dst.begin());
        out.trim();
        return out;
    }

    static constexpr std::size_t initial_words = 16;

private:
    struct Stage {
        std::vector<word_t> words;
        std::size_t computed = 0;
        integer coeff = 0;
    };

    void ensure(std::size_t j, std::size_t upto) {
        Stage& s = stages_[j];
        if (s.computed >= upto) return;
        ensure(j - 1, upto);
        const Stage& prev = stages_[j - 1];
        const std::size_t lo = s.computed;
        std::copy(prev.words.begin() + static_cast<std::ptrdiff_t>(lo),
                  prev.words.begin() + static_cast<std::ptrdiff_t>(upto),
                  s.words.begin() + static_cast<std::ptrdiff_t>(lo));
        const integer reach = static_cast<integer>(upto * kernel::word_bits) - 1;
        std::span<const word_t> src(prev.words.data(), upto);
        for (integer p : gp_->up_to(reach / s.coeff)) {
            if (p == 0) continue;
            kernel::or_shifted(s.words, src, static_cast<std::size_t>(s.coeff * p), lo, upto);
        }
        s.computed = upto;
    }

    std::shared_ptr<const PolygonalSequence> gp_;
    integer bound_;
    std::size_t total_words_;
    std::vector<Stage> stages_;
    std::vector<std::vector<word_t>> pool_;
};

}  // namespace tightpoly
