#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tightpoly/coeff_vector.hpp"
#include "tightpoly/parallel.hpp"
#include "tightpoly/polygonal.hpp"
#include "tightpoly/prefix_chain.hpp"

namespace tightpoly {

inline constexpr integer default_bound = 1'000'000;

/// Bounded truant: the smallest integer in [n, bound] the form misses, or
/// above_bound when the form covers all of [n, bound].
class TruantResult {
public:
    TruantResult() = default;
    static TruantResult finite(integer t) { return TruantResult(t); }
    static TruantResult above_bound() { return TruantResult(); }

    bool is_finite() const noexcept { return value_.has_value(); }
    bool is_above_bound() const noexcept { return !value_.has_value(); }
    integer value() const {
        if (!value_) throw std::logic_error("TruantResult::value on above-bound truant");
        return *value_;
    }
    const std::optional<integer>& raw() const noexcept { return value_; }

    std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("inf"); }

    friend bool operator==(const TruantResult&, const TruantResult&) = default;
    friend std::ostream& operator<<(std::ostream& os, const TruantResult& t) { return os << t.to_string(); }

private:
    explicit TruantResult(integer t) : value_(t) {}
    std::optional<integer> value_;
};

/// Optional persistent memo for truants (see FileTruantCache).
class TruantStore {
public:
    virtual ~TruantStore() = default;
    virtual std::optional<TruantResult> lookup(const CoeffVector& a) = 0;
    virtual void store(const CoeffVector& a, const TruantResult& t) = 0;
};

namespace detail {

inline TruantResult truant_of_top(PrefixChain& chain, integer n) {
    auto z = chain.first_missing(n);
    return z ? TruantResult::finite(*z) : TruantResult::above_bound();
}

inline void require_bound(integer n, integer bound) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (bound < n) throw std::invalid_argument("bound must be >= n");
}

}  // namespace detail

inline TruantResult truant(integer m, integer n, const CoeffVector& a, integer bound) {
    detail::require_bound(n, bound);
    PrefixChain chain(std::make_shared<PolygonalSequence>(m, bound), bound);
    chain.push(a);
    return detail::truant_of_top(chain, n);
}

/// {g : n <= g <= t - n} U {t}, ascending.
inline std::vector<integer> escalator_candidates(integer n, integer t) {
    if (t < n) throw std::invalid_argument("escalator_candidates: truant must be >= n");
    std::vector<integer> out;
    for (integer g = n; g <= t - n; ++g) out.push_back(g);
    if (out.empty() || out.back() != t) out.push_back(t);
    return out;
}

/// R'(a) is exactly [n, bound] within [1, bound].
inline bool is_tight_universal(integer m, integer n, const CoeffVector& a, integer bound) {
    detail::require_bound(n, bound);
    if (a.empty()) return false;
    PrefixChain chain(std::make_shared<PolygonalSequence>(m, bound), bound);
    chain.push(a);
    // Smallest nonzero value represented is a_1 (1 is polygonal), so nothing
    // in [1, n-1] is represented iff a_1 >= n.
    if (a.front() < n) return false;
    return !chain.first_missing(n).has_value();
}

/// Tight universal with no tight-universal sub-multiset one coefficient
/// shorter. By monotonicity under sub-multisets, that is equivalent to no
/// proper sub-multiset being tight universal.
inline bool is_new(integer m, integer n, const CoeffVector& a, integer bound) {
    if (!is_tight_universal(m, n, a, bound)) throw std::invalid_argument("is_new: form is not tight universal");
    if (a.size() <= 1) return true;
    for (const auto& b : a.codim_one_subvectors()) {
        if (is_tight_universal(m, n, b, bound)) return false;
    }
    return true;
}

struct EscalationNode {
    CoeffVector vector;
    TruantResult truant;
    bool tight = true;
};

struct EscalationLevel {
    integer k = 0;
    std::vector<EscalationNode> nodes;  // E(k), canonical order
    std::vector<CoeffVector> universal;  // U(k)
    std::vector<CoeffVector> active;     // A(k)
    std::vector<CoeffVector> new_universal;  // NU(k)
};

struct EscalationResult {
    integer m = 0;
    integer n = 0;
    integer bound = 0;
    integer max_depth = 0;
    std::vector<EscalationLevel> levels;  // levels[k-1] holds level k
    std::optional<integer> terminal_depth;  // smallest l with A(l) empty
    bool depth_guard_hit = false;

    const EscalationLevel& level(integer k) const { return levels.at(static_cast<std::size_t>(k - 1)); }

    std::optional<TruantResult> truant_of(const CoeffVector& a) const {
        if (a.empty() || a.size() > levels.size()) return std::nullopt;
        const auto& nodes = levels[a.size() - 1].nodes;
        auto it = std::lower_bound(nodes.begin(), nodes.end(), a,
                                   [](const EscalationNode& x, const CoeffVector& v) { return x.vector < v; });
        if (it == nodes.end() || it->vector != a) return std::nullopt;
        return it->truant;
    }

    /// NU over all levels, level by level.
    std::vector<CoeffVector> all_new_universal() const {
        std::vector<CoeffVector> out;
        for (const auto& lv : levels) out.insert(out.end(), lv.new_universal.begin(), lv.new_universal.end());
        return out;
    }

    friend bool operator==(const EscalationResult& a, const EscalationResult& b) {
        if (a.m != b.m || a.n != b.n || a.bound != b.bound || a.max_depth != b.max_depth ||
            a.terminal_depth != b.terminal_depth || a.depth_guard_hit != b.depth_guard_hit ||
            a.levels.size() != b.levels.size())
            return false;
        for (std::size_t i = 0; i < a.levels.size(); ++i) {
            const auto& x = a.levels[i];
            const auto& y = b.levels[i];
            if (x.k != y.k || x.universal != y.universal || x.active != y.active ||
                x.new_universal != y.new_universal || x.nodes.size() != y.nodes.size())
                return false;
            for (std::size_t j = 0; j < x.nodes.size(); ++j) {
                if (x.nodes[j].vector != y.nodes[j].vector || x.nodes[j].truant != y.nodes[j].truant ||
                    x.nodes[j].tight != y.nodes[j].tight)
                    return false;
            }
        }
        return true;
    }
};

/// Raised when A(max_depth) is still nonempty. Carries everything computed.
class DepthGuardExhausted : public std::runtime_error {
public:
    explicit DepthGuardExhausted(EscalationResult partial)
        : std::runtime_error("escalation did not terminate within max_depth=" + std::to_string(partial.max_depth)),
          partial_(std::move(partial)) {}
    const EscalationResult& partial() const noexcept { return partial_; }

private:
    EscalationResult partial_;
};

struct LevelProgress {
    integer k = 0;
    std::size_t generated = 0;
    std::size_t computed = 0;  // truants not served from a cache
    std::size_t universal = 0;
    std::size_t active = 0;
    std::size_t new_universal = 0;
    double seconds = 0;
};

struct EscalationOptions {
    integer max_depth = 0;  // 0 selects 2n + 16
    std::size_t jobs = 1;
    TruantStore* store = nullptr;
    std::function<void(const LevelProgress&)> on_level;
};

inline integer default_max_depth(integer n) { return 2 * n + 16; }

/// Children a*g for a in `parents` (each with a finite truant) and g in the
/// escalator set of a; deduplicated, canonical order.
inline std::vector<CoeffVector> escalate_level(integer n, const std::vector<std::pair<CoeffVector, TruantResult>>& parents) {
    std::set<CoeffVector> children;
    for (const auto& [a, t] : parents) {
        if (!t.is_finite()) throw std::invalid_argument("escalate_level: parent " + a.to_string() + " has no finite truant");
        for (integer g : escalator_candidates(n, t.value())) children.insert(a.insert(g));
    }
    return {children.begin(), children.end()};
}

inline std::vector<CoeffVector> escalate_level(integer m, integer n, const std::vector<CoeffVector>& parents, integer bound) {
    std::vector<std::pair<CoeffVector, TruantResult>> with_truants;
    for (const auto& a : parents) with_truants.emplace_back(a, truant(m, n, a, bound));
    return escalate_level(n, with_truants);
}

namespace detail {

/// Computes truants for groups of children sharing a parent. Each group
/// rebuilds the parent's chain once and probes every child on top of it.
class TruantEngine {
public:
    TruantEngine(integer m, integer n, integer bound, std::size_t jobs, TruantStore* store)
        : n_(n), bound_(bound), jobs_(std::max<std::size_t>(1, jobs)), store_(store),
          gp_(std::make_shared<PolygonalSequence>(m, bound)) {
        for (std::size_t i = 0; i < jobs_; ++i) chains_.emplace_back(gp_, bound);
    }

    struct Group {
        CoeffVector parent;  // empty for the root
        std::vector<integer> extra;  // child = parent * extra[i]
        std::vector<TruantResult> out;
    };

    /// Fills group.out; returns how many truants were computed (not cached).
    std::size_t run(std::vector<Group>& groups) {
        std::atomic<std::size_t> computed{0};
        parallel_for(groups.size(), jobs_, [&](std::size_t worker, std::size_t gi) {
            Group& grp = groups[gi];
            grp.out.assign(grp.extra.size(), TruantResult{});
            std::vector<bool> done(grp.extra.size(), false);
            if (store_) {
                std::lock_guard lock(store_mutex_);
                for (std::size_t i = 0; i < grp.extra.size(); ++i) {
                    if (auto hit = store_->lookup(grp.parent.insert(grp.extra[i]))) {
                        grp.out[i] = *hit;
                        done[i] = true;
                    }
                }
            }
            PrefixChain& chain = chains_[worker];
            bool pushed = false;
            for (std::size_t i = 0; i < grp.extra.size(); ++i) {
                if (done[i]) continue;
                if (!pushed) {
                    chain.push(grp.parent);
                    pushed = true;
                }
                chain.push(grp.extra[i]);
                grp.out[i] = truant_of_top(chain, n_);
                chain.pop();
                ++computed;
                if (store_) {
                    std::lock_guard lock(store_mutex_);
                    store_->store(grp.parent.insert(grp.extra[i]), grp.out[i]);
                }
            }
            if (pushed) {
                for (std::size_t i = 0; i < grp.parent.size(); ++i) chain.pop();
            }
        });
        return computed.load();
    }

private:
    integer n_;
    integer bound_;
    std::size_t jobs_;
    TruantStore* store_;
    std::shared_ptr<const PolygonalSequence> gp_;
    std::vector<PrefixChain> chains_;
    std::mutex store_mutex_;
};

}  // namespace detail

/// Level-synchronous escalation from E(1) = {(n)} until A(l) is empty.
/// Throws DepthGuardExhausted (with the partial result) when A(max_depth) is
/// still nonempty.
inline EscalationResult run_escalation(integer m, integer n, integer bound, const EscalationOptions& opts = {}) {
    if (m < 3) throw std::invalid_argument("run_escalation: m must be >= 3");
    if (n < 1) throw std::invalid_argument("run_escalation: n must be >= 1");
    if (bound < 2 * n) throw std::invalid_argument("run_escalation: bound must be >= 2n");
    const integer max_depth = opts.max_depth > 0 ? opts.max_depth : default_max_depth(n);

    EscalationResult result;
    result.m = m;
    result.n = n;
    result.bound = bound;
    result.max_depth = max_depth;

    detail::TruantEngine engine(m, n, bound, opts.jobs, opts.store);

    // Truants of every vector seen so far (all levels), for the newness check.
    std::map<CoeffVector, TruantResult> memo;

    // Current level: child -> (generating parent, g). The first generator in
    // canonical parent order / ascending g wins.
    std::map<CoeffVector, std::pair<CoeffVector, integer>> frontier;
    frontier.emplace(CoeffVector{n}, std::make_pair(CoeffVector{}, n));

    for (integer k = 1;; ++k) {
        auto started = std::chrono::steady_clock::now();

        std::map<CoeffVector, std::size_t> group_index;
        std::vector<detail::TruantEngine::Group> groups;
        for (const auto& [child, gen] : frontier) {
            auto [it, inserted] = group_index.emplace(gen.first, groups.size());
            if (inserted) groups.push_back({gen.first, {}, {}});
            groups[it->second].extra.push_back(gen.second);
        }
        std::size_t computed = engine.run(groups);

        EscalationLevel level;
        level.k = k;
        for (const auto& grp : groups) {
            for (std::size_t i = 0; i < grp.extra.size(); ++i) {
                CoeffVector v = grp.parent.insert(grp.extra[i]);
                if (v.front() < n) throw std::logic_error("escalation produced a coefficient below n");
                memo.emplace(v, grp.out[i]);
            }
        }
        for (const auto& [child, gen] : frontier) {
            const TruantResult& t = memo.at(child);
            level.nodes.push_back({child, t, true});
            (t.is_finite() ? level.active : level.universal).push_back(child);
        }

        // NU(k): members of U(k) none of whose co-dimension-one sub-multisets
        // is tight universal at this bound.
        {
            std::vector<CoeffVector> unknown;
            std::set<CoeffVector> seen;
            for (const auto& a : level.universal) {
                if (a.size() <= 1) continue;
                for (auto& b : a.codim_one_subvectors()) {
                    if (!memo.count(b) && seen.insert(b).second) unknown.push_back(b);
                }
            }
            if (!unknown.empty()) {
                // Root-style groups: each sub-multiset is probed on its own chain.
                std::vector<detail::TruantEngine::Group> sub_groups;
                for (auto& b : unknown) {
                    CoeffVector parent = b.without_index(b.size() - 1);
                    sub_groups.push_back({parent, {b.back()}, {}});
                }
                computed += engine.run(sub_groups);
                for (std::size_t i = 0; i < unknown.size(); ++i) memo.emplace(unknown[i], sub_groups[i].out[0]);
            }
            for (const auto& a : level.universal) {
                bool fresh = true;
                if (a.size() > 1) {
                    for (const auto& b : a.codim_one_subvectors()) {
                        if (memo.at(b).is_above_bound()) {
                            fresh = false;
                            break;
                        }
                    }
                }
                if (fresh) level.new_universal.push_back(a);
            }
        }

        LevelProgress progress;
        progress.k = k;
        progress.generated = level.nodes.size();
        progress.computed = computed;
        progress.universal = level.universal.size();
        progress.active = level.active.size();
        progress.new_universal = level.new_universal.size();

        const bool finished = level.active.empty();
        std::map<CoeffVector, std::pair<CoeffVector, integer>> next;
        if (!finished && k < max_depth) {
            for (const auto& a : level.active) {
                const integer t = memo.at(a).value();
                for (integer g : escalator_candidates(n, t)) next.emplace(a.insert(g), std::make_pair(a, g));
            }
        }
        result.levels.push_back(std::move(level));
        progress.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (opts.on_level) opts.on_level(progress);

        if (finished) {
            result.terminal_depth = k;
            return result;
        }
        if (k >= max_depth) {
            result.depth_guard_hit = true;
            throw DepthGuardExhausted(std::move(result));
        }
        frontier = std::move(next);
    }
}

}  // namespace tightpoly
