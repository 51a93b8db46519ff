#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tightpoly/escalation.hpp"

namespace tightpoly {

/// Criterion set CS(m,n) extracted from a terminated escalation run.
struct CriterionSet {
    integer m = 0;
    integer n = 0;
    integer bound = 0;
    std::vector<integer> elements;  // ascending, starts with n
    std::map<integer, CoeffVector> provenance;  // element g != n -> vector in some A(k) with truant g

    integer gamma() const {
        if (elements.empty()) throw std::logic_error("CriterionSet::gamma on empty set");
        return elements.back();
    }

    bool contains(integer g) const { return std::binary_search(elements.begin(), elements.end(), g); }

    friend bool operator==(const CriterionSet&, const CriterionSet&) = default;
};

inline integer gamma(const CriterionSet& cs) { return cs.gamma(); }

/// {n} together with every finite truant over A(1), ..., A(l-1). For each
/// element the recorded provenance is the shortest, then lexicographically
/// smallest, active vector with that truant.
inline CriterionSet criterion_set(const EscalationResult& run) {
    if (run.depth_guard_hit || !run.terminal_depth)
        throw std::invalid_argument("criterion_set: escalation run hit the depth guard (no terminal level)");
    CriterionSet cs;
    cs.m = run.m;
    cs.n = run.n;
    cs.bound = run.bound;
    std::vector<integer> elems{run.n};
    for (const auto& level : run.levels) {
        for (const auto& node : level.nodes) {
            if (!node.truant.is_finite()) continue;
            integer g = node.truant.value();
            elems.push_back(g);
            if (g != run.n) cs.provenance.emplace(g, node.vector);
        }
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    cs.elements = std::move(elems);
    return cs;
}

/// m copies of n followed by n+1, ..., 2n-1. Tight T(n)-universal by the
/// Fermat polygonal number theorem: the n's represent every multiple of n,
/// and adding one of n+1..2n-1 reaches each residue class from there.
inline CoeffVector fermat_witness(integer m, integer n) {
    if (m < 3) throw std::invalid_argument("fermat_witness: m must be >= 3");
    if (n < 1) throw std::invalid_argument("fermat_witness: n must be >= 1");
    std::vector<integer> v(static_cast<std::size_t>(m), n);
    for (integer x = n + 1; x <= 2 * n - 1; ++x) v.push_back(x);
    return CoeffVector(std::move(v));
}

class WitnessVerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The nonzero values in [1, bound] the form misses.
inline std::vector<integer> missed_values(integer m, const CoeffVector& a, integer bound) {
    ReprSet r = repr_set(m, a, bound);
    std::vector<integer> out;
    for (integer x = 1; x <= bound; ++x) {
        auto z = r.first_missing(x);
        if (!z) break;
        out.push_back(*z);
        x = *z;
    }
    return out;
}

/// A form whose nonzero values are exactly T(n) - {g}: c*d with truant(c) = g
/// and d tight T(g+1)-universal. For g = n the form is just a T(n+1) witness.
/// The miss-set on [1, bound] is checked before returning.
inline CoeffVector minimality_witness(const CriterionSet& cs, integer g, integer bound) {
    if (!cs.contains(g)) throw std::invalid_argument("minimality_witness: " + std::to_string(g) + " not in CS");
    if (g > bound) throw std::invalid_argument("minimality_witness: bound " + std::to_string(bound) + " is below " + std::to_string(g));
    const integer m = cs.m;
    const integer n = cs.n;
    CoeffVector b;
    if (g == n) {
        b = fermat_witness(m, n + 1);
    } else {
        auto it = cs.provenance.find(g);
        if (it == cs.provenance.end()) throw std::logic_error("minimality_witness: no provenance for " + std::to_string(g));
        b = it->second.insert(fermat_witness(m, g + 1));
    }
    std::vector<integer> expected;
    for (integer x = 1; x < n && x <= bound; ++x) expected.push_back(x);
    expected.push_back(g);
    auto missed = missed_values(m, b, bound);
    if (missed != expected)
        throw WitnessVerificationError("minimality_witness: " + b.to_string() + " does not miss exactly {" +
                                       std::to_string(g) + "} on [" + std::to_string(n) + ", " +
                                       std::to_string(bound) + "]");
    return b;
}

inline CoeffVector minimality_witness(integer m, integer n, integer g, const EscalationResult& run, integer bound) {
    CriterionSet cs = criterion_set(run);
    if (cs.m != m || cs.n != n) throw std::invalid_argument("minimality_witness: run parameters do not match (m, n)");
    return minimality_witness(cs, g, bound);
}

/// True when r contains nothing in [1, n-1] and every element of CS(m,n).
inline bool satisfies_criterion(const CriterionSet& cs, const ReprSet& r) {
    for (integer x = 1; x < cs.n; ++x)
        if (r.contains(x)) return false;
    for (integer g : cs.elements)
        if (!r.contains(g)) return false;
    return true;
}

}  // namespace tightpoly
