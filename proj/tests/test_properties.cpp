#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "tightpoly/escalation.hpp"
#include "tightpoly/serialize.hpp"

using namespace tightpoly;

namespace {

constexpr int cases = 1000;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    integer between(integer lo, integer hi) { return std::uniform_int_distribution<integer>(lo, hi)(rng); }

    std::vector<integer> coeffs(std::size_t max_len, integer max_entry) {
        std::vector<integer> v(static_cast<std::size_t>(between(1, static_cast<integer>(max_len))));
        for (auto& x : v) x = between(1, max_entry);
        return v;
    }
};

}  // namespace

TEST(Properties, MonotoneUnderSubmultiset) {
    Gen g(101);
    for (int i = 0; i < cases; ++i) {
        integer m = g.between(3, 12), bound = g.between(50, 600);
        CoeffVector a(g.coeffs(4, 15));
        CoeffVector b = a.insert(g.between(1, 20));
        auto ra = repr_set(m, a, bound), rb = repr_set(m, b, bound);
        for (integer x : ra.members()) ASSERT_TRUE(rb.contains(x)) << a << " < " << b << " m=" << m << " x=" << x;
        integer n = g.between(1, 3);
        auto ta = truant(m, n, a, bound), tb = truant(m, n, b, bound);
        if (ta.is_above_bound()) {
            ASSERT_TRUE(tb.is_above_bound());
        }
        if (tb.is_finite()) {
            ASSERT_GE(tb.value(), ta.value());
        }
    }
}

TEST(Properties, ScalingLaw) {
    Gen g(202);
    for (int i = 0; i < cases; ++i) {
        integer m = g.between(3, 12), bound = g.between(50, 800), c = g.between(2, 7);
        CoeffVector a(g.coeffs(4, 10));
        auto scaled = repr_set(m, a.scaled(c), bound);
        auto base = repr_set(m, a, bound / c);
        for (integer x = 0; x <= bound; ++x)
            ASSERT_EQ(scaled.contains(x), x % c == 0 && base.contains(x / c)) << a << " c=" << c << " x=" << x;
    }
}

TEST(Properties, PermutationInvariance) {
    Gen g(303);
    for (int i = 0; i < cases; ++i) {
        integer m = g.between(3, 12), bound = g.between(50, 800);
        auto coeffs = g.coeffs(5, 20);
        auto expected = repr_set(m, CoeffVector(coeffs), bound);
        std::shuffle(coeffs.begin(), coeffs.end(), g.rng);
        ReprSet r = repr_base(bound);
        for (integer c : coeffs) r = repr_extend(r, m, c, bound);
        ASSERT_EQ(r, expected);
    }
}

TEST(Properties, TruantMatchesOracle) {
    Gen g(404);
    for (int i = 0; i < cases; ++i) {
        integer m = g.between(3, 11), n = g.between(1, 4), bound = g.between(2 * n, 300);
        auto coeffs = g.coeffs(4, 8);
        integer expected = oracle::truant(oracle::repr_oracle(m, coeffs, bound), n, bound);
        auto got = truant(m, n, CoeffVector(coeffs), bound);
        if (expected < 0)
            ASSERT_TRUE(got.is_above_bound());
        else
            ASSERT_EQ(got, TruantResult::finite(expected));
    }
}

TEST(Properties, DeterministicAcrossJobs) {
    for (auto [m, n] : std::vector<std::pair<integer, integer>>{{3, 1}, {4, 2}, {5, 2}, {7, 2}, {8, 3}, {9, 1}}) {
        EscalationOptions one, four;
        four.jobs = 4;
        auto a = to_json(run_escalation(m, n, 50000, one)).dump();
        auto b = to_json(run_escalation(m, n, 50000, four)).dump();
        EXPECT_EQ(a, b) << "m=" << m << " n=" << n;
    }
}
