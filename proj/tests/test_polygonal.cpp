#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "tightpoly/polygonal.hpp"
#include "tightpoly/prefix_chain.hpp"

using namespace tightpoly;

namespace {

std::vector<integer> members(const ReprSet& r) { return r.members(); }

std::vector<integer> oracle_members(integer m, const std::vector<integer>& a, integer bound) {
    auto s = oracle::repr_oracle(m, a, bound);
    return {s.begin(), s.end()};
}

}  // namespace

TEST(PolygonalNumber, KnownValues) {
    EXPECT_EQ(polygonal_number(5, -1), 2);
    EXPECT_EQ(polygonal_number(7, 0), 0);
    EXPECT_EQ(polygonal_number(3, 4), 10);
    EXPECT_EQ(polygonal_number(4, -3), 9);
    for (integer m = 3; m <= 20; ++m) EXPECT_EQ(polygonal_number(m, 1), 1) << "m=" << m;
}

TEST(PolygonalNumber, MatchesClosedFormula) {
    for (integer m = 3; m <= 30; ++m)
        for (integer u = -50; u <= 50; ++u) EXPECT_EQ(polygonal_number(m, u), oracle::polygonal(m, u));
}

TEST(PolygonalNumber, OverflowIsReported) {
    EXPECT_THROW(polygonal_number(10000, std::int64_t{1} << 32), std::overflow_error);
    EXPECT_THROW(polygonal_number(3, std::numeric_limits<std::int64_t>::max()), std::overflow_error);
    EXPECT_NO_THROW(polygonal_number(10000, 1'000'000));
}

TEST(PolygonalNumber, RejectsSmallM) { EXPECT_THROW(polygonal_number(2, 1), std::invalid_argument); }

TEST(PolygonalSequence, Examples) {
    EXPECT_EQ(polygonal_sequence(5, 30).values(), (std::vector<integer>{0, 1, 2, 5, 7, 12, 15, 22, 26}));
    EXPECT_EQ(polygonal_sequence(4, 10).values(), (std::vector<integer>{0, 1, 4, 9}));
    EXPECT_EQ(polygonal_sequence(3, 0).values(), (std::vector<integer>{0}));
}

TEST(PolygonalSequence, TriangularBranchesAreMerged) {
    // P_3(u) = P_3(-u-1): each triangular number appears once.
    EXPECT_EQ(polygonal_sequence(3, 10).values(), (std::vector<integer>{0, 1, 3, 6, 10}));
}

TEST(PolygonalSequence, MatchesBruteForceScan) {
    for (integer m = 3; m <= 14; ++m) {
        for (integer bound : {0, 1, 2, 7, 100, 1000}) {
            auto seq = polygonal_sequence(m, bound);
            EXPECT_EQ(seq.values(), oracle::polygonal_values(m, bound)) << "m=" << m << " bound=" << bound;
            if (bound >= 1) {
                EXPECT_EQ(seq.values()[0], 0);
                EXPECT_EQ(seq.values()[1], 1);
            }
        }
    }
}

TEST(ReprSet, BaseIsZeroOnly) {
    for (integer b : {0, 10, 1'000'000}) {
        auto r = repr_base(b);
        EXPECT_TRUE(r.contains(0));
        EXPECT_EQ(r.count(), 1u);
        EXPECT_EQ(r.bound(), b);
    }
}

TEST(ReprSet, ExtendExamples) {
    auto squares = ReprSet::from_values(10, std::vector<integer>{0, 1, 4, 9});
    EXPECT_EQ(members(repr_extend(squares, 4, 2, 10)), (std::vector<integer>{0, 1, 2, 3, 4, 6, 8, 9}));
    EXPECT_EQ(members(repr_extend(repr_base(30), 5, 1, 30)), (std::vector<integer>{0, 1, 2, 5, 7, 12, 15, 22, 26}));
    // Only p = 0 fits when g > bound.
    auto some = ReprSet::from_values(10, std::vector<integer>{0, 3, 7});
    EXPECT_EQ(repr_extend(some, 4, 11, 10), some);
}

TEST(ReprSet, ExtendLeavesInputUntouched) {
    auto r = ReprSet::from_values(50, std::vector<integer>{0, 5});
    auto copy = r;
    (void)repr_extend(r, 3, 2, 50);
    EXPECT_EQ(r, copy);
}

TEST(ReprSet, ExtendRejectsZeroCoefficientAndBoundMismatch) {
    EXPECT_THROW(repr_extend(repr_base(10), 4, 0, 10), std::invalid_argument);
    EXPECT_THROW(repr_extend(repr_base(10), 4, 1, 11), std::invalid_argument);
}

TEST(ReprSet, SetExamples) {
    auto lagrange = repr_set(4, CoeffVector{1, 1, 1, 1}, 50);
    EXPECT_EQ(lagrange.count(), 51u);
    EXPECT_EQ(members(repr_set(5, CoeffVector{1}, 30)), (std::vector<integer>{0, 1, 2, 5, 7, 12, 15, 22, 26}));
    EXPECT_EQ(members(repr_set(4, CoeffVector{1, 2}, 10)), (std::vector<integer>{0, 1, 2, 3, 4, 6, 8, 9}));
}

TEST(ReprOracle, Examples) {
    EXPECT_EQ(oracle_members(4, {1, 2}, 10), (std::vector<integer>{0, 1, 2, 3, 4, 6, 8, 9}));
    EXPECT_EQ(oracle_members(3, {1}, 10), (std::vector<integer>{0, 1, 3, 6, 10}));
    EXPECT_THROW(oracle::repr_oracle(3, {1, 1, 1, 1, 1}, 10), std::invalid_argument);
    EXPECT_THROW(oracle::repr_oracle(3, {1}, 10001), std::invalid_argument);
}

TEST(ReprSet, MatchesOracleAcrossWordBoundaries) {
    // Bounds straddling 64-bit word edges exercise the shift kernel's edges.
    for (integer bound : {63, 64, 65, 127, 128, 129, 1000}) {
        for (integer m : {3, 5, 8}) {
            for (auto a : std::vector<std::vector<integer>>{{1}, {2, 3}, {1, 5, 7}, {64}, {65, 1}}) {
                EXPECT_EQ(members(repr_set(m, CoeffVector(a), bound)), oracle_members(m, a, bound))
                    << "m=" << m << " bound=" << bound;
            }
        }
    }
}

TEST(ReprSet, SmallestNonzeroIsSmallestCoefficient) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        integer m = 3 + static_cast<integer>(rng() % 9);
        std::vector<integer> a;
        for (int i = 0, k = 1 + static_cast<int>(rng() % 4); i < k; ++i) a.push_back(1 + static_cast<integer>(rng() % 20));
        CoeffVector v(a);
        auto r = repr_set(m, v, 500);
        EXPECT_TRUE(r.contains(0));
        EXPECT_EQ(r.first_member(1), v.front());
    }
}

TEST(PrefixChain, MaterializedSetMatchesReprSet) {
    auto gp = std::make_shared<PolygonalSequence>(7, 5000);
    PrefixChain chain(gp, 5000);
    chain.push(CoeffVector{1, 2, 4});
    // Probe a short prefix first, then the full set.
    EXPECT_EQ(chain.first_missing(1), std::optional<integer>(131));
    EXPECT_EQ(chain.materialize(), repr_set(7, CoeffVector{1, 2, 4}, 5000));
    chain.push(131);
    EXPECT_EQ(chain.materialize(), repr_set(7, CoeffVector{1, 2, 4, 131}, 5000));
    chain.pop();
    chain.push(3);
    EXPECT_EQ(chain.materialize(), repr_set(7, CoeffVector{1, 2, 3, 4}, 5000));
}

TEST(PrefixChain, FirstMissingAgreesWithFullScan) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        integer m = 3 + static_cast<integer>(rng() % 9);
        integer bound = 200 + static_cast<integer>(rng() % 5000);
        std::vector<integer> a;
        for (int i = 0, k = 1 + static_cast<int>(rng() % 5); i < k; ++i) a.push_back(1 + static_cast<integer>(rng() % 12));
        CoeffVector v(a);
        PrefixChain chain(std::make_shared<PolygonalSequence>(m, bound), bound);
        chain.push(v);
        integer n = 1 + static_cast<integer>(rng() % 4);
        EXPECT_EQ(chain.first_missing(n), repr_set(m, v, bound).first_missing(n)) << v.to_string() << " m=" << m;
    }
}
