#include <toric/exactlin.hpp>
#include <toric/lp.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace toric;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng() % 7) - 3;
    return m;
}

}  // namespace

TEST(Exactlin, RrefOfSmallMatrix) {
    auto m = QMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    auto [r, piv] = rref(m);
    EXPECT_EQ(piv, std::vector<std::size_t>{0});
    EXPECT_EQ(r(0, 1), Rat(2));
    EXPECT_EQ(r(1, 0), Rat(0));
    EXPECT_EQ(r(1, 1), Rat(0));
}

TEST(Exactlin, KernelOfRankOne) {
    auto m = QMatrix::from_rows({{Rat(1), Rat(1)}});
    auto k = kernel_basis(m);
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0], (QVector{Rat(-1), Rat(1)}));
}

TEST(Exactlin, SolveInconsistent) {
    auto m = QMatrix::from_rows({{Rat(1), Rat(1)}, {Rat(1), Rat(1)}});
    EXPECT_FALSE(solve(m, {Rat(1), Rat(2)}).has_value());
    auto x = solve(m, {Rat(3), Rat(3)});
    ASSERT_TRUE(x);
    EXPECT_EQ(m * *x, (QVector{Rat(3), Rat(3)}));
}

TEST(Exactlin, RandomRankNullity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
        auto m = random_matrix(rng, r, c);
        auto ker = kernel_basis(m);
        EXPECT_EQ(rank(m) + ker.size(), c);
        for (const auto& v : ker) EXPECT_TRUE(is_zero(m * v));
    }
}

TEST(Exactlin, DeterminantMatchesInverse) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(rng, 4, 4);
        auto inv = inverse(m);
        if (determinant(m) == 0) {
            EXPECT_FALSE(inv);
            continue;
        }
        ASSERT_TRUE(inv);
        EXPECT_EQ(m * *inv, QMatrix::identity(4));
        EXPECT_EQ(determinant(*inv) * determinant(m), Rat(1));
    }
}

TEST(Exactlin, ReducerRespectsPriority) {
    // span{(1,1,0)} with last column preferred as pivot
    SubspaceReducer red(3, {{Rat(1), Rat(1), Rat(0)}}, {2, 1, 0});
    EXPECT_EQ(red.pivots(), std::vector<std::size_t>{1});
    EXPECT_EQ(red.free_indices(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(red.quotient_coordinates({Rat(0), Rat(1), Rat(0)}), (QVector{Rat(-1), Rat(0)}));
}

TEST(Lp, SmallMaximization) {
    // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
    auto a = QMatrix::from_rows({{Rat(1), Rat(2), Rat(1), Rat(0)}, {Rat(3), Rat(1), Rat(0), Rat(1)}});
    auto res = lp_maximize(a, {Rat(4), Rat(6)}, {Rat(1), Rat(1), Rat(0), Rat(0)});
    ASSERT_EQ(res.status, LpStatus::Optimal);
    EXPECT_EQ(res.value, Rat(14, 5));
}

TEST(Lp, InfeasibleAndUnbounded) {
    auto a = QMatrix::from_rows({{Rat(1), Rat(1)}});
    EXPECT_EQ(lp_maximize(a, {Rat(-1)}, {Rat(0), Rat(0)}).status, LpStatus::Infeasible);
    auto b = QMatrix::from_rows({{Rat(1), Rat(-1)}});
    EXPECT_EQ(lp_maximize(b, {Rat(0)}, {Rat(1), Rat(0)}).status, LpStatus::Unbounded);
}
