#include <toric/integrate.hpp>
#include <toric/standard_fans.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toric;

namespace {

QVector q(std::initializer_list<long long> xs) {
    QVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

Polynomial x(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial one(std::size_t n) { return Polynomial::constant(n, 1); }

}  // namespace

TEST(Integrate, StandardSimplex) {
    Simplex s{q({0, 0}), q({1, 0}), q({0, 1})};
    EXPECT_EQ(integrate_over_simplex(one(2), s), Rat(1, 2));
    EXPECT_EQ(integrate_over_simplex(x(2, 0), s), Rat(1, 6));
    EXPECT_EQ(integrate_over_simplex(x(2, 0) + x(2, 1), s), Rat(1, 3));
    EXPECT_EQ(integrate_over_simplex(one(1), {q({0}), q({2})}), Rat(2));
}

TEST(Integrate, TriangulationOfSmallPolytopes) {
    auto tri = Polytope::from_points(2, {q({0, 0}), q({1, 0}), q({0, 1})});
    EXPECT_EQ(triangulate(tri).size(), 1u);
    auto square = Polytope::from_points(2, {q({0, 0}), q({1, 0}), q({0, 1}), q({1, 1})});
    EXPECT_EQ(triangulate(square).size(), 2u);
    EXPECT_EQ(volume(square), Rat(1));
    auto quad = polytope_from_support(fan_f1(), q({1, 1, 1, 1}));
    EXPECT_EQ(triangulate(quad).size(), 2u);
    EXPECT_EQ(volume(quad), oracle::shoelace(quad.vertices()));
    EXPECT_EQ(volume(polytope_from_support(fan_p2(), q({0, 0, 3}))), Rat(9, 2));
}

TEST(Integrate, CubeAndCrossPolytopeVolumes) {
    std::vector<QVector> cube;
    for (int m = 0; m < 8; ++m) cube.push_back(q({m & 1, (m >> 1) & 1, (m >> 2) & 1}));
    EXPECT_EQ(volume(Polytope::from_points(3, cube)), Rat(1));
    auto cross = Polytope::from_points(3, {q({1, 0, 0}), q({-1, 0, 0}), q({0, 1, 0}), q({0, -1, 0}), q({0, 0, 1}),
                                           q({0, 0, -1})});
    EXPECT_EQ(volume(cross), Rat(4, 3));
}

TEST(Integrate, RandomPolygonsAgainstGreenOracle) {
    std::mt19937_64 rng(2024);
    const auto fans = {fan_p2(), fan_p1xp1(), fan_f1()};
    for (const auto& fan : fans) {
        MixedIntegrator mi(fan);
        for (int trial = 0; trial < 8; ++trial) {
            QVector h = mi.perturbed_point(rng, 3);
            auto p = polytope_from_support(fan, h);
            for (const auto& f : {one(2), x(2, 0), x(2, 0) * x(2, 1), x(2, 1).pow(3) + Rat(3) * x(2, 0)}) {
                EXPECT_EQ(integrate_over_polytope(f, p), oracle::polygon_integral(f, p.vertices()));
            }
        }
    }
}

TEST(Integrate, BoxOracle) {
    auto box = polytope_from_support(fan_p1xp1(), q({3, 2, -1, 1}));  // [1,3] x [-1,2]
    Polynomial f = x(2, 0).pow(2) * x(2, 1);
    EXPECT_EQ(integrate_over_polytope(f, box), oracle::box_monomial(1, 3, -1, 2, 2, 1));
}

TEST(Integrate, MixedIntegralExamples) {
    auto segx = support_function(Polytope::from_points(2, {q({0, 0}), q({1, 0})}), fan_p1xp1());
    auto segy = support_function(Polytope::from_points(2, {q({0, 0}), q({0, 1})}), fan_p1xp1());
    EXPECT_EQ(mixed_integral(fan_p1xp1(), one(2), {segx, segy}), Rat(1, 2));
    EXPECT_EQ(mixed_integral(fan_p2(), one(2), {q({0, 0, 1}), q({0, 0, 1})}), Rat(1, 2));
    // I_x on P^1 is (h1^2 - h2^2)/2; its polarization at ([0,1], [0,1]) in a degree-2 sense
    EXPECT_EQ(mixed_integral(fan_p1(), x(1, 0), {q({1, 0}), q({1, 0})}), Rat(1, 2));
    EXPECT_THROW(mixed_integral(fan_p2(), one(2), {q({0, 0, 1})}), PreconditionError);
    EXPECT_THROW(mixed_integral(fan_p2(), one(2) + x(2, 0), {q({0, 0, 1}), q({0, 0, 1})}), PreconditionError);
}

TEST(Integrate, MixedIntegralIsSymmetricMultilinear) {
    MixedIntegrator mi(fan_f1());
    std::mt19937_64 rng(7);
    Polynomial f = x(2, 0);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<QVector> args;
        for (int k = 0; k < 3; ++k) {
            QVector h(4);
            for (auto& c : h) c = static_cast<long long>(rng() % 9) - 4;
            args.push_back(h);
        }
        Rat v = mi.mixed(f, args);
        EXPECT_EQ(v, mi.mixed(f, {args[2], args[0], args[1]}));
        auto doubled = args;
        doubled[0] = Rat(2) * doubled[0] + args[1];
        EXPECT_EQ(mi.mixed(f, doubled), 2 * v + mi.mixed(f, {args[1], args[1], args[2]}));
    }
}

TEST(Integrate, IfPolynomialClosedForms) {
    auto p2 = i_f_polynomial(fan_p2(), one(2));
    Polynomial s = x(3, 0) + x(3, 1) + x(3, 2);
    EXPECT_EQ(p2, Rat(1, 2) * s * s);
    EXPECT_EQ(i_f_polynomial(fan_p1(), one(1)), x(2, 0) + x(2, 1));
    EXPECT_EQ(i_f_polynomial(fan_p1(), x(1, 0)), Rat(1, 2) * (x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1)));
}

TEST(Integrate, IfPolynomialMatchesDirectAreas) {
    MixedIntegrator mi(fan_f1());
    Polynomial f = x(2, 0) * x(2, 1);
    Polynomial p = i_f_polynomial(mi, f);
    std::mt19937_64 rng(99);
    for (int k = 0; k < 10; ++k) {
        QVector h = mi.perturbed_point(rng, 5);
        EXPECT_EQ(p.evaluate(h), oracle::polygon_integral(f, polytope_from_support(fan_f1(), h).vertices()));
    }
}

TEST(Integrate, SquareFreeDerivative) {
    MixedIntegrator p2(fan_p2());
    auto c1 = square_free_derivative_check(p2, one(2), q({1, 1, 1}), {0, 1});
    EXPECT_EQ(c1.lhs, Rat(1));
    EXPECT_TRUE(c1.holds());
    auto c2 = square_free_derivative_check(p2, x(2, 0), q({1, 1, 1}), {1, 2});
    EXPECT_TRUE(c2.holds());
    EXPECT_EQ(c2.rhs, dual_vertex(fan_p2(), {1, 2}, q({1, 1, 1}))[0]);
    MixedIntegrator p1(fan_p1());
    auto c3 = square_free_derivative_check(p1, one(1), q({1, 1}), {0});
    EXPECT_TRUE(c3.holds());
    EXPECT_THROW(square_free_derivative_check(p2, one(2), q({0, 0, 0}), {0, 1}), PreconditionError);
}

TEST(Integrate, ConvexChain) {
    MixedIntegrator p2(fan_p2());
    auto c = convex_chain_identity_check(p2, one(2), q({0, 0, 1}), {0, 1}, {Rat(1, 2), Rat(1, 2)});
    EXPECT_EQ(c.lhs, Rat(1, 4));
    EXPECT_TRUE(c.holds());
    auto c2 = convex_chain_identity_check(p2, x(2, 0), q({2, 2, 2}), {2, 0}, {Rat(1, 3), Rat(-1, 2)});
    EXPECT_TRUE(c2.holds());
    MixedIntegrator f1(fan_f1());
    auto c3 = convex_chain_identity_check(f1, x(2, 0), q({4, 4, 4, 4}), {0, 2}, {Rat(1), Rat(1, 2)});
    EXPECT_EQ(c3.rhs, Rat(0));
    EXPECT_TRUE(c3.holds());
    EXPECT_THROW(convex_chain_identity_check(p2, one(2), q({0, 0, 1}), {0, 1}, {Rat(0), Rat(1)}), PreconditionError);
}
