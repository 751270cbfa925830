#include "gen.hpp"

#include <doctest.h>

using namespace purity;

TEST_CASE("parse and print rationals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(to_string(Rational(-4, 8)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rank of products of full-rank factors") {
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = std::size_t(gen::uniform(1, 6)), c = std::size_t(gen::uniform(1, 6));
        std::size_t k = std::size_t(gen::uniform(0, int(std::min(r, c))));
        auto m = gen::of_rank(r, c, k);
        CHECK(rank(m) == k);
        CHECK(rank(m.transpose()) == k);
    }
}

TEST_CASE("kernel vectors are annihilated and rank plus nullity is the width") {
    for (int trial = 0; trial < 40; ++trial) {
        auto m = gen::matrix(std::size_t(gen::uniform(1, 5)), std::size_t(gen::uniform(1, 7)), -2, 2);
        auto rk = rank_kernel(m);
        CHECK(rk.rank + rk.kernel.size() == m.cols());
        for (const auto& v : rk.kernel) {
            auto z = m * v;
            for (const auto& x : z) CHECK(x == 0);
        }
        CHECK(rank(RationalMatrix::from_columns(rk.kernel, m.cols())) == rk.kernel.size());
    }
}

TEST_CASE("inverse and determinant") {
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = std::size_t(gen::uniform(1, 5));
        auto a = gen::invertible(n), b = gen::invertible(n);
        CHECK(inverse(a) * a == RationalMatrix::identity(n));
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
        CHECK(determinant(a.transpose()) == determinant(a));
    }
    RationalMatrix s(2, 2);
    s(0, 0) = 1;
    s(0, 1) = 2;
    s(1, 0) = 2;
    s(1, 1) = 4;
    CHECK(determinant(s) == 0);
    CHECK_THROWS_AS(inverse(s), std::domain_error);
}

TEST_CASE("inertia is a congruence invariant") {
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = std::size_t(gen::uniform(1, 5));
        // diagonal with a known sign pattern, hidden by a random change of basis
        RationalMatrix d(n, n);
        Inertia expected;
        for (std::size_t i = 0; i < n; ++i) {
            int s = gen::uniform(-1, 1);
            d(i, i) = s * gen::uniform(1, 5);
            if (s > 0) ++expected.positive;
            if (s < 0) ++expected.negative;
            if (s == 0) ++expected.zero;
        }
        auto p = gen::invertible(n);
        auto g = p.transpose() * d * p;
        CHECK(g.is_symmetric());
        CHECK(symmetric_signature(g) == expected);
        CHECK(is_positive_definite(g) == (expected.positive == n));
    }
}

TEST_CASE("signature with zero diagonal") {
    RationalMatrix h(2, 2);
    h(0, 1) = 1;
    h(1, 0) = 1;
    CHECK(symmetric_signature(h) == Inertia{1, 1, 0});
    CHECK_FALSE(is_positive_definite(h));
    CHECK(is_positive_definite(RationalMatrix(0, 0)));
    RationalMatrix a(2, 2);
    a(0, 1) = 1;
    CHECK_THROWS_AS(symmetric_signature(a), std::invalid_argument);
}

TEST_CASE("subspace dimension formula") {
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = std::size_t(gen::uniform(1, 6));
        std::size_t ac = std::size_t(gen::uniform(1, 4));
        auto a = gen::of_rank(d, ac, std::size_t(gen::uniform(0, int(std::min(d, ac)))));
        auto b = gen::matrix(d, std::size_t(gen::uniform(0, 4)), -1, 1);
        std::size_t sum = subspace_dim(subspace_sum(a, b));
        std::size_t cap = subspace_dim(subspace_intersection(a, b));
        CHECK(sum + cap == subspace_dim(a) + subspace_dim(b));
        CHECK(subspace_contains(subspace_sum(a, b), a));
        CHECK(subspace_contains(a, subspace_intersection(a, b)));
        auto ext = complement_in(a, b);
        CHECK(subspace_dim(a) + ext.cols() == sum);
    }
}

TEST_CASE("kronecker and blocks") {
    auto a = gen::matrix(2, 3), b = gen::matrix(3, 2);
    auto k = kronecker(a, b);
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 6);
    CHECK(k(4, 5) == a(1, 2) * b(1, 1));
    RationalMatrix z(4, 4);
    z.set_block(1, 2, RationalMatrix::identity(2));
    CHECK(z.block(1, 2, 2, 2) == RationalMatrix::identity(2));
    CHECK(power(RationalMatrix::identity(3).scaled(2), 3) == RationalMatrix::identity(3).scaled(8));
    CHECK(kernel_basis(RationalMatrix(0, 3), 3) == RationalMatrix::identity(3));
}
