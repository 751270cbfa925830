#include "gen.hpp"
#include "oracles.hpp"

#include "purity/finite_geometry.hpp"

#include <doctest.h>

#include <set>

using namespace purity;

namespace {

std::vector<std::vector<int>> random_invertible(const FieldSpec& f, int n) {
    for (;;) {
        std::vector<std::vector<int>> g(std::size_t(n), std::vector<int>(std::size_t(n), 0));
        for (auto& row : g)
            for (auto& x : row) x = gen::uniform(0, f.q() - 1);
        auto copy = g;
        if (row_reduce(f, copy) == n) return g;
    }
}

LinearSubvariety random_subspace(const FieldSpec& f, int n, int d) {
    for (;;) {
        std::vector<std::vector<int>> vecs(std::size_t(d + 1), std::vector<int>(std::size_t(n + 1)));
        for (auto& v : vecs)
            for (auto& x : v) x = gen::uniform(0, f.q() - 1);
        auto s = LinearSubvariety::span(f, n, vecs);
        if (s.dim() == d) return s;
    }
}

}  // namespace

TEST_CASE("field axioms hold exhaustively") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16}) {
        CAPTURE(q);
        auto f = FieldSpec::of_order(q);
        REQUIRE(f.q() == q);
        bool ok = true;
        for (int a = 0; a < q; ++a) {
            ok &= f.add(a, 0) == a && f.mul(a, 1) == a && f.add(a, f.neg(a)) == 0;
            if (a) ok &= f.mul(a, f.inv(a)) == 1;
            for (int b = 0; b < q; ++b) {
                ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                ok &= f.sub(f.add(a, b), b) == a;
                if (a && b) ok &= f.mul(a, b) != 0;
                for (int c = 0; c < q; ++c) {
                    ok &= f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c));
                    ok &= f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c));
                    ok &= f.add(f.add(a, b), c) == f.add(a, f.add(b, c));
                }
            }
        }
        CHECK(ok);
        if (f.e() > 1) CHECK(is_irreducible(f.p(), f.modulus()));
    }
}

TEST_CASE("field construction rejects bad input") {
    CHECK_THROWS_AS(FieldSpec::prime(6), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::of_order(6), std::invalid_argument);
    // x^2 + 1 = (x + 1)^2 over F_2
    CHECK_THROWS_AS(FieldSpec::with_modulus(2, 2, {1, 0, 1}), std::invalid_argument);
    CHECK_FALSE(is_irreducible(3, {2, 0, 1}));  // x^2 - 1
    CHECK(is_irreducible(3, {1, 0, 1}));
    auto f = FieldSpec::with_modulus(3, 2, {2, 2, 1});  // x^2 + 2x + 2
    CHECK(f.q() == 9);
    CHECK_THROWS(f.inv(0));
}

TEST_CASE("enumeration counts match Gaussian binomials and a brute-force count") {
    for (int q : {2, 3, 4}) {
        auto f = FieldSpec::of_order(q);
        for (int n = 1; n <= 3; ++n) {
            for (int d = 0; d <= n; ++d) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(d);
                auto subs = enumerate_subspaces(n, f, d);
                CHECK(subs.size() == gaussian_binomial(n + 1, d + 1, q));
                CHECK(subs.size() == oracle::count_subspaces(q, n + 1, d + 1));
                CHECK(std::set<LinearSubvariety>(subs.begin(), subs.end()).size() == subs.size());
                CHECK(std::is_sorted(subs.begin(), subs.end()));
                for (const auto& s : subs) CHECK(s.dim() == d);
            }
        }
    }
    CHECK(point_count(2, 3) == 13);
    CHECK(point_count(-1, 3) == 0);
    CHECK(gaussian_binomial(4, 2, 2) == oracle::qbinom(4, 2, 2));
}

TEST_CASE("span is canonical") {
    auto f = FieldSpec::of_order(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = gen::uniform(1, 4), d = gen::uniform(0, n);
        auto v = random_subspace(f, n, d);
        // any other spanning set gives the same object
        auto rows = v.matrix();
        auto g = random_invertible(f, d + 1);
        std::vector<std::vector<int>> mixed(rows.size(), std::vector<int>(std::size_t(n + 1), 0));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                for (int c = 0; c <= n; ++c)
                    mixed[std::size_t(i)][std::size_t(c)] =
                        f.add(mixed[std::size_t(i)][std::size_t(c)], f.mul(g[std::size_t(i)][std::size_t(j)], rows[std::size_t(j)][std::size_t(c)]));
        mixed.push_back(std::vector<int>(std::size_t(n + 1), 0));
        CHECK(LinearSubvariety::span(f, n, mixed) == v);
    }
}

TEST_CASE("linear maps permute subspaces and preserve incidence") {
    for (int q : {2, 3, 4}) {
        auto f = FieldSpec::of_order(q);
        int n = 2;
        auto g = random_invertible(f, n + 1);
        for (int d = 0; d < n; ++d) {
            auto subs = enumerate_subspaces(n, f, d);
            std::set<LinearSubvariety> images;
            for (const auto& s : subs) images.insert(apply_linear(f, g, s));
            CHECK(images == std::set<LinearSubvariety>(subs.begin(), subs.end()));
        }
        auto points = enumerate_subspaces(n, f, 0), lines = enumerate_subspaces(n, f, 1);
        for (const auto& p : points)
            for (const auto& l : lines) CHECK(contains(f, l, p) == contains(f, apply_linear(f, g, l), apply_linear(f, g, p)));
    }
}

TEST_CASE("join and meet satisfy the dimension formula") {
    auto f = FieldSpec::of_order(2);
    for (int trial = 0; trial < 200; ++trial) {
        int n = gen::uniform(1, 5);
        auto a = random_subspace(f, n, gen::uniform(0, n)), b = random_subspace(f, n, gen::uniform(0, n));
        auto j = join(f, a, b), m = meet(f, a, b);
        CHECK(j.dim() + m.dim() == a.dim() + b.dim());
        CHECK(contains(f, j, a));
        CHECK(contains(f, j, b));
        if (m.dim() >= 0) {
            CHECK(contains(f, a, m));
            CHECK(contains(f, b, m));
        }
    }
}

TEST_CASE("local coordinates and quotients round trip") {
    auto f = FieldSpec::of_order(3);
    for (int trial = 0; trial < 60; ++trial) {
        int n = gen::uniform(2, 4);
        auto v = random_subspace(f, n, gen::uniform(1, n - 1));
        auto w = random_subspace(f, v.dim(), gen::uniform(0, v.dim()));
        auto inside = embed_from(f, v, w);
        CHECK(contains(f, v, inside));
        CHECK(coordinates_in(f, v, inside) == w);
    }
    int n = 3;
    for (const auto& v : enumerate_subspaces(n, f, 1)) {
        auto pairs = quotient_geometry(f, v);
        std::size_t expected = 0;
        for (int e = 0; e < n - v.dim() - 1; ++e) expected += gaussian_binomial(n - v.dim(), e + 1, 3);
        CHECK(pairs.size() == expected);
        for (const auto& [w, img] : pairs) {
            CHECK(contains(f, w, v));
            CHECK(img.dim() == w.dim() - v.dim() - 1);
            CHECK(quotient_image(f, v, w) == img);
        }
    }
}
