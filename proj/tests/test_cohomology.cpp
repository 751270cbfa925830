#include "gen.hpp"
#include "oracles.hpp"

#include "purity/graded_ring.hpp"

#include <doctest.h>

using namespace purity;

namespace {

std::vector<Generator> generators(int n, const FieldSpec& f, int factor = 0) {
    std::vector<Generator> out{Generator::hyperplane(factor)};
    for (const auto& v : enumerate_all_proper(n, f)) out.push_back(Generator::exceptional(v, factor));
    return out;
}

Monomial random_monomial(const std::vector<Generator>& gens, int degree) {
    Monomial m;
    for (int i = 0; i < degree; ++i) m.gens.push_back(gens[std::size_t(gen::uniform(0, int(gens.size()) - 1))]);
    std::sort(m.gens.begin(), m.gens.end());
    return m;
}

Rational top_power(const GradedRing& ring, const RationalVector& L) {
    RationalVector x = L;
    for (int k = 1; k < ring.n; ++k) x = ring.multiply(1, L, k, x);
    return ring.pair(ring.n, x, ring.unit());
}

DivisorClass shifted(const DivisorClass& d, int factor) {
    DivisorClass out;
    for (const auto& [g, c] : d.coeffs) {
        Generator moved = g;
        moved.factor = std::int8_t(factor);
        out.add(moved, c);
    }
    return out;
}

}  // namespace

TEST_CASE("ranks agree with the blow-up recursion and with point counts") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 5}, {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        CAPTURE(n);
        CAPTURE(q);
        auto spec = VarietySpec::blown_up(n, FieldSpec::of_order(q));
        auto ring = build_ring(spec);
        auto betti = betti_numbers(spec);
        auto counted = oracle::blowup_betti(n, q);
        REQUIRE(counted.size() == std::size_t(n + 1));
        for (int k = 0; k <= n; ++k) {
            CHECK(ring->rank(k) == betti[std::size_t(k)]);
            CHECK(std::int64_t(betti[std::size_t(k)]) == counted[std::size_t(k)]);
            CHECK(rank(ring->pairing[std::size_t(k)]) == ring->rank(k));
        }
    }
    // larger cases only through the recursion
    for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}, {4, 3}, {5, 2}}) {
        auto betti = betti_numbers(VarietySpec::blown_up(n, FieldSpec::of_order(q)));
        auto counted = oracle::blowup_betti(n, q);
        for (int k = 0; k <= n; ++k) CHECK(std::int64_t(betti[std::size_t(k)]) == counted[std::size_t(k)]);
    }
}

TEST_CASE("known intersection numbers on B^2(F_2)") {
    auto f = FieldSpec::of_order(2);
    auto ring = build_ring(VarietySpec::blown_up(2, f));
    auto& engine = *ring->engine;
    auto spec = ring->variety;
    auto p = enumerate_subspaces(2, f, 0).front();
    auto l = enumerate_subspaces(2, f, 1).front();
    Monomial hh{0, {Generator::hyperplane(), Generator::hyperplane()}};
    Monomial ee{0, {Generator::exceptional(p), Generator::exceptional(p)}};
    Monomial he{0, {Generator::hyperplane(), Generator::exceptional(p)}};
    CHECK(engine.number(spec, hh) == 1);
    CHECK(engine.number(spec, ee) == -1);
    CHECK(engine.number(spec, he) == 0);
    // strict transform of a line through 3 points: D_L^2 = 1 - 3 = -2
    Monomial dd{0, {Generator::exceptional(l), Generator::exceptional(l)}};
    CHECK(engine.number(spec, dd) == -2);

    auto w = divisor_coords(*ring, omega_class(2, f));
    CHECK(top_power(*ring, w) == 9);
    CHECK(symmetric_signature(ring->pairing[1]) == Inertia{1, 7, 0});

    Monomial bad{0, {Generator::hyperplane()}};
    CHECK_THROWS_AS(engine.number(spec, bad), std::invalid_argument);
}

TEST_CASE("descent order does not change intersection numbers") {
    auto lex = std::make_shared<IntersectionEngine>(DescentPolicy{DescentPolicy::Mode::LexLeast, 0});
    auto rnd = std::make_shared<IntersectionEngine>(DescentPolicy{DescentPolicy::Mode::Random, 99});
    for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto f = FieldSpec::of_order(q);
        auto spec = VarietySpec::blown_up(n, f);
        auto gens = generators(n, f);
        for (int trial = 0; trial < 100; ++trial) {
            auto m = random_monomial(gens, n);
            CAPTURE(m.describe());
            CHECK(lex->number(spec, m) == rnd->number(spec, m));
        }
    }
}

TEST_CASE("Kunneth agrees with the direct product ring") {
    auto f = FieldSpec::of_order(2);
    auto b1 = VarietySpec::blown_up(1, f), b2 = VarietySpec::blown_up(2, f);
    for (const auto& spec : {VarietySpec::product({b1, b1}), VarietySpec::product({b1, b2})}) {
        CAPTURE(spec.describe());
        auto via = build_ring(spec);
        auto direct = build_ring_direct(spec, default_engine());
        CHECK(via->ranks() == direct->ranks());
        if (via->n % 2 == 0) {
            auto mid = std::size_t(via->n / 2);
            CHECK(symmetric_signature(via->pairing[mid]) == symmetric_signature(direct->pairing[mid]));
        }
        int n2 = spec.factor(1).n;
        auto L = shifted(omega_class(1, f), 0).scaled(-1) + shifted(omega_class(n2, f), 1).scaled(-1);
        CHECK(top_power(*via, divisor_coords(*via, L)) == top_power(*direct, divisor_coords(*direct, L)));
    }
    // P^1 x P^1: (h1 + h2)^2 = 2
    auto p = VarietySpec::product({VarietySpec::projective(1), VarietySpec::projective(1)});
    auto ring = build_ring(p);
    DivisorClass L;
    L.add(Generator::hyperplane(0), 1).add(Generator::hyperplane(1), 1);
    CHECK(top_power(*ring, divisor_coords(*ring, L)) == 2);
}

TEST_CASE("restriction to all exceptional divisors is injective below the top degree") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto ring = build_ring(VarietySpec::blown_up(n, FieldSpec::of_order(q)));
        auto rep = check_restriction_injective(*ring);
        CHECK(rep.ok);
        for (std::size_t k = 0; k < rep.dims.size(); ++k) CHECK(rep.stacked_rank[k] == rep.dims[k]);
    }
}

TEST_CASE("products in the ring are associative and commutative") {
    auto ring = build_ring(VarietySpec::blown_up(3, FieldSpec::of_order(2)));
    for (int trial = 0; trial < 10; ++trial) {
        RationalVector x(ring->rank(1)), y(ring->rank(1)), z(ring->rank(1));
        for (auto* v : {&x, &y, &z})
            for (auto& c : *v) c = gen::uniform(-2, 2);
        CHECK(ring->multiply(1, x, 1, y) == ring->multiply(1, y, 1, x));
        CHECK(ring->multiply(2, ring->multiply(1, x, 1, y), 1, z) == ring->multiply(1, x, 2, ring->multiply(1, y, 1, z)));
    }
}

TEST_CASE("resource limits refuse large cases before work starts") {
    CHECK_THROWS_AS(build_ring(VarietySpec::blown_up(4, FieldSpec::of_order(2))), ResourceError);
    CHECK_THROWS_AS(build_ring(VarietySpec::blown_up(3, FieldSpec::of_order(3))), ResourceError);
    ResourceLimits tight;
    tight.max_dim = 2;
    CHECK_THROWS_AS(build_ring(VarietySpec::blown_up(3, FieldSpec::of_order(2)), tight), ResourceError);
    tight.max_dim = 4;
    tight.max_q = 2;
    CHECK_THROWS_AS(build_ring(VarietySpec::blown_up(2, FieldSpec::of_order(3)), tight), ResourceError);
}
