#include "gen.hpp"

#include "purity/lefschetz.hpp"

#include <doctest.h>

using namespace purity;

namespace {

// Coefficients c with D = sum_d c_d D_d in N^1, solved from scratch.
std::vector<Rational> level_coefficients(const GradedRing& ring, int n, const FieldSpec& f, const DivisorClass& d) {
    RationalMatrix m(ring.rank(1), std::size_t(n + 1));
    for (int lvl = 0; lvl < n; ++lvl) {
        std::vector<Rational> a(std::size_t(n), 0);
        a[std::size_t(lvl)] = 1;
        auto col = divisor_coords(ring, invariant_divisor(n, f, 0, a));
        for (std::size_t i = 0; i < col.size(); ++i) m(i, std::size_t(lvl)) = col[i];
    }
    auto target = divisor_coords(ring, d);
    for (std::size_t i = 0; i < target.size(); ++i) m(i, std::size_t(n)) = -target[i];
    auto rk = rank_kernel(m);
    REQUIRE(rk.kernel.size() == 1);
    auto v = rk.kernel.front();
    REQUIRE(v[std::size_t(n)] != 0);
    std::vector<Rational> out;
    for (int lvl = 0; lvl < n; ++lvl) out.push_back(v[std::size_t(lvl)] / v[std::size_t(n)]);
    return out;
}

}  // namespace

TEST_CASE("omega satisfies hard Lefschetz and the Hodge standard conjecture") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
        CAPTURE(n);
        CAPTURE(q);
        auto f = FieldSpec::of_order(q);
        auto ring = build_ring(VarietySpec::blown_up(n, f));
        auto ctx = make_context(ring, omega_class(n, f));
        auto hl = check_hard_lefschetz(ctx);
        CHECK(hl.ok);
        auto hodge = check_hodge_standard(ctx);
        CHECK(hodge.ok);
        for (const auto& s : hodge.degrees) {
            CHECK(s.positive_definite);
            CHECK(s.signature_ok);
            CHECK(s.form_inertia.signature() == s.expected_signature);
            std::size_t expected_prim = ring->rank(s.k) - (s.k > 0 ? ring->rank(s.k - 1) : 0);
            CHECK(s.primitive_dim == expected_prim);
        }
    }
}

TEST_CASE("a single exceptional curve is not a polarization") {
    auto f = FieldSpec::of_order(2);
    auto ring = build_ring(VarietySpec::blown_up(2, f));
    auto p = enumerate_subspaces(2, f, 0).front();
    DivisorClass e;
    e.add(Generator::exceptional(p), 1);
    auto ctx = make_context(ring, e);
    // e^2 = -1 is still nonzero, so L^2 : N^0 -> N^2 is bijective
    CHECK(check_hard_lefschetz(ctx).ok);
    auto hodge = check_hodge_standard(ctx);
    CHECK_FALSE(hodge.ok);
    CHECK_FALSE(hodge.degrees.front().positive_definite);
    CHECK_THROWS_AS(invariant_form(2, f, e), std::invalid_argument);
}

TEST_CASE("hard Lefschetz breaks on the segment from h to e_P where L^2 = 0") {
    auto f = FieldSpec::of_order(2);
    auto ring = build_ring(VarietySpec::blown_up(2, f));
    auto p = enumerate_subspaces(2, f, 0).front();
    DivisorClass h, e;
    h.add(Generator::hyperplane(), 1);
    e.add(Generator::exceptional(p), 1);
    auto rows = hodge_sweep(ring, divisor_coords(*ring, h), divisor_coords(*ring, e), 5);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CAPTURE(to_string(r.t));
        // L^2 = (1-t)^2 - t^2 = 1 - 2t
        CHECK(r.hard_lefschetz == (r.t != Rational(1, 2)));
    }
    // h is only nef, but h^2 > 0 is enough for the index theorem
    CHECK(rows.front().hodge);
    CHECK_FALSE(rows.back().hodge);
    CHECK_THROWS_AS(hodge_sweep(ring, divisor_coords(*ring, h), divisor_coords(*ring, e), 1), std::invalid_argument);
}

TEST_CASE("omega margins on B^2(F_2)") {
    auto f = FieldSpec::of_order(2);
    auto form = invariant_form(2, f, omega_class(2, f));
    CHECK(form.alpha == 4);
    REQUIRE(form.a.size() == 2);
    CHECK(form.a[0] == -1);
    CHECK(form.a[1] == 0);
    auto rep = positivity(form, 2);
    CHECK(rep.positive);
    REQUIRE(rep.margins.size() == 2);
    CHECK(rep.margins[0] == Rational(5, 7));
    CHECK(rep.margins[1] == Rational(4, 7));
}

TEST_CASE("positivity agrees with the level-coefficient oracle") {
    for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto f = FieldSpec::of_order(q);
        auto ring = build_ring(VarietySpec::blown_up(n, f));
        int agree = 0, trials = 60;
        for (int trial = 0; trial < trials; ++trial) {
            Rational alpha = gen::small_rational();
            std::vector<Rational> a;
            for (int d = 0; d < n; ++d) a.push_back(gen::small_rational());
            auto d = invariant_divisor(n, f, alpha, a);
            auto c = level_coefficients(*ring, n, f, d);
            bool oracle = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x > 0; });
            auto form = invariant_form(n, f, d);
            CAPTURE(to_string(alpha));
            CHECK(is_positive(form, q) == oracle);
            agree += is_positive(form, q) == oracle;
            auto norm = invariant_form(n, f, normalize_divisor(n, f, d));
            CHECK(norm.a[std::size_t(n - 1)] == 0);
            CHECK(divisor_coords(*ring, normalize_divisor(n, f, d)) == divisor_coords(*ring, d));
        }
        CHECK(agree == trials);
    }
}
