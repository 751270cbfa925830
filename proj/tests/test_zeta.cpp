#include "gen.hpp"

#include "purity/fixtures.hpp"
#include "purity/zeta.hpp"

#include <doctest.h>

using namespace purity;

namespace {

FactoredRational factors(int q, std::vector<std::pair<Rational, long>> fs) {
    FactoredRational out;
    out.q = q;
    for (auto& [a, m] : fs) out.multiply(a, m);
    return out;
}

FactoredRational zeta_of(const std::string& name) {
    auto cx = load_complex(fixture_json(name));
    LevelData lv(cx);
    auto wa = analyze(cx, lv);
    return zeta_function(wa.e1, wa.e2);
}

}  // namespace

TEST_CASE("factored form cancels and prints canonically") {
    auto f = factors(2, {{1, -1}, {0, 2}, {0, -2}, {Rational(4, 2), 0}});
    CHECK(f.factors.size() == 1);
    CHECK(f.to_string() == "1 / ((1 - 2T)^1)");
    CHECK(f.numerator_degree() == 0);
    CHECK(f.denominator_degree() == 1);
    CHECK((f * f.inverse()).factors.empty());
    CHECK((f * f.inverse()).to_string() == "1");
    auto g = factors(3, {{0, 1}, {2, -1}, {Rational(1, 2), -2}});
    CHECK(g.to_string() == "(1 - T)^1 / ((1 - 3^(1/2)T)^2 (1 - 9T)^1)");
    // keys reduce even when built unreduced
    Rational unreduced(6, 3);
    CHECK(factors(3, {{unreduced, 1}}) == factors(3, {{2, 1}}));
}

TEST_CASE("JSON form") {
    auto f = factors(2, {{0, -1}, {1, -2}, {2, -1}});
    auto j = f.to_json();
    CHECK(j["q"] == 2);
    CHECK(j["scalar"] == "1");
    CHECK(j["sign_exponent"] == -4);
    CHECK(j["factors"].size() == 3);
    CHECK(j["factors"][1]["a"] == 1);
    CHECK(j["factors"][1]["multiplicity"] == -2);
    CHECK(j["text"] == "1 / ((1 - T)^1 (1 - 2T)^2 (1 - 4T)^1)");
    CHECK(factors(3, {{Rational(1, 2), 1}}).to_json()["factors"][0]["a"] == "1/2");
}

TEST_CASE("evaluation matches the expanded product") {
    for (int trial = 0; trial < 30; ++trial) {
        int q = gen::uniform(2, 5);
        std::vector<std::pair<Rational, long>> fs;
        for (int i = 0; i < 3; ++i) fs.push_back({gen::uniform(0, 3), gen::uniform(-2, 2)});
        auto f = factors(q, fs);
        Rational t(1, gen::uniform(100, 200));
        Rational direct = 1;
        for (auto [a, m] : fs) {
            Rational qa = 1;
            for (int i = 0; i < a.get_num().get_si(); ++i) qa *= q;
            for (long i = 0; i < (m < 0 ? -m : m); ++i) direct = m > 0 ? Rational(direct * (1 - qa * t)) : Rational(direct / (1 - qa * t));
        }
        CHECK(f.evaluate(t) == direct);
    }
    auto pole = factors(2, {{1, -1}});
    CHECK_THROWS_AS(pole.evaluate(Rational(1, 2)), std::domain_error);
    CHECK(factors(2, {{1, 1}}).evaluate(Rational(1, 2)) == 0);
}

TEST_CASE("closed shape for curves and surfaces") {
    for (int q : {2, 3, 5}) {
        CHECK(theorem_shape(q, 1, 1) == factors(q, {{1, -1}}));
        CHECK(theorem_shape(q, 1, 0) == factors(q, {{0, -1}, {1, -1}}));
        CHECK(theorem_shape(q, 2, 0) == factors(q, {{0, -1}, {1, -1}, {2, -1}}));
        CHECK(theorem_shape(q, 2, 1) == factors(q, {{0, -2}, {1, -1}, {2, -1}}));
    }
}

TEST_CASE("zeta functions of fixtures") {
    CHECK(zeta_of("tate-cycle:3,2").to_string() == "1 / ((1 - 2T)^1)");
    CHECK(zeta_of("tate-cycle:4,3") == theorem_shape(3, 1, 1));
    CHECK(zeta_of("two-planes:2").to_string() == "1 / ((1 - T)^1 (1 - 2T)^2 (1 - 4T)^1)");
    CHECK(zeta_of("drinfeld-local:1,2").to_string() == "1 / ((1 - T)^1 (1 - 2T)^1)");

    auto cx = load_complex(fixture_json("tate-cycle:5,3"));
    LevelData lv(cx);
    auto wa = analyze(cx, lv);
    CHECK(mu_from_e2(wa.e1, wa.e2, 1) == 1);
    CHECK(l_factor(wa.e1, wa.e2, 1).to_string() == "1 / ((1 - T)^1)");
}
