// Acceptance run: one PASS/FAIL line per criterion.
//
// Criterion 9a (hard Lefschetz fails for e_P on B^2) does not hold: e_P^2 = -1 is nonzero,
// so L^2 : N^0 -> N^2 is bijective and hard Lefschetz is true. The line is computed as
// stated and reported FAIL. The run exits 0 only when the failing set is exactly {9a}, so
// an unexpected pass of 9a is also an error.

#include "oracles.hpp"

#include "purity/fixtures.hpp"
#include "purity/lefschetz.hpp"
#include "purity/lemmas.hpp"
#include "purity/weight_ss.hpp"
#include "purity/zeta.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace purity;

namespace {

// Thresholds, in seconds.
constexpr double kEnumerationSeconds = 10;
constexpr double kRing32Seconds = 120;
constexpr double kHodgeTotalSeconds = 300;
constexpr double kFixtureSeconds = 120;
constexpr int kDescentMonomials = 200;
const std::set<std::string> kExpectedFailures = {"9a"};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
    std::ostringstream os;
    os.precision(3);
    os << s << "s";
    return os.str();
}

struct Result {
    std::string id;
    bool ok;
    std::string what;
};

std::vector<Result> results;

void record(const std::string& id, bool ok, const std::string& what) {
    results.push_back({id, ok, what});
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << what << std::endl;
}

// -- 1 ---------------------------------------------------------------------------------

void enumeration() {
    bool ok = true;
    double lib_time = 0;
    for (int q : {2, 3, 4}) {
        auto f = FieldSpec::of_order(q);
        for (int n = 1; n <= 4; ++n) {
            for (int d = 0; d <= n; ++d) {
                auto t0 = Clock::now();
                auto subs = enumerate_subspaces(n, f, d);
                lib_time += since(t0);
                std::uint64_t brute = oracle::count_subspaces(q, n + 1, d + 1);
                if (subs.size() != gaussian_binomial(n + 1, d + 1, q) || subs.size() != brute) {
                    ok = false;
                    std::cout << "    mismatch n=" << n << " d=" << d << " q=" << q << ": " << subs.size() << " vs "
                              << brute << "\n";
                }
            }
        }
    }
    record("1", ok && lib_time < kEnumerationSeconds,
           "enumeration matches Gaussian binomials and brute force, n<=4, q in {2,3,4} (" + secs(lib_time) + ")");
}

// -- 2 ---------------------------------------------------------------------------------

bool descent_independent(int n, const FieldSpec& f, int count) {
    auto spec = VarietySpec::blown_up(n, f);
    IntersectionEngine lex(DescentPolicy{DescentPolicy::Mode::LexLeast, 0});
    IntersectionEngine rnd(DescentPolicy{DescentPolicy::Mode::Random, 7});
    std::vector<Generator> gens{Generator::hyperplane()};
    for (const auto& v : enumerate_all_proper(n, f)) gens.push_back(Generator::exceptional(v));
    std::mt19937_64 rng(1234);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int i = 0; i < count; ++i) {
        Monomial m;
        for (int j = 0; j < n; ++j) m.gens.push_back(gens[pick(rng)]);
        std::sort(m.gens.begin(), m.gens.end());
        if (lex.number(spec, m) != rnd.number(spec, m)) {
            std::cout << "    descent mismatch on " << m.describe() << "\n";
            return false;
        }
    }
    return true;
}

void ring_integrity() {
    bool ok = true;
    double t32 = 0;
    for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
        auto f = FieldSpec::of_order(q);
        auto t0 = Clock::now();
        auto spec = VarietySpec::blown_up(n, f);
        auto ring = build_ring(spec);
        auto betti = betti_numbers(spec);
        auto counted = oracle::blowup_betti(n, q);
        bool here = true;
        for (int k = 0; k <= n; ++k) {
            here &= ring->rank(k) == betti[std::size_t(k)];
            here &= std::int64_t(betti[std::size_t(k)]) == counted[std::size_t(k)];
            here &= rank(ring->pairing[std::size_t(k)]) == ring->rank(k);
        }
        here &= descent_independent(n, f, kDescentMonomials);
        if (n == 3) t32 = since(t0);
        if (!here) std::cout << "    ring check failed for n=" << n << " q=" << q << "\n";
        ok &= here;
    }
    record("2", ok && t32 < kRing32Seconds,
           "rings: Betti numbers, nondegenerate pairings, descent independence on " +
               std::to_string(kDescentMonomials) + " monomials (B^3(F_2) " + secs(t32) + ")");
}

// -- 3 ---------------------------------------------------------------------------------

void hodge_desk() {
    auto t0 = Clock::now();
    bool ok = true;
    for (auto [n, q] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
        auto f = FieldSpec::of_order(q);
        auto ring = build_ring(VarietySpec::blown_up(n, f));
        auto ctx = make_context(ring, omega_class(n, f));
        bool here = check_hard_lefschetz(ctx).ok && check_hodge_standard(ctx).ok;
        if (!here) std::cout << "    omega fails on B^" << n << "(F_" << q << ")\n";
        ok &= here;
    }
    auto b2 = build_ring(VarietySpec::blown_up(2, FieldSpec::of_order(2)));
    auto inertia = symmetric_signature(b2->pairing[1]);
    bool form = inertia == Inertia{1, 7, 0};
    double t = since(t0);
    record("3", ok && form && t < kHodgeTotalSeconds,
           "omega: hard Lefschetz and Hodge standard on B^1, B^2 (q=2,3), B^3 (q=2); N^1 form on B^2(F_2) has inertia (" +
               std::to_string(inertia.positive) + ", " + std::to_string(inertia.negative) + ") (" + secs(t) + ")");
}

// -- 4 ---------------------------------------------------------------------------------

// D = sum_d c_d D_d in N^1; positive means every c_d > 0.
bool positive_by_levels(const GradedRing& ring, int n, const FieldSpec& f, const DivisorClass& d) {
    RationalMatrix m(ring.rank(1), std::size_t(n + 1));
    for (int lvl = 0; lvl < n; ++lvl) {
        std::vector<Rational> a(std::size_t(n), 0);
        a[std::size_t(lvl)] = 1;
        auto col = divisor_coords(ring, invariant_divisor(n, f, 0, a));
        for (std::size_t i = 0; i < col.size(); ++i) m(i, std::size_t(lvl)) = col[i];
    }
    auto target = divisor_coords(ring, d);
    for (std::size_t i = 0; i < target.size(); ++i) m(i, std::size_t(n)) = -target[i];
    auto v = rank_kernel(m).kernel.at(0);
    for (int lvl = 0; lvl < n; ++lvl)
        if (v[std::size_t(lvl)] / v[std::size_t(n)] <= 0) return false;
    return true;
}

void positivity_criterion() {
    bool ok = true;
    int cases = 0;
    for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto f = FieldSpec::of_order(q);
        auto ring = build_ring(VarietySpec::blown_up(n, f));
        const std::vector<Rational> grid = {Rational(-2), Rational(-1, 2), Rational(0), Rational(1, 3), Rational(1),
                                            Rational(5, 2)};
        std::vector<std::size_t> idx(std::size_t(n + 1), 0);
        for (;;) {
            Rational alpha = grid[idx[0]];
            std::vector<Rational> a;
            for (int d = 0; d < n; ++d) a.push_back(grid[idx[std::size_t(d + 1)]]);
            auto d = invariant_divisor(n, f, alpha, a);
            bool expected = positive_by_levels(*ring, n, f, d);
            if (is_positive(invariant_form(n, f, d), q) != expected) {
                ok = false;
                std::cout << "    positivity mismatch on B^" << n << "(F_" << q << ") alpha=" << to_string(alpha) << "\n";
            }
            ++cases;
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == grid.size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    auto f2 = FieldSpec::of_order(2);
    auto margins = positivity(invariant_form(2, f2, omega_class(2, f2)), 2).margins;
    bool omega = !margins.empty() && margins[0] == Rational(5, 7);
    record("4", ok && omega,
           "is_positive agrees with the level-coefficient oracle on " + std::to_string(cases) +
               " divisors; omega on B^2(F_2) has margin " + (margins.empty() ? "?" : to_string(margins[0])));
}

// -- 5 ---------------------------------------------------------------------------------

DivisorClass on_factor(const DivisorClass& d, int factor) {
    DivisorClass out;
    for (const auto& [g, c] : d.coeffs) {
        Generator moved = g;
        moved.factor = std::int8_t(factor);
        out.add(moved, c);
    }
    return out;
}

void kunneth() {
    auto f = FieldSpec::of_order(2);
    bool ok = true;
    for (int n2 : {1, 2}) {
        auto spec = VarietySpec::product({VarietySpec::blown_up(1, f), VarietySpec::blown_up(n2, f)});
        auto ring = build_ring(spec);
        auto direct = build_ring_direct(spec, default_engine());
        auto L = on_factor(omega_class(1, f), 0) + on_factor(omega_class(n2, f), 1);
        auto ctx = make_context(ring, L);
        bool here = check_hard_lefschetz(ctx).ok && check_hodge_standard(ctx).ok && ring->ranks() == direct->ranks();
        if (!here) std::cout << "    product B^1 x B^" << n2 << " fails\n";
        ok &= here;
    }
    record("5", ok, "hard Lefschetz and Hodge standard on B^1 x B^1 and B^1 x B^2 with pr1*omega + pr2*omega");
}

// -- 6, 7 ------------------------------------------------------------------------------

const std::vector<std::string> kSpectralFixtures = {"tate-cycle:3,2", "tate-cycle:5,3", "two-planes:2",
                                                     "drinfeld-local:2,2"};

void spectral_sequence() {
    bool ok = true;
    double worst = 0;
    for (const auto& name : kSpectralFixtures) {
        auto t0 = Clock::now();
        auto cx = load_complex(fixture_json(name));
        LevelData lv(cx);
        auto wa = analyze(cx, lv);
        bool here = wa.e1_checks.d1_squared_zero && wa.e1_checks.monodromy_commutes && wa.e1_checks.monodromy_iso &&
                    wa.euler.ok && wa.pure();
        double t = since(t0);
        worst = std::max(worst, t);
        here &= t < kFixtureSeconds;
        if (!here) std::cout << "    " << name << " fails\n";
        ok &= here;
    }
    record("6", ok, "E1 checks, Euler conservation and purity on 4 fixtures (slowest " + secs(worst) + ")");
}

void lemma_suite() {
    bool ok = true;
    std::size_t checks = 0;
    for (const auto& name : kSpectralFixtures) {
        auto cx = load_complex(fixture_json(name));
        LevelData lv(cx);
        auto rep = verify_lemmas(cx, lv);
        checks += rep.checks.size();
        bool here = rep.defined && rep.strata_hodge && rep.ok;
        for (const auto& l : lemma_names()) here &= rep.lemma_ok(l);
        for (const auto& c : rep.checks)
            if (!c.ok) std::cout << "    " << name << ": " << c.lemma << " k=" << c.k << " c=" << c.c << "\n";
        ok &= here;
    }
    record("7", ok,
           "image-splitting suite (" + std::to_string(lemma_names().size()) + " families, " + std::to_string(checks) +
               " rank statements) on the same fixtures");
}

// -- 8 ---------------------------------------------------------------------------------

void zeta_reproduction() {
    bool ok = true;
    for (int m : {2, 3, 5}) {
        for (int q : {2, 3}) {
            auto cx = load_complex(tate_cycle_json(m, q));
            LevelData lv(cx);
            auto wa = analyze(cx, lv);
            auto z = zeta_function(wa.e1, wa.e2);
            FactoredRational expected;
            expected.q = q;
            expected.multiply(1, -1);
            bool here = mu_from_e2(wa.e1, wa.e2, 1) == 1 && z == theorem_shape(q, 1, 1) && z == expected;
            if (!here) std::cout << "    tate-cycle:" << m << "," << q << " gives " << z.to_string() << "\n";
            ok &= here;
        }
    }
    // factored form against the weight-tag table, on every fixture that passes purity
    int checked = 0;
    for (const auto& name : {"tate-cycle:3,2", "tate-cycle:5,3", "two-planes:2", "two-planes:3", "triangle-of-planes",
                             "drinfeld-local:1,2", "drinfeld-local:2,2"}) {
        auto cx = load_complex(fixture_json(name));
        LevelData lv(cx);
        auto wa = analyze(cx, lv);
        if (!wa.pure()) continue;
        std::map<Rational, long> net;
        for (int w = 0; w <= 2 * cx.n; ++w)
            for (auto [j, d] : inertia_invariants(wa.e1, wa.e2, w)) {
                Rational a(j, 2);
                a.canonicalize();
                net[a] += (w % 2 == 0 ? -1 : 1) * long(d);
            }
        std::erase_if(net, [](const auto& kv) { return kv.second == 0; });
        if (zeta_function(wa.e1, wa.e2).factors != net) {
            ok = false;
            std::cout << "    " << name << ": factored zeta disagrees with the weight-tag table\n";
        }
        ++checked;
    }
    record("8", ok,
           "Tate cycles m in {2,3,5}, q in {2,3}: mu = 1 and zeta = 1/(1-qT); factored zeta matches the weight-tag "
           "table on " + std::to_string(checked) + " pure fixtures");
}

// -- 9 ---------------------------------------------------------------------------------

void negative_point_class() {
    auto f = FieldSpec::of_order(2);
    auto ring = build_ring(VarietySpec::blown_up(2, f));
    auto p = enumerate_subspaces(2, f, 0).front();
    DivisorClass e, h;
    e.add(Generator::exceptional(p), 1);
    h.add(Generator::hyperplane(), 1);
    auto ctx = make_context(ring, e);
    bool hl = check_hard_lefschetz(ctx).ok;
    bool hodge = check_hodge_standard(ctx).ok;
    auto sweep = hodge_sweep(ring, divisor_coords(*ring, h), divisor_coords(*ring, e), 3);
    std::cout << "    e_P on B^2(F_2): hard Lefschetz " << (hl ? "holds" : "fails") << ", Hodge standard "
              << (hodge ? "holds" : "fails") << "\n";
    for (const auto& r : sweep)
        std::cout << "    (1-t) h + t e_P at t=" << to_string(r.t) << ": hard Lefschetz "
                  << (r.hard_lefschetz ? "holds" : "fails") << "\n";
    record("9a", !hl, "hard Lefschetz fails for the non-positive class e_P on B^2(F_2)");
}

struct Captured {
    int code = -1;
    std::string text;
};

Captured run_binary(const std::string& cmd) {
    Captured out;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 512> buf{};
    while (std::fgets(buf.data(), int(buf.size()), pipe)) out.text += buf.data();
    int status = ::pclose(pipe);
    out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void corrupted_input(const std::string& binary) {
    const std::string message = "restriction square does not commute at strata {1,2}→{1,2,3}";
    auto j = fixture_json("triangle-of-planes");
    j["strata"][0]["restrictions"]["1,2,3"][0] = Json::array({Json::array({"2"})});

    bool in_process = false;
    try {
        load_complex(j);
    } catch (const LoadError& e) {
        in_process = std::string(e.what()) == message;
    }

    bool via_cli = false;
    std::string detail = "no binary given";
    if (!binary.empty()) {
        auto path = std::filesystem::temp_directory_path() / ("purity_bad_" + std::to_string(::getpid()) + ".json");
        std::ofstream(path) << j.dump(2);
        auto r = run_binary("'" + binary + "' wss --input '" + path.string() + "' 2>&1");
        std::filesystem::remove(path);
        via_cli = r.code == 2 && r.text.find(message) != std::string::npos;
        detail = "exit " + std::to_string(r.code);
    }
    record("9b", in_process && via_cli, "corrupted restriction rejected at load with the diagnostic (" + detail + ")");
}

}  // namespace

int main(int argc, char** argv) {
    std::string binary = argc > 1 ? argv[1] : "";
    auto t0 = Clock::now();
    enumeration();
    ring_integrity();
    hodge_desk();
    positivity_criterion();
    kunneth();
    spectral_sequence();
    lemma_suite();
    zeta_reproduction();
    negative_point_class();
    corrupted_input(binary);

    std::set<std::string> failed;
    for (const auto& r : results)
        if (!r.ok) failed.insert(r.id);
    std::cout << "total " << secs(since(t0)) << "; failing:";
    for (const auto& id : failed) std::cout << " " << id;
    if (failed.empty()) std::cout << " none";
    std::cout << "\n";
    if (failed == kExpectedFailures) {
        std::cout << "failing set equals the documented expected failures\n";
        return 0;
    }
    std::cout << "failing set differs from the documented expected failures {9a}\n";
    return 1;
}
