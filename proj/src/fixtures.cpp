#include "purity/fixtures.hpp"

#include "purity/lefschetz.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace purity {

namespace {

struct Builder {
    int n = 0, q = 0;
    std::vector<VarietySpec> comps;
    std::vector<RationalVector> lefschetz;
    std::map<Subset, VarietySpec> strata;
    std::map<Subset, std::map<Subset, std::vector<RationalMatrix>>> res;

    Json json() const {
        auto restrictions = [&](const Subset& s) {
            Json r = Json::object();
            auto it = res.find(s);
            if (it == res.end()) return r;
            for (const auto& [t, maps] : it->second) {
                std::string key;
                for (std::size_t i = 0; i < t.size(); ++i) key += (i ? "," : "") + std::to_string(t[i]);
                Json ms = Json::array();
                for (const auto& m : maps) ms.push_back(matrix_to_json(m));
                r[key] = ms;
            }
            return r;
        };
        Json cs = Json::array();
        for (std::size_t i = 0; i < comps.size(); ++i) {
            Json e{{"variety", variety_to_json(comps[i])}};
            Json l = Json::array();
            for (const auto& x : lefschetz[i]) l.push_back(to_string(x));
            e["lefschetz"] = l;
            Json r = restrictions({int(i) + 1});
            if (!r.empty()) e["restrictions"] = r;
            cs.push_back(e);
        }
        Json ss = Json::array();
        for (const auto& [s, v] : strata) {
            Json e{{"subset", s}, {"variety", variety_to_json(v)}};
            Json r = restrictions(s);
            if (!r.empty()) e["restrictions"] = r;
            ss.push_back(e);
        }
        return Json{{"schema_version", 1}, {"dimension", n}, {"q", q}, {"components", cs}, {"strata", ss}};
    }
};

RationalMatrix ones(std::size_t rows, std::size_t cols) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = 1;
    return m;
}

// Restriction of a surface's N^* to a smooth rational curve with the given class.
std::vector<RationalMatrix> to_curve(const GradedRing& src, const Polynomial& curve) {
    RationalMatrix d1(1, src.rank(1));
    for (std::size_t i = 0; i < src.rank(1); ++i) {
        Polynomial b;
        add_term(b, src.basis[1][i], Rational(1));
        d1(0, i) = src.engine->evaluate(src.variety, multiply(b, curve));
    }
    return {ones(1, 1), d1};
}

Polynomial gen_poly(const Generator& g) {
    Polynomial p;
    add_term(p, Monomial{0, {g}}, Rational(1));
    return p;
}

Subset sorted(Subset s) {
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

Json tate_cycle_json(int m, int q) {
    if (m < 2) throw std::invalid_argument("tate-cycle needs at least two components");
    Builder b;
    b.n = 1;
    b.q = q;
    for (int i = 0; i < m; ++i) {
        b.comps.push_back(VarietySpec::projective(1));
        b.lefschetz.push_back({Rational(1)});
    }
    if (m == 2) {
        b.strata[{1, 2}] = VarietySpec::disjoint_union({VarietySpec::point(), VarietySpec::point()});
        b.res[{1}][{1, 2}] = {ones(2, 1)};
        b.res[{2}][{1, 2}] = {ones(2, 1)};
        return b.json();
    }
    for (int i = 1; i <= m; ++i) {
        int j = i % m + 1;
        Subset s = sorted({i, j});
        b.strata[s] = VarietySpec::point();
        b.res[{i}][s] = {ones(1, 1)};
        b.res[{j}][s] = {ones(1, 1)};
    }
    return b.json();
}

Json two_planes_json(int n, int q) {
    if (n < 1) throw std::invalid_argument("two-planes needs n >= 1");
    Builder b;
    b.n = n;
    b.q = q;
    VarietySpec comp = VarietySpec::product({VarietySpec::projective(1), VarietySpec::projective(n - 1)});
    VarietySpec line = VarietySpec::projective(n - 1);
    auto ring = build_ring(comp);
    // pt x P^{n-1}: the first-factor hyperplane class dies, the second restricts to h
    std::vector<RationalMatrix> maps;
    for (int k = 0; k <= n - 1; ++k) {
        RationalMatrix m(1, ring->rank(k));
        for (std::size_t i = 0; i < ring->rank(k); ++i) {
            const auto& gens = ring->basis[k][i].gens;
            bool first = std::any_of(gens.begin(), gens.end(), [](const Generator& g) { return g.factor == 0; });
            m(0, i) = first ? 0 : 1;
        }
        maps.push_back(m);
    }
    Polynomial L;
    add_term(L, Monomial{0, {Generator::hyperplane(0)}}, Rational(1));
    if (n > 1) add_term(L, Monomial{0, {Generator::hyperplane(1)}}, Rational(1));
    for (int i = 0; i < 2; ++i) {
        b.comps.push_back(comp);
        b.lefschetz.push_back(ring->coords(L, 1));
    }
    b.strata[{1, 2}] = line;
    b.res[{1}][{1, 2}] = maps;
    b.res[{2}][{1, 2}] = maps;
    return b.json();
}

Json triangle_of_planes_json() {
    const FieldSpec f = FieldSpec::of_order(3);
    Builder b;
    b.n = 2;
    b.q = 3;
    // line a = {x2 = 0}, line b = {x1 = 0}, meeting at (1:0:0); centers on a away from b
    auto la = LinearSubvariety::span(f, 2, {{1, 0, 0}, {0, 1, 0}});
    auto lb = LinearSubvariety::span(f, 2, {{1, 0, 0}, {0, 0, 1}});
    std::vector<LinearSubvariety> centers;
    for (const auto& p : enumerate_subspaces(2, f, 0))
        if (contains(f, la, p) && !contains(f, lb, p)) centers.push_back(p);
    VarietySpec comp = VarietySpec::blown_up_points(f, centers);
    auto ring = build_ring(comp);
    Polynomial h;
    add_term(h, Monomial{0, {Generator::hyperplane()}}, Rational(1));
    for (int i = 0; i < 3; ++i) {
        b.comps.push_back(comp);
        b.lefschetz.push_back(ring->coords(h, 1));
    }
    auto ra = to_curve(*ring, gen_poly(Generator::exceptional(la)));
    auto rb = to_curve(*ring, gen_poly(Generator::exceptional(lb)));
    // the curve shared by X_i and X_{i+1} is line a on X_i and line b on X_{i+1}
    for (int i = 1; i <= 3; ++i) {
        int j = i % 3 + 1;
        Subset s = sorted({i, j});
        b.strata[s] = VarietySpec::projective(1);
        b.res[{i}][s] = ra;
        b.res[{j}][s] = rb;
        b.res[s][{1, 2, 3}] = {ones(1, 1)};
    }
    b.strata[{1, 2, 3}] = VarietySpec::point();
    return b.json();
}

Json drinfeld_local_json(int d, int q) {
    const FieldSpec f = FieldSpec::of_order(q);
    Builder b;
    b.n = d;
    b.q = q;
    if (d == 1) {
        // B^1 = P^1 with one neighbouring P^1 through each rational point
        b.comps.push_back(VarietySpec::blown_up(1, f));
        b.lefschetz.push_back({Rational(1)});
        int idx = 1;
        for (std::size_t i = 0; i < point_count(1, q); ++i) {
            ++idx;
            b.comps.push_back(VarietySpec::projective(1));
            b.lefschetz.push_back({Rational(1)});
            b.strata[{1, idx}] = VarietySpec::point();
            b.res[{1}][{1, idx}] = {ones(1, 1)};
            b.res[{idx}][{1, idx}] = {ones(1, 1)};
        }
        return b.json();
    }
    if (d != 2) throw std::invalid_argument("drinfeld-local is available for d = 1 and d = 2");

    auto points = enumerate_subspaces(2, f, 0);
    auto lines = enumerate_subspaces(2, f, 1);
    auto l0 = LinearSubvariety::span(f, 2, {{1, 0, 0}, {0, 1, 0}});
    auto p0 = LinearSubvariety::span(f, 2, {{0, 0, 1}});
    std::vector<LinearSubvariety> on_l0;
    for (const auto& p : points)
        if (contains(f, l0, p)) on_l0.push_back(p);

    VarietySpec center = VarietySpec::blown_up(2, f);
    VarietySpec xp = VarietySpec::blown_up_points(f, on_l0);
    VarietySpec xl = VarietySpec::blown_up_points(f, {p0});
    auto r0 = build_ring(center);
    auto rp = build_ring(xp);
    auto rl = build_ring(xl);

    const int np = int(points.size());
    auto pidx = [&](std::size_t i) { return 2 + int(i); };
    auto lidx = [&](std::size_t i) { return 2 + np + int(i); };

    b.comps.push_back(center);
    b.lefschetz.push_back(divisor_coords(*r0, omega_class(2, f)));
    Polynomial lp, ll;
    add_term(lp, Monomial{0, {Generator::hyperplane()}}, Rational(2 * q));
    for (const auto& p : on_l0) add_term(lp, Monomial{0, {Generator::exceptional(p)}}, Rational(-1));
    add_term(ll, Monomial{0, {Generator::hyperplane()}}, Rational(q));
    add_term(ll, Monomial{0, {Generator::exceptional(p0)}}, Rational(-(q - 1)));
    for (std::size_t i = 0; i < points.size(); ++i) {
        b.comps.push_back(xp);
        b.lefschetz.push_back(rp->coords(lp, 1));
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        b.comps.push_back(xl);
        b.lefschetz.push_back(rl->coords(ll, 1));
    }

    auto from_center = [&](const LinearSubvariety& v) { return to_curve(*r0, gen_poly(Generator::exceptional(v))); };
    auto p_edge = to_curve(*rp, gen_poly(Generator::exceptional(l0)));
    auto l_edge = to_curve(*rl, gen_poly(Generator::exceptional(p0)));

    for (std::size_t i = 0; i < points.size(); ++i) {
        Subset s{1, pidx(i)};
        b.strata[s] = VarietySpec::projective(1);
        b.res[{1}][s] = from_center(points[i]);
        b.res[{pidx(i)}][s] = p_edge;
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Subset s{1, lidx(i)};
        b.strata[s] = VarietySpec::projective(1);
        b.res[{1}][s] = from_center(lines[i]);
        b.res[{lidx(i)}][s] = l_edge;
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < lines.size(); ++j) {
            if (!contains(f, lines[j], points[i])) continue;
            // the line through P maps to a point of P(F^3 / P) = P^1, placed on l0 in X_P
            auto dir = quotient_image(f, points[i], lines[j]);
            auto pl = LinearSubvariety::span(f, 2, {{dir.entry(0, 0), dir.entry(0, 1), 0}});
            // P inside L gives a point of L = P^1, joined with p0 in X_L
            auto loc = coordinates_in(f, lines[j], points[i]);
            auto lp_line = LinearSubvariety::span(f, 2, {{loc.entry(0, 0), loc.entry(0, 1), 0}, {0, 0, 1}});
            Subset s{pidx(i), lidx(j)};
            b.strata[s] = VarietySpec::projective(1);
            b.res[{pidx(i)}][s] = to_curve(*rp, gen_poly(Generator::exceptional(pl)));
            b.res[{lidx(j)}][s] = to_curve(*rl, gen_poly(Generator::exceptional(lp_line)));
            Subset t{1, pidx(i), lidx(j)};
            b.strata[t] = VarietySpec::point();
            b.res[{1, pidx(i)}][t] = {ones(1, 1)};
            b.res[{1, lidx(j)}][t] = {ones(1, 1)};
            b.res[s][t] = {ones(1, 1)};
        }
    return b.json();
}

std::vector<std::string> fixture_names() {
    return {"tate-cycle:m,q", "two-planes:n[,q]", "triangle-of-planes", "drinfeld-local:d,q"};
}

Json fixture_json(const std::string& spec) {
    std::string name = spec, args;
    if (auto c = spec.find(':'); c != std::string::npos) {
        name = spec.substr(0, c);
        args = spec.substr(c + 1);
    }
    std::vector<int> a;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || end != tok.data() + tok.size() || tok.empty())
            throw std::invalid_argument("bad fixture argument \"" + tok + "\"");
        a.push_back(v);
    }
    auto need = [&](std::size_t k) {
        if (a.size() != k)
            throw std::invalid_argument("fixture " + name + " takes " + std::to_string(k) + " argument(s)");
    };
    if (name == "tate-cycle") {
        need(2);
        return tate_cycle_json(a[0], a[1]);
    }
    if (name == "two-planes") {
        if (a.empty()) a.push_back(2);
        if (a.size() == 1) a.push_back(2);
        need(2);
        return two_planes_json(a[0], a[1]);
    }
    if (name == "triangle-of-planes") {
        need(0);
        return triangle_of_planes_json();
    }
    if (name == "drinfeld-local") {
        need(2);
        return drinfeld_local_json(a[0], a[1]);
    }
    throw std::invalid_argument("unknown fixture \"" + name + "\"");
}

}  // namespace purity
