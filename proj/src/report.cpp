#include "purity/report.hpp"

#include "purity/lefschetz.hpp"
#include "purity/lemmas.hpp"
#include "purity/weight_ss.hpp"
#include "purity/zeta.hpp"

#include <sstream>
#include <stdexcept>

namespace purity {

namespace {

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string join(const Json& arr, const std::string& sep = " ") {
    std::string out;
    for (const auto& x : arr) {
        if (!out.empty()) out += sep;
        out += x.is_string() ? x.get<std::string>() : x.dump();
    }
    return out;
}

Json base(const std::string& command) {
    return {{"schema_version", kReportSchemaVersion}, {"command", command}};
}

Json inertia_json(const Inertia& in) {
    return {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
}

std::string inertia_text(const Json& j) {
    return "(+" + std::to_string(j["positive"].get<std::size_t>()) + ", -" +
           std::to_string(j["negative"].get<std::size_t>()) + ", 0:" + std::to_string(j["zero"].get<std::size_t>()) + ")";
}

}  // namespace

Json rational_json(const Rational& x) { return to_string(x); }

DivisorArg DivisorArg::parse(const std::string& text) {
    DivisorArg d;
    if (text == "omega") return d;
    d.omega = false;
    std::stringstream ss(text);
    std::string item;
    std::vector<Rational> vals;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty divisor coefficient");
        vals.push_back(parse_rational(item.substr(b, e - b + 1)));
    }
    if (vals.empty()) throw std::invalid_argument("divisor needs alpha");
    d.alpha = vals[0];
    d.a.assign(vals.begin() + 1, vals.end());
    return d;
}

std::string DivisorArg::describe() const {
    if (omega) return "omega";
    std::string out = to_string(alpha);
    for (const auto& x : a) out += "," + to_string(x);
    return out;
}

Json ring_report(int n, int q, std::optional<int> pairing_degree, const ResourceLimits& limits) {
    Json rep = base("ring");
    auto spec = VarietySpec::blown_up(n, FieldSpec::of_order(q));
    auto ring = build_ring(spec, limits);
    auto betti = betti_numbers(spec);
    auto ranks = ring->ranks();
    rep["variety"] = spec.describe();
    rep["n"] = n;
    rep["q"] = q;
    rep["betti"] = betti;
    rep["basis_sizes"] = ranks;
    Json basis = Json::array();
    for (int k = 0; k <= n; ++k) {
        Json row = Json::array();
        for (const auto& m : ring->basis[std::size_t(k)]) row.push_back(m.describe());
        basis.push_back(row);
    }
    rep["basis"] = basis;
    bool ok = ranks.size() == betti.size();
    for (std::size_t k = 0; ok && k < ranks.size(); ++k) ok = ranks[k] == betti[k];
    bool nondegenerate = true;
    for (int k = 0; k <= n; ++k) nondegenerate = nondegenerate && rank(ring->pairing[std::size_t(k)]) == ring->rank(k);
    rep["pairing_nondegenerate"] = nondegenerate;
    if (pairing_degree) {
        int k = *pairing_degree;
        if (k < 0 || k > n) throw std::invalid_argument("pairing degree out of range");
        rep["pairing"] = {{"k", k}, {"matrix", matrix_to_json(ring->pairing[std::size_t(k)])}};
    }
    rep["status"] = ok && nondegenerate ? "pass" : "fail";
    return rep;
}

Json hodge_report(int n, int q, const DivisorArg& arg, bool skip_positivity, const ResourceLimits& limits) {
    Json rep = base("hodge");
    FieldSpec f = FieldSpec::of_order(q);
    auto spec = VarietySpec::blown_up(n, f);
    auto ring = build_ring(spec, limits);
    rep["variety"] = spec.describe();
    rep["n"] = n;
    rep["q"] = q;

    DivisorClass d = arg.omega ? omega_class(n, f) : invariant_divisor(n, f, arg.alpha, arg.a);
    auto form = invariant_form(n, f, d);
    Json a = Json::array();
    for (const auto& x : form.a) a.push_back(rational_json(x));
    rep["divisor"] = {{"input", arg.describe()}, {"alpha", rational_json(form.alpha)}, {"a", a}};

    auto pos = positivity(form, q);
    Json margins = Json::array();
    const Rational total(mpz_class(std::to_string(point_count(n, q))));
    std::string refusal;
    for (int dd = 0; dd < n; ++dd) {
        Rational ad = dd < int(form.a.size()) ? form.a[std::size_t(dd)] : Rational(0);
        Rational term = form.alpha * Rational(mpz_class(std::to_string(point_count(n - dd - 1, q)))) / total;
        term.canonicalize();
        const Rational& m = pos.margins[std::size_t(dd)];
        margins.push_back({{"d", dd}, {"a_d", rational_json(ad)}, {"term", rational_json(term)}, {"value", rational_json(m)}});
        if (refusal.empty() && sgn(m) <= 0)
            refusal = to_string(ad) + " + " + to_string(term) + (sgn(m) < 0 ? " < 0" : " = 0");
    }
    if (!pos.alpha_positive) refusal = "alpha = " + to_string(form.alpha) + " <= 0";
    rep["positivity"] = {{"positive", pos.positive}, {"alpha_positive", pos.alpha_positive}, {"margins", margins}};
    if (!pos.positive) rep["positivity"]["criterion"] = refusal;

    if (!pos.positive && !skip_positivity) {
        rep["status"] = "refused";
        return rep;
    }

    auto ctx = make_context(ring, divisor_coords(*ring, d));
    auto h = check_hodge_standard(ctx);
    Json hl = Json::array();
    for (const auto& x : check_hard_lefschetz(ctx).degrees)
        hl.push_back({{"k", x.k}, {"exponent", x.exponent}, {"dim_source", x.dim_source}, {"dim_target", x.dim_target},
                      {"rank", x.rank}, {"ok", x.ok}});
    rep["hard_lefschetz"] = {{"ok", h.hard_lefschetz}, {"degrees", hl}};
    Json degs = Json::array();
    for (const auto& s : h.degrees)
        degs.push_back({{"k", s.k},
                        {"primitive_dim", s.primitive_dim},
                        {"primitive_inertia", inertia_json(s.primitive_inertia)},
                        {"positive_definite", s.positive_definite},
                        {"form_inertia", inertia_json(s.form_inertia)},
                        {"expected_signature", s.expected_signature},
                        {"signature_ok", s.signature_ok}});
    rep["hodge_standard"] = {{"ok", h.ok}, {"degrees", degs}};
    if (!h.error.empty()) rep["hodge_standard"]["error"] = h.error;
    rep["status"] = h.hard_lefschetz && h.ok ? "pass" : "fail";
    return rep;
}

Json wss_report(const SemistableComplex& cx, const std::string& label, const WssOptions& opts) {
    Json rep = base("wss");
    rep["complex"] = {{"label", label}, {"dimension", cx.n}, {"q", cx.q}, {"components", cx.component_count},
                      {"strata", cx.strata.size()}};
    rep["frobenius_model"] = "scalar q^(j/2) on weight tag j";
    LevelData levels(cx);
    auto wa = analyze(cx, levels);
    const auto& ch = wa.e1_checks;
    Json failures = ch.failures;
    rep["e1_checks"] = {{"d1_squared_zero", ch.d1_squared_zero}, {"monodromy_commutes", ch.monodromy_commutes},
                        {"monodromy_iso", ch.monodromy_iso}, {"failures", failures}};
    bool ok = ch.d1_squared_zero && ch.monodromy_commutes && ch.monodromy_iso;
    if (!ch.d1_squared_zero) {
        rep["status"] = "fail";
        return rep;
    }

    Json entries = Json::array();
    for (const auto& [p, e] : wa.e1.entries)
        entries.push_back({{"i", p.first}, {"j", p.second}, {"w", p.first + p.second}, {"weight_tag", p.second},
                           {"e1", e.dim}, {"e2", wa.e2.dim(p)}});
    rep["entries"] = entries;
    rep["e2_totals"] = e2_totals(wa.e1, wa.e2);
    rep["euler"] = {{"e1", wa.euler.e1}, {"e2", wa.euler.e2}, {"strata", wa.euler.strata}, {"ok", wa.euler.ok}};
    ok = ok && wa.euler.ok;

    Json purity = Json::array();
    for (const auto& pr : wa.purity) {
        Json rows = Json::array();
        for (const auto& r : pr.rows)
            rows.push_back({{"r", r.r}, {"dim_source", r.dim_source}, {"dim_target", r.dim_target}, {"rank", r.rank}, {"ok", r.ok}});
        purity.push_back({{"w", pr.w}, {"ok", pr.ok}, {"rows", rows}});
    }
    rep["purity"] = purity;
    rep["pure"] = wa.pure();
    ok = ok && wa.pure();

    if (wa.pure()) {
        Json inertia = Json::array();
        for (int w = 0; w <= 2 * cx.n; ++w) {
            Json weights = Json::object();
            for (const auto& [j, d] : inertia_invariants(wa.e1, wa.e2, w)) weights[std::to_string(j)] = d;
            inertia.push_back({{"w", w}, {"weights", weights}});
        }
        rep["inertia"] = inertia;
    }

    if (opts.zeta) {
        if (wa.pure()) {
            auto z = zeta_function(wa.e1, wa.e2);
            Json jz = z.to_json();
            Json lf = Json::array();
            for (int w = 0; w <= 2 * cx.n; ++w) lf.push_back(l_factor(wa.e1, wa.e2, w).to_string());
            jz["l_factors"] = lf;
            jz["mu"] = mu_from_e2(wa.e1, wa.e2, cx.n);
            jz["p_adic"] = "identical under the scalar Frobenius model";
            if (cx.n == 1) jz["theorem_shape_match"] = z == theorem_shape(cx.q, 1, long(mu_from_e2(wa.e1, wa.e2, 1)));
            rep["zeta"] = jz;
        } else {
            rep["zeta"] = {{"error", "purity failed; local factors are not determined by E2"}};
            ok = false;
        }
    }

    if (opts.lemmas) {
        auto lr = verify_lemmas(cx, levels);
        Json results = Json::object();
        for (const auto& name : lemma_names()) results[name] = lr.lemma_ok(name);
        Json fails = Json::array();
        for (const auto& c : lr.checks)
            if (!c.ok) fails.push_back({{"lemma", c.lemma}, {"k", c.k}, {"c", c.c}, {"detail", c.detail}});
        Json strata = Json::array();
        for (const auto& s : lr.strata)
            strata.push_back({{"subset", subset_label(s.subset)}, {"hard_lefschetz", s.hard_lefschetz}, {"hodge", s.hodge}});
        rep["lemmas"] = {{"defined", lr.defined}, {"strata_hodge", lr.strata_hodge}, {"ok", lr.ok},
                         {"results", results}, {"failures", fails}, {"strata", strata}, {"checks", lr.checks.size()}};
        if (!lr.defined) rep["lemmas"]["error"] = cx.has_lefschetz() ? "a stratum fails hard Lefschetz" : "no Lefschetz classes";
        ok = ok && lr.defined && lr.ok;
    }
    rep["status"] = ok ? "pass" : "fail";
    return rep;
}

int exit_code(const Json& report) { return report.value("status", "fail") == "pass" ? 0 : 1; }

std::string render_text(const Json& rep) {
    std::ostringstream os;
    const std::string cmd = rep.value("command", "");
    if (cmd == "ring") {
        os << "variety: " << rep["variety"].get<std::string>() << "\n";
        os << "betti: " << join(rep["betti"]) << "\n";
        os << "basis sizes: " << join(rep["basis_sizes"]) << "\n";
        os << "pairing nondegenerate: " << verdict(rep["pairing_nondegenerate"].get<bool>()) << "\n";
        if (rep.contains("pairing")) {
            int k = rep["pairing"]["k"].get<int>();
            os << "pairing N^" << k << " x N^" << rep["n"].get<int>() - k << ":\n";
            for (const auto& row : rep["pairing"]["matrix"]) os << "  [" << join(row) << "]\n";
        }
    } else if (cmd == "hodge") {
        os << "variety: " << rep["variety"].get<std::string>() << "\n";
        const auto& d = rep["divisor"];
        os << "divisor: " << d["input"].get<std::string>() << " -> alpha = " << d["alpha"].get<std::string>() << ", a = ["
           << join(d["a"], ", ") << "]\n";
        const auto& pos = rep["positivity"];
        Json vals = Json::array();
        for (const auto& m : pos["margins"]) vals.push_back(m["value"]);
        os << "positivity: margins " << join(vals, ", ") << ": " << verdict(pos["positive"].get<bool>()) << "\n";
        if (rep["status"] == "refused") {
            os << "REFUSED: not positive (criterion " << pos["criterion"].get<std::string>() << ")\n";
            return os.str();
        }
        const auto& hl = rep["hard_lefschetz"];
        os << "hard-lefschetz: " << verdict(hl["ok"].get<bool>()) << "\n";
        for (const auto& x : hl["degrees"])
            os << "  k=" << x["k"] << ": L^" << x["exponent"] << " rank " << x["rank"] << " of " << x["dim_source"] << "\n";
        const auto& hs = rep["hodge_standard"];
        os << "hodge-standard: " << verdict(hs["ok"].get<bool>()) << "\n";
        for (const auto& x : hs["degrees"])
            os << "  k=" << x["k"] << ": primitive dim " << x["primitive_dim"] << ", inertia "
               << inertia_text(x["primitive_inertia"]) << ", form inertia " << inertia_text(x["form_inertia"])
               << ", signature " << (x["signature_ok"].get<bool>() ? "ok" : "MISMATCH") << "\n";
        if (hs.contains("error")) os << "  " << hs["error"].get<std::string>() << "\n";
    } else if (cmd == "wss") {
        const auto& c = rep["complex"];
        os << "complex: " << c["label"].get<std::string>() << " (" << c["components"] << " components, dimension "
           << c["dimension"] << ", q = " << c["q"] << ")\n";
        const auto& e = rep["e1_checks"];
        os << "d1 o d1 = 0: " << verdict(e["d1_squared_zero"].get<bool>()) << "\n";
        if (rep.contains("entries")) {
            os << "N d1 = d1 N: " << verdict(e["monodromy_commutes"].get<bool>()) << "\n";
            os << "E1 monodromy isomorphisms: " << verdict(e["monodromy_iso"].get<bool>()) << "\n";
        }
        for (const auto& f : e["failures"]) os << "  " << f.get<std::string>() << "\n";
        if (!rep.contains("entries")) return os.str() + "result: FAIL\n";
        os << "E1/E2 (i, j, weight tag j):\n";
        for (const auto& x : rep["entries"])
            os << "  (" << x["i"] << "," << x["j"] << ") w=" << x["w"] << " E1 " << x["e1"] << " E2 " << x["e2"] << "\n";
        const auto& eu = rep["euler"];
        os << "euler: E1 " << eu["e1"] << ", E2 " << eu["e2"] << ", strata " << eu["strata"] << ": "
           << verdict(eu["ok"].get<bool>()) << "\n";
        os << "E2 totals by degree: " << join(rep["e2_totals"]) << "\n";
        for (const auto& p : rep["purity"]) {
            os << "purity w=" << p["w"] << ": " << verdict(p["ok"].get<bool>());
            for (const auto& r : p["rows"])
                os << "  N^" << r["r"] << " " << r["dim_source"] << "->" << r["dim_target"] << " rank " << r["rank"];
            os << "\n";
        }
        os << "purity: " << verdict(rep["pure"].get<bool>()) << "\n";
        if (rep.contains("inertia"))
            for (const auto& x : rep["inertia"]) {
                os << "inertia w=" << x["w"] << ":";
                for (const auto& [j, d] : x["weights"].items()) os << " weight " << j << " -> " << d;
                os << "\n";
            }
        if (rep.contains("zeta")) {
            const auto& z = rep["zeta"];
            if (z.contains("error")) {
                os << "zeta: unavailable (" << z["error"].get<std::string>() << ")\n";
            } else {
                for (std::size_t w = 0; w < z["l_factors"].size(); ++w)
                    os << "L(H^" << w << ") = " << z["l_factors"][w].get<std::string>() << "\n";
                os << "zeta: " << z["text"].get<std::string>() << "\n";
                os << "mu: " << z["mu"] << "\n";
                if (z.contains("theorem_shape_match"))
                    os << "curve zeta shape: " << verdict(z["theorem_shape_match"].get<bool>()) << "\n";
            }
        }
        if (rep.contains("lemmas")) {
            const auto& l = rep["lemmas"];
            if (!l["defined"].get<bool>()) {
                os << "lemmas: undefined (" << l["error"].get<std::string>() << ")\n";
            } else {
                os << "strata Hodge standard: " << verdict(l["strata_hodge"].get<bool>()) << "\n";
                for (const auto& [name, v] : l["results"].items()) os << "lemma " << name << ": " << verdict(v.get<bool>()) << "\n";
                for (const auto& f : l["failures"])
                    os << "  failed " << f["lemma"].get<std::string>() << " at k=" << f["k"] << " c=" << f["c"] << " ("
                       << f["detail"].get<std::string>() << ")\n";
            }
        }
    }
    std::string st = rep.value("status", "fail");
    os << "result: " << (st == "pass" ? "PASS" : st == "refused" ? "REFUSED" : "FAIL") << "\n";
    return os.str();
}

}  // namespace purity
