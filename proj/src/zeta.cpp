#include "purity/zeta.hpp"

#include <stdexcept>

namespace purity {

namespace {

Rational q_power(int q, const Rational& a) {
    if (a.get_den() != 1) throw std::domain_error("half-integral Frobenius weight has no rational value");
    long e = a.get_num().get_si();
    Rational out = 1;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) out *= q;
    return e < 0 ? Rational(1 / out) : out;
}

std::string factor_text(int q, const Rational& a, long m) {
    std::string coef;
    if (a == 0) {
        coef = "";
    } else if (a.get_den() == 1) {
        coef = to_string(q_power(q, a));
    } else {
        coef = std::to_string(q) + "^(" + to_string(a) + ")";
    }
    return "(1 - " + coef + "T)^" + std::to_string(m);
}

}  // namespace

void FactoredRational::multiply(const Rational& a, long m) {
    if (m == 0) return;
    Rational key = a;
    key.canonicalize();  // mpq_class(2, 2) is not reduced on construction
    long& slot = factors[key];
    slot += m;
    if (slot == 0) factors.erase(a);
}

FactoredRational FactoredRational::inverse() const {
    FactoredRational out;
    out.q = q;
    for (const auto& [a, m] : factors) out.factors[a] = -m;
    return out;
}

FactoredRational FactoredRational::operator*(const FactoredRational& o) const {
    if (q != o.q && !factors.empty() && !o.factors.empty()) throw std::invalid_argument("factors over different q");
    FactoredRational out = *this;
    if (out.q == 0) out.q = o.q;
    for (const auto& [a, m] : o.factors) out.multiply(a, m);
    return out;
}

long FactoredRational::numerator_degree() const {
    long d = 0;
    for (const auto& [a, m] : factors)
        if (m > 0) d += m;
    return d;
}

long FactoredRational::denominator_degree() const {
    long d = 0;
    for (const auto& [a, m] : factors)
        if (m < 0) d -= m;
    return d;
}

std::string FactoredRational::to_string() const {
    std::string num, den;
    for (const auto& [a, m] : factors) {
        std::string& side = m > 0 ? num : den;
        if (!side.empty()) side += " ";
        side += factor_text(q, a, m > 0 ? m : -m);
    }
    if (num.empty()) num = "1";
    if (den.empty()) return num;
    return num + " / (" + den + ")";
}

Json FactoredRational::to_json() const {
    Json fs = Json::array();
    long sign_exponent = 0;
    for (const auto& [a, m] : factors) {
        Json ja = a.get_den() == 1 ? Json(a.get_num().get_si()) : Json(purity::to_string(a));
        fs.push_back({{"a", ja}, {"multiplicity", m}});
        sign_exponent += m;
    }
    return {{"q", q}, {"scalar", "1"}, {"factors", fs}, {"sign_exponent", sign_exponent}, {"text", to_string()}};
}

Rational FactoredRational::evaluate(const Rational& t) const {
    Rational out = 1;
    for (const auto& [a, m] : factors) {
        Rational f = 1 - q_power(q, a) * t;
        if (f == 0) {
            if (m < 0) throw std::domain_error("pole at T = " + purity::to_string(t));
            return 0;
        }
        for (long i = 0; i < (m < 0 ? -m : m); ++i) out = m > 0 ? Rational(out * f) : Rational(out / f);
    }
    return out;
}

FactoredRational l_factor(const SpectralPage& page, const E2Page& e2, int w) {
    FactoredRational out;
    out.q = page.q;
    for (const auto& [j, d] : inertia_invariants(page, e2, w)) out.multiply(Rational(j, 2), -long(d));
    return out;
}

FactoredRational zeta_function(const SpectralPage& page, const E2Page& e2) {
    FactoredRational out;
    out.q = page.q;
    for (int w = 0; w <= 2 * page.n; ++w) {
        FactoredRational l = l_factor(page, e2, w);
        out = out * (w % 2 == 0 ? l : l.inverse());
    }
    return out;
}

std::size_t mu_from_e2(const SpectralPage& page, const E2Page& e2, int d) {
    auto inv = inertia_invariants(page, e2, d);
    auto it = inv.find(0);
    return it == inv.end() ? 0 : it->second;
}

FactoredRational theorem_shape(int q, int d, long mu) {
    FactoredRational out;
    out.q = q;
    out.multiply(0, d % 2 == 1 ? mu : -mu);
    for (int k = 0; k <= d; ++k) out.multiply(k, -1);
    return out;
}

}  // namespace purity
