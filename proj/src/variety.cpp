#include "purity/variety.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace purity {

VarietySpec VarietySpec::projective(int n) {
    if (n < 0) throw std::invalid_argument("negative dimension");
    VarietySpec v;
    v.kind = VarietyKind::Projective;
    v.n = n;
    return v;
}

VarietySpec VarietySpec::blown_up(int n, const FieldSpec& f) {
    if (n < 0 || n > kMaxAmbient) throw std::invalid_argument("blow-up dimension out of range");
    VarietySpec v;
    v.kind = VarietyKind::BlownUp;
    v.n = n;
    v.field = f;
    return v;
}

VarietySpec VarietySpec::blown_up_points(const FieldSpec& f, std::vector<LinearSubvariety> pts) {
    for (const auto& p : pts)
        if (p.ambient() != 2 || p.dim() != 0) throw std::invalid_argument("blown-up centers must be points of P^2");
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) throw std::invalid_argument("repeated blow-up center");
    VarietySpec v;
    v.kind = VarietyKind::BlownUpPoints;
    v.n = 2;
    v.field = f;
    v.points = std::move(pts);
    return v;
}

VarietySpec VarietySpec::product(const std::vector<VarietySpec>& factors) {
    VarietySpec v;
    v.kind = VarietyKind::Product;
    for (const auto& f : factors) {
        if (f.kind == VarietyKind::DisjointUnion) throw std::invalid_argument("product with a disjoint union");
        if (f.kind == VarietyKind::Product)
            v.parts.insert(v.parts.end(), f.parts.begin(), f.parts.end());
        else
            v.parts.push_back(f);
    }
    if (v.parts.empty()) throw std::invalid_argument("empty product");
    if (v.parts.size() == 1) return v.parts[0];
    v.n = v.dimension();
    return v;
}

VarietySpec VarietySpec::disjoint_union(const std::vector<VarietySpec>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("empty disjoint union");
    VarietySpec v;
    v.kind = VarietyKind::DisjointUnion;
    for (const auto& p : pieces) {
        if (p.kind == VarietyKind::DisjointUnion)
            v.parts.insert(v.parts.end(), p.parts.begin(), p.parts.end());
        else
            v.parts.push_back(p);
    }
    if (v.parts.size() == 1) return v.parts[0];
    int d = v.parts[0].dimension();
    for (const auto& p : v.parts)
        if (p.dimension() != d) throw std::invalid_argument("disjoint union must be equidimensional");
    v.n = d;
    return v;
}

bool VarietySpec::atomic() const {
    return kind == VarietyKind::Projective || kind == VarietyKind::BlownUp || kind == VarietyKind::BlownUpPoints;
}

int VarietySpec::dimension() const {
    switch (kind) {
        case VarietyKind::Projective:
        case VarietyKind::BlownUp:
        case VarietyKind::BlownUpPoints:
            return n;
        case VarietyKind::Product: {
            int d = 0;
            for (const auto& p : parts) d += p.dimension();
            return d;
        }
        case VarietyKind::DisjointUnion:
            return parts.at(0).dimension();
    }
    return 0;
}

int VarietySpec::piece_count() const { return kind == VarietyKind::DisjointUnion ? int(parts.size()) : 1; }

const VarietySpec& VarietySpec::piece(int i) const {
    if (kind == VarietyKind::DisjointUnion) return parts.at(i);
    if (i != 0) throw std::out_of_range("piece index");
    return *this;
}

int VarietySpec::factor_count() const {
    if (kind == VarietyKind::DisjointUnion) throw std::logic_error("factor count of a disjoint union");
    return kind == VarietyKind::Product ? int(parts.size()) : 1;
}

const VarietySpec& VarietySpec::factor(int i) const {
    if (kind == VarietyKind::Product) return parts.at(i);
    if (i != 0) throw std::out_of_range("factor index");
    return *this;
}

std::string VarietySpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case VarietyKind::Projective:
            if (n == 0)
                os << "pt";
            else
                os << "P^" << n;
            break;
        case VarietyKind::BlownUp:
            os << "B^" << n << "(F_" << field.q() << ")";
            break;
        case VarietyKind::BlownUpPoints:
            os << "Bl_" << points.size() << "P^2(F_" << field.q() << ")";
            break;
        case VarietyKind::Product:
            for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " x " : "") << parts[i].describe();
            break;
        case VarietyKind::DisjointUnion:
            for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " + " : "") << parts[i].describe();
            break;
    }
    return os.str();
}

std::string VarietySpec::key() const {
    std::ostringstream os;
    switch (kind) {
        case VarietyKind::Projective:
            os << "P" << n;
            break;
        case VarietyKind::BlownUp:
            os << "B" << n << "/" << field.p() << "," << field.e();
            for (int c : field.modulus()) os << ":" << c;
            break;
        case VarietyKind::BlownUpPoints:
            os << "Bl/" << field.p() << "," << field.e();
            for (int c : field.modulus()) os << ":" << c;
            for (const auto& p : points) os << p.describe();
            break;
        case VarietyKind::Product:
            os << "(";
            for (const auto& p : parts) os << p.key() << "*";
            os << ")";
            break;
        case VarietyKind::DisjointUnion:
            os << "{";
            for (const auto& p : parts) os << p.key() << "+";
            os << "}";
            break;
    }
    return os.str();
}

std::string Generator::describe() const {
    std::ostringstream os;
    if (kind == GenKind::Hyperplane)
        os << "h";
    else
        os << "e" << sub.describe();
    if (factor != 0) os << "@" << int(factor);
    return os.str();
}

Monomial Monomial::times(const Monomial& o) const {
    if (piece != o.piece) throw std::invalid_argument("product of monomials on different pieces");
    Monomial m{piece, gens};
    m.gens.insert(m.gens.end(), o.gens.begin(), o.gens.end());
    std::sort(m.gens.begin(), m.gens.end());
    return m;
}

std::string Monomial::describe() const {
    if (gens.empty()) return piece ? "1#" + std::to_string(piece) : "1";
    std::string s;
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "*" : "") + gens[i].describe();
    if (piece) s += "#" + std::to_string(piece);
    return s;
}

void add_term(Polynomial& p, const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) p.erase(it);
    }
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b)
            if (ma.piece == mb.piece) add_term(out, ma.times(mb), ca * cb);
    return out;
}

DivisorClass& DivisorClass::add(const Generator& g, const Rational& c) {
    auto& x = coeffs[g];
    x += c;
    if (sgn(x) == 0) coeffs.erase(g);
    return *this;
}

Polynomial DivisorClass::as_polynomial(int piece) const {
    Polynomial p;
    for (const auto& [g, c] : coeffs) add_term(p, Monomial{piece, {g}}, c);
    return p;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    DivisorClass out(*this);
    for (const auto& [g, c] : o.coeffs) out.add(g, c);
    return out;
}

DivisorClass DivisorClass::scaled(const Rational& s) const {
    DivisorClass out;
    for (const auto& [g, c] : coeffs) out.add(g, c * s);
    return out;
}

std::vector<std::pair<Generator, Rational>> hyperplane_relation(int n, const FieldSpec& f, const LinearSubvariety& h) {
    if (h.dim() != n - 1) throw std::invalid_argument("hyperplane relation needs a hyperplane");
    std::vector<std::pair<Generator, Rational>> out;
    out.push_back({Generator::hyperplane(), Rational(1)});
    for (int d = 0; d < n - 1; ++d)
        for (const auto& w : enumerate_subspaces(n, f, d))
            if (contains(f, h, w)) out.push_back({Generator::exceptional(w), Rational(-1)});
    return out;
}

DivisorClass invariant_divisor(int n, const FieldSpec& f, const Rational& alpha, const std::vector<Rational>& a) {
    DivisorClass d;
    d.add(Generator::hyperplane(), alpha);
    for (int k = 0; k < int(a.size()) && k < n; ++k)
        for (const auto& v : enumerate_subspaces(n, f, k)) d.add(Generator::exceptional(v), a[k]);
    return d;
}

DivisorClass omega_class(int n, const FieldSpec& f) {
    std::vector<Rational> a;
    for (int k = 0; k < n; ++k) a.push_back(Rational(n - k));
    return invariant_divisor(n, f, Rational(-(n + 1)), a);
}

}  // namespace purity
