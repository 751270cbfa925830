#pragma once

#include "purity/exact_linalg.hpp"
#include "purity/finite_geometry.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace purity {

// Atomic kinds are Projective, BlownUp (P^n blown up along every proper rational linear
// subvariety, dimension by dimension) and BlownUpPoints (P^2 blown up at given rational points).
// Product factors must be atomic; DisjointUnion pieces are atomic or products.
enum class VarietyKind { Projective, BlownUp, BlownUpPoints, Product, DisjointUnion };

struct VarietySpec {
    VarietyKind kind = VarietyKind::Projective;
    int n = 0;
    FieldSpec field;
    std::vector<LinearSubvariety> points;  // BlownUpPoints, subvarieties of P^2
    std::vector<VarietySpec> parts;        // Product factors or DisjointUnion pieces

    static VarietySpec projective(int n);
    static VarietySpec point() { return projective(0); }
    static VarietySpec blown_up(int n, const FieldSpec& f);
    static VarietySpec blown_up_points(const FieldSpec& f, std::vector<LinearSubvariety> pts);
    static VarietySpec product(const std::vector<VarietySpec>& factors);  // flattens nested products
    static VarietySpec disjoint_union(const std::vector<VarietySpec>& pieces);

    bool atomic() const;
    int dimension() const;  // disjoint unions must be equidimensional
    int piece_count() const;
    const VarietySpec& piece(int i) const;  // the variety itself when not a disjoint union
    int factor_count() const;              // within a non-union variety
    const VarietySpec& factor(int i) const;
    std::string describe() const;
    std::string key() const;  // exact identity, used for caches

    bool operator==(const VarietySpec& o) const { return key() == o.key(); }
};

enum class GenKind : std::uint8_t { Hyperplane = 0, Exceptional = 1 };

// Hyperplane class h of a factor, or the class e_V attached to a linear subvariety V of
// that factor. Exceptional of a hyperplane means its strict transform D_H.
struct Generator {
    std::int8_t factor = 0;
    GenKind kind = GenKind::Hyperplane;
    LinearSubvariety sub;

    static Generator hyperplane(int factor = 0) { return {std::int8_t(factor), GenKind::Hyperplane, {}}; }
    static Generator exceptional(const LinearSubvariety& v, int factor = 0) {
        return {std::int8_t(factor), GenKind::Exceptional, v};
    }

    auto operator<=>(const Generator&) const = default;
    bool operator==(const Generator&) const = default;
    std::string describe() const;
};

struct Monomial {
    int piece = 0;
    std::vector<Generator> gens;  // sorted

    int degree() const { return int(gens.size()); }
    Monomial times(const Monomial& o) const;  // same piece required
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
    std::string describe() const;
};

using Polynomial = std::map<Monomial, Rational>;

void add_term(Polynomial& p, const Monomial& m, const Rational& c);
Polynomial multiply(const Polynomial& a, const Polynomial& b);

// Real (here rational) divisor as a combination of generators on a non-union variety.
struct DivisorClass {
    std::map<Generator, Rational> coeffs;

    DivisorClass& add(const Generator& g, const Rational& c);
    Polynomial as_polynomial(int piece = 0) const;
    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass scaled(const Rational& s) const;
};

// D_H = h - sum of e_W over proper subvarieties W of H, on BlownUp(n, f).
std::vector<std::pair<Generator, Rational>> hyperplane_relation(int n, const FieldSpec& f, const LinearSubvariety& h);

// -(n+1) h + sum_{k<n} (n-k) D_k on BlownUp(n, f), with D_k the sum of e_V over dim V = k.
DivisorClass omega_class(int n, const FieldSpec& f);
// alpha h + sum_k a_k D_k with a given for levels 0..a.size()-1.
DivisorClass invariant_divisor(int n, const FieldSpec& f, const Rational& alpha, const std::vector<Rational>& a);

}  // namespace purity
