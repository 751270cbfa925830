#pragma once

#include "purity/weight_ss.hpp"

#include <map>
#include <string>

namespace purity {

// Product of factors (1 - q^a T)^m in T = q^{-s}; m > 0 sits in the numerator.
// Canonical: sorted by a, zero multiplicities dropped, so numerator and denominator are coprime.
struct FactoredRational {
    int q = 0;
    std::map<Rational, long> factors;  // a -> m; a = weight tag / 2

    void multiply(const Rational& a, long m);
    FactoredRational inverse() const;
    FactoredRational operator*(const FactoredRational& o) const;
    bool operator==(const FactoredRational& o) const { return q == o.q && factors == o.factors; }

    long numerator_degree() const;
    long denominator_degree() const;
    std::string to_string() const;  // "1 / ((1 - T)^1 (1 - 2T)^1)"
    Json to_json() const;
    // Exact value at a rational T; throws std::domain_error at a pole.
    Rational evaluate(const Rational& t) const;
};

// det(1 - Fr T ; inertia invariants)^{-1} in degree w. Throws SpectralError without purity.
FactoredRational l_factor(const SpectralPage& page, const E2Page& e2, int w);
// Alternating product of the L-factors over 0 <= w <= 2n.
FactoredRational zeta_function(const SpectralPage& page, const E2Page& e2);
// Weight-0 inertia invariants in degree d.
std::size_t mu_from_e2(const SpectralPage& page, const E2Page& e2, int d);

// (1 - T)^{mu (-1)^{d+1}} prod_{k=0}^{d} (1 - q^k T)^{-1}
FactoredRational theorem_shape(int q, int d, long mu);

}  // namespace purity
