#pragma once

#include "purity/intersection.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace purity {

struct ResourceLimits {
    int max_dim = 4;
    int max_q = 16;
    double max_work = 2.0e6;  // intersection numbers needed to select a basis
    // PURITY_MAX_DIM overrides max_dim.
    static ResourceLimits from_env();
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical ring N^*(X) with Q coefficients: basis monomials per degree, the intersection
// pairing, and the product structure.
class GradedRing {
public:
    VarietySpec variety;
    int n = 0;
    std::vector<std::vector<Monomial>> basis;
    std::vector<RationalMatrix> pairing;  // pairing[k](i, j) = basis[k][i] . basis[n-k][j]
    std::vector<RationalMatrix> dual;     // inverse of pairing[k]^T
    // product[j][k], for j + k <= n: column i * rank(k) + l holds basis[j][i] * basis[k][l]
    std::vector<std::vector<RationalMatrix>> product;
    std::shared_ptr<IntersectionEngine> engine;

    std::size_t rank(int k) const { return k < 0 || k > n ? 0 : basis[k].size(); }
    std::vector<std::size_t> ranks() const;

    // Coordinates of a homogeneous polynomial of degree k, from its intersection numbers.
    RationalVector coords(const Polynomial& p, int k) const;
    RationalVector coords(const Monomial& m) const;
    RationalVector multiply(int j, const RationalVector& x, int k, const RationalVector& y) const;
    // Matrix of multiplication by x in N^j, as a map N^k -> N^{j+k}.
    RationalMatrix multiplication_matrix(int j, const RationalVector& x, int k) const;
    Rational pair(int k, const RationalVector& x, const RationalVector& y) const;
    RationalVector unit() const;
};

using RingPtr = std::shared_ptr<const GradedRing>;

RingPtr build_ring(const VarietySpec& spec, const ResourceLimits& limits = ResourceLimits::from_env(),
                   std::shared_ptr<IntersectionEngine> engine = default_engine());
// Ring of an atomic variety computed from intersection numbers alone.
RingPtr build_atomic_ring(const VarietySpec& spec, const ResourceLimits& limits,
                          std::shared_ptr<IntersectionEngine> engine);
RingPtr kunneth(const GradedRing& a, const GradedRing& b);
RingPtr direct_sum(const std::vector<RingPtr>& pieces);
// Same ring built directly from the engine on a product or union, without factor tables.
RingPtr build_ring_direct(const VarietySpec& spec, std::shared_ptr<IntersectionEngine> engine);

void check_limits(const VarietySpec& spec, const ResourceLimits& limits);

// Betti numbers b_{2k}, k = 0..dim, from the blow-up recursion (odd ones vanish).
std::vector<std::uint64_t> betti_numbers(const VarietySpec& spec);

struct DivisorRestriction {
    LinearSubvariety center;
    RingPtr target;                   // B^{dim V} x B^{n - dim V - 1}
    std::vector<RationalMatrix> maps; // maps[k]: N^k(B^n) -> N^k(D_V), k = 0..n-1
};

DivisorRestriction restrict_to_divisor(const GradedRing& ring, const LinearSubvariety& v);

struct InjectivityReport {
    std::vector<std::size_t> stacked_rank;  // per degree k < n
    std::vector<std::size_t> dims;
    bool ok = true;
};

// Stacks the restrictions to every D_V and checks injectivity in degrees below n.
InjectivityReport check_restriction_injective(const GradedRing& ring);

RationalVector divisor_coords(const GradedRing& ring, const DivisorClass& d, int piece = 0);

}  // namespace purity
