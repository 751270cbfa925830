#pragma once

#include "purity/graded_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace purity {

// Degree conventions: Chow degree k holds cohomological degree 2k.
struct LefschetzContext {
    RingPtr ring;
    RationalVector L;                  // class in N^1
    std::vector<RationalMatrix> step;  // step[k]: N^k -> N^{k+1}, multiplication by L

    RationalMatrix power(int k, int e) const;  // L^e : N^k -> N^{k+e}
};

LefschetzContext make_context(RingPtr ring, const RationalVector& L);
LefschetzContext make_context(RingPtr ring, const DivisorClass& L);

struct HardLefschetzDegree {
    int k = 0;
    int exponent = 0;
    std::size_t dim_source = 0, dim_target = 0, rank = 0;
    bool ok = false;
};

struct HardLefschetzReport {
    bool ok = true;
    std::vector<HardLefschetzDegree> degrees;
};

// L^{n-2k}: N^k -> N^{n-k} bijective for 2k <= n.
HardLefschetzReport check_hard_lefschetz(const LefschetzContext& ctx);

// Columns span ker(L^{n-2k+1}) in N^k, 2k <= n.
RationalMatrix primitive_basis(const LefschetzContext& ctx, int k);
// (-1)^k (L^{n-2k} x) . y on N^k, 2k <= n.
RationalMatrix lefschetz_form(const LefschetzContext& ctx, int k);
RationalMatrix primitive_gram(const LefschetzContext& ctx, int k);

struct SignatureReport {
    int k = 0;
    std::size_t primitive_dim = 0;
    Inertia primitive_inertia;
    bool positive_definite = false;
    Inertia form_inertia;          // of lefschetz_form on all of N^k
    long expected_signature = 0;   // sum_i (-1)^i dim P^{k-i}
    bool signature_ok = false;
};

struct HodgeReport {
    bool ok = false;
    bool hard_lefschetz = false;
    std::vector<SignatureReport> degrees;
    std::string error;
};

HodgeReport check_hodge_standard(const LefschetzContext& ctx);

struct InvariantDivisorForm {
    int n = 0;
    Rational alpha;
    std::vector<Rational> a;  // a[0..n-1], a[n-1] = 0 once normalized
};

// Throws std::invalid_argument when the coefficients are not constant on each level.
InvariantDivisorForm invariant_form(int n, const FieldSpec& f, const DivisorClass& d);
DivisorClass normalize_divisor(int n, const FieldSpec& f, const DivisorClass& d);

struct PositivityReport {
    bool positive = false;
    bool alpha_positive = false;
    std::vector<Rational> margins;  // a_d + alpha |P^{n-d-1}| / |P^n|
};

PositivityReport positivity(const InvariantDivisorForm& form, int q);
bool is_positive(const InvariantDivisorForm& form, int q);

struct SweepRow {
    Rational t;
    bool hard_lefschetz = false;
    bool hodge = false;
};

// Checks (1-t) L0 + t L1 on the grid t = i/(steps-1).
std::vector<SweepRow> hodge_sweep(RingPtr ring, const RationalVector& L0, const RationalVector& L1, int steps);

}  // namespace purity
