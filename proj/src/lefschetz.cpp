#include "purity/lefschetz.hpp"

#include <stdexcept>

namespace purity {

RationalMatrix LefschetzContext::power(int k, int e) const {
    RationalMatrix m = RationalMatrix::identity(ring->rank(k));
    for (int i = 0; i < e; ++i) {
        if (k + i >= ring->n) return RationalMatrix(ring->rank(k + e), ring->rank(k));
        m = step[k + i] * m;
    }
    return m;
}

LefschetzContext make_context(RingPtr ring, const RationalVector& L) {
    if (L.size() != ring->rank(1)) throw std::invalid_argument("Lefschetz class has the wrong length");
    LefschetzContext ctx;
    ctx.ring = ring;
    ctx.L = L;
    for (int k = 0; k < ring->n; ++k) ctx.step.push_back(ring->multiplication_matrix(1, L, k));
    return ctx;
}

LefschetzContext make_context(RingPtr ring, const DivisorClass& L) {
    if (ring->variety.kind == VarietyKind::DisjointUnion) throw std::invalid_argument("divisor class on a disjoint union");
    return make_context(ring, divisor_coords(*ring, L));
}

HardLefschetzReport check_hard_lefschetz(const LefschetzContext& ctx) {
    HardLefschetzReport rep;
    const int n = ctx.ring->n;
    for (int k = 0; 2 * k <= n; ++k) {
        HardLefschetzDegree d;
        d.k = k;
        d.exponent = n - 2 * k;
        d.dim_source = ctx.ring->rank(k);
        d.dim_target = ctx.ring->rank(n - k);
        d.rank = rank(ctx.power(k, d.exponent));
        d.ok = d.rank == d.dim_source && d.rank == d.dim_target;
        rep.ok = rep.ok && d.ok;
        rep.degrees.push_back(d);
    }
    return rep;
}

RationalMatrix primitive_basis(const LefschetzContext& ctx, int k) {
    const int n = ctx.ring->n;
    if (2 * k > n) throw std::invalid_argument("primitive part above the middle degree");
    RationalMatrix m = ctx.power(k, n - 2 * k + 1);
    if (m.rows() == 0) return RationalMatrix::identity(ctx.ring->rank(k));
    return kernel_basis(m, ctx.ring->rank(k));
}

RationalMatrix lefschetz_form(const LefschetzContext& ctx, int k) {
    const int n = ctx.ring->n;
    if (2 * k > n) throw std::invalid_argument("form above the middle degree");
    RationalMatrix g = ctx.power(k, n - 2 * k).transpose() * ctx.ring->pairing[n - k];
    return k % 2 ? g.scaled(-1) : g;
}

RationalMatrix primitive_gram(const LefschetzContext& ctx, int k) {
    RationalMatrix b = primitive_basis(ctx, k);
    return b.transpose() * lefschetz_form(ctx, k) * b;
}

HodgeReport check_hodge_standard(const LefschetzContext& ctx) {
    HodgeReport rep;
    rep.hard_lefschetz = check_hard_lefschetz(ctx).ok;
    if (!rep.hard_lefschetz) {
        rep.error = "hard Lefschetz fails";
        return rep;
    }
    rep.ok = true;
    const int n = ctx.ring->n;
    std::vector<std::size_t> pdim;
    for (int k = 0; 2 * k <= n; ++k) {
        SignatureReport s;
        s.k = k;
        RationalMatrix g = primitive_gram(ctx, k);
        s.primitive_dim = g.rows();
        pdim.push_back(s.primitive_dim);
        s.primitive_inertia = symmetric_signature(g);
        s.positive_definite = is_positive_definite(g);
        s.form_inertia = symmetric_signature(lefschetz_form(ctx, k));
        for (int i = 0; i <= k; ++i) s.expected_signature += (i % 2 ? -1 : 1) * long(pdim[k - i]);
        s.signature_ok = s.form_inertia.signature() == s.expected_signature && s.form_inertia.zero == 0;
        rep.ok = rep.ok && s.positive_definite && s.signature_ok;
        rep.degrees.push_back(s);
    }
    return rep;
}

DivisorClass normalize_divisor(int n, const FieldSpec& f, const DivisorClass& d) {
    DivisorClass out;
    for (const auto& [g, c] : d.coeffs) {
        if (g.factor != 0) throw std::invalid_argument("divisor on a product factor");
        if (g.kind == GenKind::Exceptional && g.sub.dim() == n - 1) {
            for (const auto& [x, cx] : hyperplane_relation(n, f, g.sub)) out.add(x, c * cx);
        } else {
            out.add(g, c);
        }
    }
    return out;
}

InvariantDivisorForm invariant_form(int n, const FieldSpec& f, const DivisorClass& d) {
    DivisorClass nd = normalize_divisor(n, f, d);
    InvariantDivisorForm form;
    form.n = n;
    form.a.assign(n, Rational(0));
    if (auto it = nd.coeffs.find(Generator::hyperplane()); it != nd.coeffs.end()) form.alpha = it->second;
    for (int k = 0; k <= n - 2; ++k) {
        auto level = enumerate_subspaces(n, f, k);
        Rational first = 0;
        if (auto it = nd.coeffs.find(Generator::exceptional(level[0])); it != nd.coeffs.end()) first = it->second;
        for (const auto& v : level) {
            Rational c = 0;
            if (auto it = nd.coeffs.find(Generator::exceptional(v)); it != nd.coeffs.end()) c = it->second;
            if (c != first)
                throw std::invalid_argument("divisor is not invariant: coefficients differ on dimension " +
                                            std::to_string(k));
        }
        form.a[k] = first;
    }
    return form;
}

PositivityReport positivity(const InvariantDivisorForm& form, int q) {
    PositivityReport rep;
    const int n = form.n;
    rep.alpha_positive = sgn(form.alpha) > 0;
    rep.positive = rep.alpha_positive;
    const Rational total(mpz_class(std::to_string(point_count(n, q))));
    for (int d = 0; d < n; ++d) {
        Rational a = d < int(form.a.size()) ? form.a[d] : Rational(0);
        Rational m = a + form.alpha * Rational(mpz_class(std::to_string(point_count(n - d - 1, q)))) / total;
        if (sgn(m) <= 0) rep.positive = false;
        rep.margins.push_back(m);
    }
    return rep;
}

bool is_positive(const InvariantDivisorForm& form, int q) { return positivity(form, q).positive; }

std::vector<SweepRow> hodge_sweep(RingPtr ring, const RationalVector& L0, const RationalVector& L1, int steps) {
    if (steps < 2) throw std::invalid_argument("sweep needs at least two steps");
    std::vector<SweepRow> rows;
    for (int i = 0; i < steps; ++i) {
        SweepRow r;
        r.t = Rational(i, steps - 1);
        r.t.canonicalize();
        RationalVector L(L0.size());
        for (std::size_t j = 0; j < L.size(); ++j) L[j] = (1 - r.t) * L0[j] + r.t * L1[j];
        auto ctx = make_context(ring, L);
        auto hodge = check_hodge_standard(ctx);
        r.hard_lefschetz = hodge.hard_lefschetz;
        r.hodge = hodge.ok;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace purity
