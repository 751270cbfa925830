#include "purity/graded_ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

namespace purity {

ResourceLimits ResourceLimits::from_env() {
    ResourceLimits l;
    if (const char* s = std::getenv("PURITY_MAX_DIM")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && v > 0 && v <= kMaxAmbient) l.max_dim = int(v);
    }
    return l;
}

std::vector<std::size_t> GradedRing::ranks() const {
    std::vector<std::size_t> out;
    for (int k = 0; k <= n; ++k) out.push_back(rank(k));
    return out;
}

RationalVector GradedRing::coords(const Polynomial& p, int k) const {
    if (k < 0 || k > n) throw std::invalid_argument("degree out of range");
    const auto& dualb = basis[n - k];
    RationalVector v(dualb.size());
    for (const auto& [m, c] : p) {
        if (m.degree() != k) throw std::invalid_argument("polynomial is not homogeneous of the requested degree");
        for (std::size_t i = 0; i < dualb.size(); ++i)
            if (dualb[i].piece == m.piece) v[i] += c * engine->number(variety, m.times(dualb[i]));
    }
    return dual[k] * v;
}

RationalVector GradedRing::coords(const Monomial& m) const {
    Polynomial p;
    add_term(p, m, Rational(1));
    return coords(p, m.degree());
}

RationalVector GradedRing::multiply(int j, const RationalVector& x, int k, const RationalVector& y) const {
    if (j + k > n) return {};
    const auto& t = product[j][k];
    RationalVector out(rank(j + k));
    const std::size_t rk = rank(k);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (std::size_t b = 0; b < y.size(); ++b) {
            if (sgn(y[b]) == 0) continue;
            Rational c = x[a] * y[b];
            for (std::size_t r = 0; r < out.size(); ++r)
                if (sgn(t(r, a * rk + b)) != 0) out[r] += c * t(r, a * rk + b);
        }
    }
    return out;
}

RationalMatrix GradedRing::multiplication_matrix(int j, const RationalVector& x, int k) const {
    RationalMatrix m(rank(j + k), rank(k));
    if (j + k > n) return m;
    const auto& t = product[j][k];
    const std::size_t rk = rank(k);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (sgn(x[a]) == 0) continue;
        for (std::size_t b = 0; b < rk; ++b)
            for (std::size_t r = 0; r < m.rows(); ++r)
                if (sgn(t(r, a * rk + b)) != 0) m(r, b) += x[a] * t(r, a * rk + b);
    }
    return m;
}

Rational GradedRing::pair(int k, const RationalVector& x, const RationalVector& y) const {
    Rational s = 0;
    const auto& g = pairing[k];
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (sgn(y[j]) != 0) s += x[i] * g(i, j) * y[j];
    }
    return s;
}

RationalVector GradedRing::unit() const {
    RationalVector u(rank(0));
    for (std::size_t i = 0; i < u.size(); ++i)
        if (basis[0][i].gens.empty()) u[i] = 1;
    return u;
}

namespace {

double binom(double a, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * (a - i) / (i + 1);
    return r;
}

std::vector<Generator> divisor_generators(const VarietySpec& a) {
    std::vector<Generator> g;
    if (a.n == 0) return g;
    g.push_back(Generator::hyperplane());
    if (a.kind == VarietyKind::BlownUp) {
        for (const auto& v : enumerate_all_proper(a.n, a.field))
            if (v.dim() <= a.n - 2) g.push_back(Generator::exceptional(v));
    } else if (a.kind == VarietyKind::BlownUpPoints) {
        for (const auto& p : a.points) g.push_back(Generator::exceptional(p));
    }
    return g;
}

// Multisets of size k from the generators, graded-lex order.
std::vector<Monomial> candidates(const std::vector<Generator>& gens, int k) {
    std::vector<Monomial> out;
    if (k == 0) return {Monomial{}};
    if (gens.empty()) return out;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        Monomial m;
        for (auto i : idx) m.gens.push_back(gens[i]);
        out.push_back(std::move(m));
        int p = k - 1;
        while (p >= 0 && idx[p] == gens.size() - 1) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[p];
    }
    return out;
}

RationalMatrix numbers(IntersectionEngine& e, const VarietySpec& x, const std::vector<Monomial>& rows,
                       const std::vector<Monomial>& cols) {
    RationalMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (rows[i].piece == cols[j].piece) m(i, j) = e.number(x, rows[i].times(cols[j]));
    return m;
}

void fill_products(GradedRing& r) {
    r.product.assign(r.n + 1, std::vector<RationalMatrix>(r.n + 1));
    for (int j = 0; j <= r.n; ++j)
        for (int k = j; j + k <= r.n; ++k) {
            const int s = j + k;
            RationalMatrix t(r.rank(s), r.rank(j) * r.rank(k));
            for (std::size_t a = 0; a < r.rank(j); ++a)
                for (std::size_t b = 0; b < r.rank(k); ++b) {
                    const auto& ma = r.basis[j][a];
                    const auto& mb = r.basis[k][b];
                    if (ma.piece != mb.piece) continue;
                    Monomial m = ma.times(mb);
                    RationalVector v(r.rank(r.n - s));
                    for (std::size_t i = 0; i < v.size(); ++i)
                        if (r.basis[r.n - s][i].piece == m.piece)
                            v[i] = r.engine->number(r.variety, m.times(r.basis[r.n - s][i]));
                    RationalVector c = r.dual[s] * v;
                    for (std::size_t i = 0; i < c.size(); ++i) t(i, a * r.rank(k) + b) = c[i];
                }
            r.product[j][k] = t;
            if (j != k) {
                RationalMatrix u(r.rank(s), r.rank(k) * r.rank(j));
                for (std::size_t a = 0; a < r.rank(j); ++a)
                    for (std::size_t b = 0; b < r.rank(k); ++b)
                        for (std::size_t i = 0; i < r.rank(s); ++i) u(i, b * r.rank(j) + a) = t(i, a * r.rank(k) + b);
                r.product[k][j] = u;
            }
        }
}

void finish_duals(GradedRing& r) {
    r.dual.clear();
    for (int k = 0; k <= r.n; ++k) {
        if (r.pairing[k].rows() != r.pairing[k].cols())
            throw std::runtime_error("pairing is not square in degree " + std::to_string(k));
        r.dual.push_back(inverse(r.pairing[k].transpose()));
    }
}

std::mutex g_ring_cache_mu;
std::map<std::string, RingPtr> g_ring_cache;

}  // namespace

void check_limits(const VarietySpec& spec, const ResourceLimits& limits) {
    switch (spec.kind) {
        case VarietyKind::Product:
        case VarietyKind::DisjointUnion:
            for (const auto& p : spec.parts) check_limits(p, limits);
            if (spec.dimension() > limits.max_dim + 2)
                throw ResourceError("variety dimension " + std::to_string(spec.dimension()) + " exceeds the limit");
            return;
        case VarietyKind::Projective:
            return;
        case VarietyKind::BlownUpPoints:
            if (spec.field.q() > limits.max_q) throw ResourceError("field order exceeds the limit");
            return;
        case VarietyKind::BlownUp: {
            if (spec.n > limits.max_dim)
                throw ResourceError("dimension " + std::to_string(spec.n) + " exceeds the limit " +
                                    std::to_string(limits.max_dim));
            if (spec.field.q() > limits.max_q)
                throw ResourceError("field order " + std::to_string(spec.field.q()) + " exceeds the limit " +
                                    std::to_string(limits.max_q));
            double g = 1;
            for (int d = 0; d <= spec.n - 2; ++d) g += double(gaussian_binomial(spec.n + 1, d + 1, spec.field.q()));
            double work = 0;
            for (int k = 0; 2 * k <= spec.n; ++k) work = std::max(work, binom(g + k - 1, k) * binom(g + spec.n - k - 1, spec.n - k));
            if (work > limits.max_work)
                throw ResourceError("basis selection for " + spec.describe() + " needs about " +
                                    std::to_string(std::llround(work)) + " intersection numbers, above the limit");
            return;
        }
    }
}

RingPtr build_atomic_ring(const VarietySpec& spec, const ResourceLimits& limits,
                          std::shared_ptr<IntersectionEngine> engine) {
    if (!spec.atomic()) throw std::invalid_argument("atomic ring requested for a composite variety");
    check_limits(spec, limits);
    auto r = std::make_shared<GradedRing>();
    r->variety = spec;
    r->n = spec.n;
    r->engine = engine;
    const int n = spec.n;
    auto gens = divisor_generators(spec);
    r->basis.assign(n + 1, {});
    r->pairing.assign(n + 1, {});
    std::vector<std::vector<Monomial>> cand(n + 1);
    for (int k = 0; k <= n; ++k) cand[k] = candidates(gens, k);
    for (int k = 0; k <= n; ++k) {
        if (2 * k > n) continue;
        RationalMatrix m = numbers(*engine, spec, cand[k], cand[n - k]);
        for (auto p : pivot_columns(m.transpose())) r->basis[k].push_back(cand[k][p]);
    }
    for (int k = 0; k <= n; ++k) {
        if (2 * k <= n) continue;
        RationalMatrix m = numbers(*engine, spec, cand[k], r->basis[n - k]);
        for (auto p : pivot_columns(m.transpose())) r->basis[k].push_back(cand[k][p]);
    }
    for (int k = 0; k <= n; ++k) r->pairing[k] = numbers(*engine, spec, r->basis[k], r->basis[n - k]);
    auto expected = betti_numbers(spec);
    for (int k = 0; k <= n; ++k)
        if (r->rank(k) != expected[k])
            throw std::runtime_error("numerical rank " + std::to_string(r->rank(k)) + " in degree " + std::to_string(k) +
                                     " disagrees with the Betti number " + std::to_string(expected[k]) + " of " +
                                     spec.describe());
    finish_duals(*r);
    fill_products(*r);
    return r;
}

RingPtr build_ring_direct(const VarietySpec& spec, std::shared_ptr<IntersectionEngine> engine) {
    // Basis from the factor/piece bases, all numbers straight from the engine.
    std::vector<std::vector<Monomial>> basis;
    if (spec.kind == VarietyKind::DisjointUnion) {
        basis.assign(spec.dimension() + 1, {});
        for (int p = 0; p < spec.piece_count(); ++p) {
            auto sub = build_ring_direct(spec.piece(p), engine);
            for (int k = 0; k <= spec.dimension(); ++k)
                for (auto m : sub->basis[k]) {
                    m.piece = p;
                    basis[k].push_back(m);
                }
        }
    } else if (spec.kind == VarietyKind::Product) {
        basis.assign(1, {Monomial{}});
        int dim = 0;
        for (int f = 0; f < spec.factor_count(); ++f) {
            auto sub = build_atomic_ring(spec.factor(f), ResourceLimits::from_env(), engine);
            int nd = dim + sub->n;
            std::vector<std::vector<Monomial>> next(nd + 1);
            for (int k = 0; k <= nd; ++k)
                for (int a = 0; a <= k && a <= dim; ++a) {
                    int b = k - a;
                    if (b > sub->n) continue;
                    for (const auto& x : basis[a])
                        for (auto y : sub->basis[b]) {
                            for (auto& g : y.gens) g.factor = std::int8_t(f);
                            next[k].push_back(x.times(y));
                        }
                }
            basis = std::move(next);
            dim = nd;
        }
    } else {
        return build_atomic_ring(spec, ResourceLimits::from_env(), engine);
    }
    auto r = std::make_shared<GradedRing>();
    r->variety = spec;
    r->n = spec.dimension();
    r->engine = engine;
    r->basis = basis;
    for (int k = 0; k <= r->n; ++k) r->pairing.push_back(numbers(*engine, spec, r->basis[k], r->basis[r->n - k]));
    finish_duals(*r);
    fill_products(*r);
    return r;
}

RingPtr kunneth(const GradedRing& a, const GradedRing& b) {
    if (a.variety.kind == VarietyKind::DisjointUnion || b.variety.kind == VarietyKind::DisjointUnion)
        throw std::invalid_argument("tensor product of disjoint unions is not supported");
    auto r = std::make_shared<GradedRing>();
    r->variety = VarietySpec::product({a.variety, b.variety});
    r->n = a.n + b.n;
    r->engine = a.engine;
    const int shift = a.variety.factor_count();
    const int n = r->n;
    // off[k][i] = start of block (i, k - i) in degree k
    std::vector<std::vector<std::size_t>> off(n + 1, std::vector<std::size_t>(a.n + 2, 0));
    r->basis.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i <= a.n; ++i) {
            off[k][i] = r->basis[k].size();
            int j = k - i;
            if (j < 0 || j > b.n) continue;
            for (const auto& x : a.basis[i])
                for (auto y : b.basis[j]) {
                    for (auto& g : y.gens) g.factor = std::int8_t(g.factor + shift);
                    r->basis[k].push_back(x.times(y));
                }
        }
        off[k][a.n + 1] = r->basis[k].size();
    }
    auto index = [&](int k, int i, std::size_t x, std::size_t y) { return off[k][i] + x * b.rank(k - i) + y; };
    r->pairing.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        RationalMatrix g(r->rank(k), r->rank(n - k));
        for (int i = 0; i <= a.n; ++i) {
            int j = k - i;
            if (j < 0 || j > b.n) continue;
            const auto& ga = a.pairing[i];
            const auto& gb = b.pairing[j];
            for (std::size_t x = 0; x < a.rank(i); ++x)
                for (std::size_t y = 0; y < b.rank(j); ++y)
                    for (std::size_t x2 = 0; x2 < a.rank(a.n - i); ++x2) {
                        if (sgn(ga(x, x2)) == 0) continue;
                        for (std::size_t y2 = 0; y2 < b.rank(b.n - j); ++y2)
                            if (sgn(gb(y, y2)) != 0)
                                g(index(k, i, x, y), index(n - k, a.n - i, x2, y2)) = ga(x, x2) * gb(y, y2);
                    }
        }
        r->pairing[k] = g;
    }
    finish_duals(*r);
    r->product.assign(n + 1, std::vector<RationalMatrix>(n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; j + k <= n; ++k) {
            const int s = j + k;
            RationalMatrix t(r->rank(s), r->rank(j) * r->rank(k));
            for (int i1 = 0; i1 <= a.n; ++i1) {
                int j1 = j - i1;
                if (j1 < 0 || j1 > b.n) continue;
                for (int i2 = 0; i2 <= a.n; ++i2) {
                    int j2 = k - i2;
                    if (j2 < 0 || j2 > b.n || i1 + i2 > a.n || j1 + j2 > b.n) continue;
                    const auto& ta = a.product[i1][i2];
                    const auto& tb = b.product[j1][j2];
                    for (std::size_t x1 = 0; x1 < a.rank(i1); ++x1)
                        for (std::size_t x2 = 0; x2 < a.rank(i2); ++x2)
                            for (std::size_t ra = 0; ra < a.rank(i1 + i2); ++ra) {
                                const Rational& ca = ta(ra, x1 * a.rank(i2) + x2);
                                if (sgn(ca) == 0) continue;
                                for (std::size_t y1 = 0; y1 < b.rank(j1); ++y1)
                                    for (std::size_t y2 = 0; y2 < b.rank(j2); ++y2)
                                        for (std::size_t rb = 0; rb < b.rank(j1 + j2); ++rb) {
                                            const Rational& cb = tb(rb, y1 * b.rank(j2) + y2);
                                            if (sgn(cb) == 0) continue;
                                            std::size_t col = index(j, i1, x1, y1) * r->rank(k) + index(k, i2, x2, y2);
                                            t(index(s, i1 + i2, ra, rb), col) += ca * cb;
                                        }
                            }
                }
            }
            r->product[j][k] = t;
        }
    return r;
}

RingPtr direct_sum(const std::vector<RingPtr>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("empty direct sum");
    if (pieces.size() == 1) return pieces[0];
    auto r = std::make_shared<GradedRing>();
    std::vector<VarietySpec> specs;
    for (const auto& p : pieces) {
        if (p->variety.kind == VarietyKind::DisjointUnion) throw std::invalid_argument("nested disjoint union");
        specs.push_back(p->variety);
    }
    r->variety = VarietySpec::disjoint_union(specs);
    r->n = r->variety.dimension();
    r->engine = pieces[0]->engine;
    const int n = r->n;
    std::vector<std::vector<std::size_t>> off(n + 1, std::vector<std::size_t>(pieces.size() + 1, 0));
    r->basis.assign(n + 1, {});
    for (int k = 0; k <= n; ++k) {
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            off[k][p] = r->basis[k].size();
            for (auto m : pieces[p]->basis[k]) {
                m.piece = int(p);
                r->basis[k].push_back(m);
            }
        }
        off[k][pieces.size()] = r->basis[k].size();
    }
    for (int k = 0; k <= n; ++k) {
        RationalMatrix g(r->rank(k), r->rank(n - k));
        for (std::size_t p = 0; p < pieces.size(); ++p) g.set_block(off[k][p], off[n - k][p], pieces[p]->pairing[k]);
        r->pairing.push_back(g);
    }
    finish_duals(*r);
    r->product.assign(n + 1, std::vector<RationalMatrix>(n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; j + k <= n; ++k) {
            RationalMatrix t(r->rank(j + k), r->rank(j) * r->rank(k));
            for (std::size_t p = 0; p < pieces.size(); ++p) {
                const auto& tp = pieces[p]->product[j][k];
                const auto& P = *pieces[p];
                for (std::size_t a = 0; a < P.rank(j); ++a)
                    for (std::size_t b = 0; b < P.rank(k); ++b)
                        for (std::size_t i = 0; i < P.rank(j + k); ++i)
                            t(off[j + k][p] + i, (off[j][p] + a) * r->rank(k) + off[k][p] + b) = tp(i, a * P.rank(k) + b);
            }
            r->product[j][k] = t;
        }
    return r;
}

RingPtr build_ring(const VarietySpec& spec, const ResourceLimits& limits, std::shared_ptr<IntersectionEngine> engine) {
    check_limits(spec, limits);
    const bool cacheable = engine == default_engine();
    const std::string key = spec.key();
    if (cacheable) {
        std::lock_guard lock(g_ring_cache_mu);
        if (auto it = g_ring_cache.find(key); it != g_ring_cache.end()) return it->second;
    }
    RingPtr r;
    switch (spec.kind) {
        case VarietyKind::Product: {
            r = build_ring(spec.parts[0], limits, engine);
            for (std::size_t i = 1; i < spec.parts.size(); ++i) r = kunneth(*r, *build_ring(spec.parts[i], limits, engine));
            break;
        }
        case VarietyKind::DisjointUnion: {
            std::vector<RingPtr> pieces;
            for (const auto& p : spec.parts) pieces.push_back(build_ring(p, limits, engine));
            r = direct_sum(pieces);
            break;
        }
        default:
            r = build_atomic_ring(spec, limits, engine);
    }
    if (cacheable) {
        std::lock_guard lock(g_ring_cache_mu);
        g_ring_cache.emplace(key, r);
    }
    return r;
}

std::vector<std::uint64_t> betti_numbers(const VarietySpec& spec) {
    switch (spec.kind) {
        case VarietyKind::Projective:
            return std::vector<std::uint64_t>(spec.n + 1, 1);
        case VarietyKind::BlownUpPoints:
            return {1, 1 + spec.points.size(), 1};
        case VarietyKind::BlownUp: {
            // Stage k blows up |Gr_k| disjoint copies of B^k, each of codimension n - k,
            // adding P(B^k) (t + ... + t^{n-k-1}).
            const int n = spec.n;
            std::vector<std::uint64_t> b(n + 1, 1);
            for (int k = 0; k <= n - 2; ++k) {
                auto sub = betti_numbers(VarietySpec::blown_up(k, spec.field));
                std::uint64_t count = gaussian_binomial(n + 1, k + 1, spec.field.q());
                for (int s = 1; s <= n - k - 1; ++s)
                    for (int i = 0; i <= k; ++i) b[i + s] += count * sub[i];
            }
            return b;
        }
        case VarietyKind::Product: {
            std::vector<std::uint64_t> b{1};
            for (const auto& f : spec.parts) {
                auto bf = betti_numbers(f);
                std::vector<std::uint64_t> c(b.size() + bf.size() - 1, 0);
                for (std::size_t i = 0; i < b.size(); ++i)
                    for (std::size_t j = 0; j < bf.size(); ++j) c[i + j] += b[i] * bf[j];
                b = c;
            }
            return b;
        }
        case VarietyKind::DisjointUnion: {
            std::vector<std::uint64_t> b(spec.dimension() + 1, 0);
            for (const auto& p : spec.parts) {
                auto bp = betti_numbers(p);
                for (std::size_t i = 0; i < bp.size(); ++i) b[i] += bp[i];
            }
            return b;
        }
    }
    return {};
}

DivisorRestriction restrict_to_divisor(const GradedRing& ring, const LinearSubvariety& v) {
    const auto& spec = ring.variety;
    if (spec.kind != VarietyKind::BlownUp) throw std::invalid_argument("restriction to D_V needs a blown-up space");
    const int n = ring.n;
    if (v.ambient() != n || v.dim() < 0 || v.dim() > n - 1) throw std::invalid_argument("center not in the ambient space");
    DivisorRestriction out;
    out.center = v;
    const int d = v.dim();
    VarietySpec target = VarietySpec::product({VarietySpec::blown_up(d, spec.field), VarietySpec::blown_up(n - d - 1, spec.field)});
    out.target = build_ring(target, ResourceLimits::from_env(), ring.engine);
    for (int k = 0; k < n; ++k) {
        RationalMatrix m(out.target->rank(k), ring.rank(k));
        for (std::size_t i = 0; i < ring.rank(k); ++i) {
            Polynomial p{{Monomial{}, Rational(1)}};
            for (const auto& g : ring.basis[k][i].gens) {
                Polynomial q;
                for (const auto& [x, c] : ring.engine->restrict_generator(n, spec.field, v, g)) add_term(q, Monomial{0, {x}}, c);
                p = multiply(p, q);
            }
            auto c = out.target->coords(p, k);
            for (std::size_t r = 0; r < c.size(); ++r) m(r, i) = c[r];
        }
        out.maps.push_back(m);
    }
    return out;
}

InjectivityReport check_restriction_injective(const GradedRing& ring) {
    InjectivityReport rep;
    std::vector<RationalMatrix> stacked(ring.n);
    for (int k = 0; k < ring.n; ++k) stacked[k] = RationalMatrix(0, ring.rank(k));
    for (const auto& v : enumerate_all_proper(ring.n, ring.variety.field)) {
        auto r = restrict_to_divisor(ring, v);
        for (int k = 0; k < ring.n; ++k) stacked[k] = vstack(stacked[k], r.maps[k]);
    }
    for (int k = 0; k < ring.n; ++k) {
        rep.dims.push_back(ring.rank(k));
        rep.stacked_rank.push_back(rank(stacked[k]));
        if (rep.stacked_rank.back() != ring.rank(k)) rep.ok = false;
    }
    return rep;
}

RationalVector divisor_coords(const GradedRing& ring, const DivisorClass& d, int piece) {
    return ring.coords(d.as_polynomial(piece), 1);
}

}  // namespace purity
