#include "purity/intersection.hpp"

#include <algorithm>
#include <stdexcept>

namespace purity {

IntersectionEngine::IntersectionEngine(DescentPolicy policy) : policy_(policy), rng_(policy.seed) {}

std::shared_ptr<IntersectionEngine> default_engine() {
    static auto engine = std::make_shared<IntersectionEngine>();
    return engine;
}

std::size_t IntersectionEngine::memo_size() const {
    std::lock_guard lock(mu_);
    std::size_t s = 0;
    for (const auto& [k, fc] : caches_)
        for (const auto& m : fc->memo) s += m.size();
    return s;
}

IntersectionEngine::FieldCache& IntersectionEngine::cache_for(const FieldSpec& f) {
    std::string key = std::to_string(f.p()) + "," + std::to_string(f.e());
    for (int c : f.modulus()) key += ":" + std::to_string(c);
    auto& slot = caches_[key];
    if (!slot) {
        slot = std::make_unique<FieldCache>();
        slot->field = f;
    }
    return *slot;
}

std::size_t IntersectionEngine::choose(std::size_t count) {
    if (policy_.mode == DescentPolicy::Mode::LexLeast || count <= 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
}

namespace {

void check_generator(const VarietySpec& a, const Generator& g) {
    if (g.kind == GenKind::Hyperplane) return;
    const auto& s = g.sub;
    switch (a.kind) {
        case VarietyKind::Projective:
            if (s.ambient() != a.n || s.dim() != a.n - 1)
                throw std::invalid_argument("projective space only has hyperplane divisor classes");
            return;
        case VarietyKind::BlownUp:
            if (s.ambient() != a.n || s.dim() < 0 || s.dim() > a.n - 1)
                throw std::invalid_argument("exceptional generator outside the blow-up: " + g.describe());
            return;
        case VarietyKind::BlownUpPoints:
            if (s.ambient() != 2 || s.dim() < 0 || s.dim() > 1)
                throw std::invalid_argument("generator outside the plane: " + g.describe());
            if (s.dim() == 0 && !std::binary_search(a.points.begin(), a.points.end(), s))
                throw std::invalid_argument("point is not a blow-up center: " + g.describe());
            return;
        default:
            throw std::logic_error("non-atomic factor");
    }
}

}  // namespace

Rational IntersectionEngine::number(const VarietySpec& x, const Monomial& m) {
    std::lock_guard lock(mu_);
    if (m.piece < 0 || m.piece >= x.piece_count()) throw std::invalid_argument("monomial piece out of range");
    const VarietySpec& pc = x.piece(m.piece);
    if (m.degree() != pc.dimension())
        throw std::invalid_argument("monomial degree " + std::to_string(m.degree()) + " differs from dimension " +
                                    std::to_string(pc.dimension()));
    const int nf = pc.factor_count();
    std::vector<std::vector<Generator>> split(nf);
    for (const auto& g : m.gens) {
        if (g.factor < 0 || g.factor >= nf) throw std::invalid_argument("generator factor out of range");
        check_generator(pc.factor(g.factor), g);
        Generator local = g;
        local.factor = 0;
        split[g.factor].push_back(local);
    }
    Rational out = 1;
    for (int i = 0; i < nf; ++i) {
        if (int(split[i].size()) != pc.factor(i).dimension()) return 0;
        out *= atomic(pc.factor(i), std::move(split[i]));
        if (sgn(out) == 0) return 0;
    }
    return out;
}

Rational IntersectionEngine::evaluate(const VarietySpec& x, const Polynomial& p) {
    Rational out = 0;
    for (const auto& [m, c] : p) out += c * number(x, m);
    return out;
}

Rational IntersectionEngine::atomic(const VarietySpec& a, std::vector<Generator> gens) {
    std::sort(gens.begin(), gens.end());
    switch (a.kind) {
        case VarietyKind::Projective:
            return 1;  // every generator is h
        case VarietyKind::BlownUp:
            return blown(cache_for(a.field), a.n, std::move(gens));
        case VarietyKind::BlownUpPoints:
            return blown_points(a, std::move(gens));
        default:
            throw std::logic_error("non-atomic factor");
    }
}

Rational IntersectionEngine::blown_points(const VarietySpec& a, std::vector<Generator> gens) {
    // lines become h minus the centers on them; then h^2 = 1, h.e = 0, e_P.e_Q = -delta
    std::vector<GenTerms> lists;
    for (const auto& g : gens) {
        GenTerms t;
        if (g.kind == GenKind::Exceptional && g.sub.dim() == 1) {
            t.push_back({Generator::hyperplane(), Rational(1)});
            for (const auto& p : a.points)
                if (contains(a.field, g.sub, p)) t.push_back({Generator::exceptional(p), Rational(-1)});
        } else {
            t.push_back({g, Rational(1)});
        }
        lists.push_back(std::move(t));
    }
    if (lists.empty()) return 1;  // never reached for dimension 2
    Rational out = 0;
    for (const auto& [g0, c0] : lists[0])
        for (const auto& [g1, c1] : lists[1]) {
            Rational v;
            if (g0.kind == GenKind::Hyperplane && g1.kind == GenKind::Hyperplane)
                v = 1;
            else if (g0.kind != g1.kind)
                v = 0;
            else
                v = g0.sub == g1.sub ? -1 : 0;
            out += c0 * c1 * v;
        }
    return out;
}

const std::vector<LinearSubvariety>& IntersectionEngine::below(FieldCache& fc, int n, const LinearSubvariety& h) {
    auto key = std::make_pair(n, h);
    auto it = fc.below.find(key);
    if (it != fc.below.end()) return it->second;
    std::vector<LinearSubvariety> out;
    for (int d = 0; d < h.dim(); ++d)
        for (const auto& w : enumerate_subspaces(n, fc.field, d))
            if (contains(fc.field, h, w)) out.push_back(w);
    return fc.below.emplace(key, std::move(out)).first->second;
}

LinearSubvariety IntersectionEngine::least_hyperplane(FieldCache& fc, int n, const LinearSubvariety& v) {
    auto key = std::make_pair(n, v);
    auto it = fc.least_hyperplane.find(key);
    if (it != fc.least_hyperplane.end()) return it->second;
    for (const auto& h : enumerate_subspaces(n, fc.field, n - 1))
        if (contains(fc.field, h, v)) return fc.least_hyperplane.emplace(key, h).first->second;
    throw std::logic_error("no hyperplane contains the subvariety");
}

GenTerms IntersectionEngine::restrict_generator(int n, const FieldSpec& f, const LinearSubvariety& v,
                                                const Generator& g) {
    std::lock_guard lock(mu_);
    if (v.ambient() != n || v.dim() < 0 || v.dim() > n - 1) throw std::invalid_argument("restriction center out of range");
    check_generator(VarietySpec::blown_up(n, f), g);
    return restrict_in(cache_for(f), n, v, g);
}

GenTerms IntersectionEngine::restrict_in(FieldCache& fc, int n, const LinearSubvariety& v, const Generator& g) {
    const FieldSpec& f = fc.field;
    const int d = v.dim();
    GenTerms out;
    if (g.kind == GenKind::Hyperplane) {
        if (d >= 1) out.push_back({Generator::hyperplane(0), Rational(1)});
        return out;
    }
    const auto& w = g.sub;
    if (w == v) {
        // e_V = h - D_H - sum_{W < H, W != V} e_W for the least hyperplane H over V (D_V itself if V is one)
        std::map<Generator, Rational> acc;
        auto push = [&](const Generator& x, const Rational& c) {
            for (const auto& [y, cy] : restrict_in(fc, n, v, x)) acc[y] += c * cy;
        };
        LinearSubvariety h = d == n - 1 ? v : least_hyperplane(fc, n, v);
        push(Generator::hyperplane(), Rational(1));
        if (!(h == v)) push(Generator::exceptional(h), Rational(-1));
        for (const auto& x : below(fc, n, h))
            if (!(x == v)) push(Generator::exceptional(x), Rational(-1));
        for (const auto& [y, c] : acc)
            if (sgn(c) != 0) out.push_back({y, c});
        return out;
    }
    if (w.dim() < d && contains(f, v, w)) {
        out.push_back({Generator::exceptional(coordinates_in(f, v, w), 0), Rational(1)});
    } else if (w.dim() > d && contains(f, w, v)) {
        out.push_back({Generator::exceptional(quotient_image(f, v, w), 1), Rational(1)});
    }
    return out;
}

Rational IntersectionEngine::blown(FieldCache& fc, int n, std::vector<Generator> gens) {
    if (n == 0) return 1;
    // hyperplane strict transforms are rewritten first
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].kind != GenKind::Exceptional || gens[i].sub.dim() != n - 1) continue;
        const LinearSubvariety h = gens[i].sub;
        Rational total = 0;
        auto run = [&](const Generator& g, const Rational& c) {
            auto g2 = gens;
            g2[i] = g;
            std::sort(g2.begin(), g2.end());
            total += c * blown(fc, n, std::move(g2));
        };
        run(Generator::hyperplane(), Rational(1));
        for (const auto& w : below(fc, n, h)) run(Generator::exceptional(w), Rational(-1));
        return total;
    }
    auto& memo = fc.memo[n];
    if (auto it = memo.find(gens); it != memo.end()) return it->second;

    std::vector<LinearSubvariety> exc;
    for (const auto& g : gens)
        if (g.kind == GenKind::Exceptional && (exc.empty() || !(exc.back() == g.sub))) exc.push_back(g.sub);
    Rational result = 0;
    bool chain = true;
    for (std::size_t i = 0; i < exc.size() && chain; ++i)
        for (std::size_t j = i + 1; j < exc.size() && chain; ++j)
            if (!contains(fc.field, exc[j], exc[i])) chain = false;  // sorted by dimension
    if (!chain) {
        result = 0;
    } else if (exc.empty()) {
        result = 1;
    } else {
        const LinearSubvariety v = exc[choose(exc.size())];
        const int d = v.dim();
        std::vector<Generator> rest;
        bool removed = false;
        for (const auto& g : gens) {
            if (!removed && g.kind == GenKind::Exceptional && g.sub == v) {
                removed = true;
                continue;
            }
            rest.push_back(g);
        }
        // multilinear expansion on D_V
        std::map<std::vector<Generator>, Rational> terms{{{}, Rational(1)}};
        for (const auto& g : rest) {
            GenTerms r = restrict_in(fc, n, v, g);
            std::map<std::vector<Generator>, Rational> next;
            for (const auto& [m, c] : terms)
                for (const auto& [x, cx] : r) {
                    auto m2 = m;
                    m2.insert(std::upper_bound(m2.begin(), m2.end(), x), x);
                    next[m2] += c * cx;
                }
            terms = std::move(next);
            if (terms.empty()) break;
        }
        for (const auto& [m, c] : terms) {
            if (sgn(c) == 0) continue;
            std::vector<Generator> a, b;
            for (const auto& g : m) {
                Generator local = g;
                local.factor = 0;
                (g.factor == 0 ? a : b).push_back(local);
            }
            if (int(a.size()) != d || int(b.size()) != n - d - 1) continue;
            Rational va = blown(fc, d, std::move(a));
            if (sgn(va) == 0) continue;
            result += c * va * blown(fc, n - d - 1, std::move(b));
        }
    }
    fc.memo[n].emplace(std::move(gens), result);
    return result;
}

}  // namespace purity
