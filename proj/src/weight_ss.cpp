#include "purity/weight_ss.hpp"

#include <algorithm>
#include <numeric>

namespace purity {

namespace {

Subset without(const Subset& s, std::size_t idx) {
    Subset out = s;
    out.erase(out.begin() + long(idx));
    return out;
}

const RationalMatrix* find_map(const std::map<Pos, RationalMatrix>& maps, const Pos& p) {
    auto it = maps.find(p);
    return it == maps.end() ? nullptr : &it->second;
}

// N^power from p, as a dim(target) x dim(p) matrix (zero when the chain leaves the page).
RationalMatrix n_power(const SpectralPage& page, const Pos& p, int power) {
    RationalMatrix acc = RationalMatrix::identity(page.dim(p));
    Pos cur = p;
    for (int e = 0; e < power; ++e) {
        Pos next{cur.first + 2, cur.second - 2};
        const RationalMatrix* m = find_map(page.N, cur);
        if (!m) return RationalMatrix(page.dim(next), page.dim(p));
        acc = (*m) * acc;
        cur = next;
    }
    return acc;
}

}  // namespace

int edge_sign(const Subset& s, int added) {
    long pos = std::count_if(s.begin(), s.end(), [&](int x) { return x < added; });
    return pos % 2 == 0 ? 1 : -1;
}

std::vector<RationalMatrix> gysin_adjoint(const SemistableComplex& cx, const Subset& s, const Subset& t) {
    const Stratum& a = cx.stratum(s);
    const Stratum& b = cx.stratum(t);
    auto it = a.restrictions.find(t);
    if (it == a.restrictions.end()) throw SpectralError("no restriction " + subset_label(s) + " -> " + subset_label(t));
    const int dt = b.ring->n;
    std::vector<RationalMatrix> out;
    for (int deg = 0; deg <= dt; ++deg) {
        int c = dt - deg;
        const RationalMatrix& r = it->second[std::size_t(c)];
        RationalMatrix ginv = a.ring->dual[std::size_t(c)].transpose();  // inverse of pairing[c]
        out.push_back(ginv * r.transpose() * b.ring->pairing[std::size_t(c)]);
    }
    return out;
}

LevelData::LevelData(const SemistableComplex& cx) : cx_(cx) {}

std::size_t LevelData::dim(int t, int c) const {
    if (t < 1 || t > top()) return 0;
    std::size_t d = 0;
    for (const auto& s : cx_.levels[std::size_t(t)]) d += cx_.stratum(s).ring->rank(c);
    return d;
}

std::size_t LevelData::offset(int t, int c, const Subset& s) const {
    std::size_t d = 0;
    for (const auto& u : cx_.levels[std::size_t(t)]) {
        if (u == s) return d;
        d += cx_.stratum(u).ring->rank(c);
    }
    throw SpectralError("subset " + subset_label(s) + " not on level " + std::to_string(t));
}

const RationalMatrix& LevelData::theta(int t, int c) {
    auto key = std::make_pair(t, c);
    if (auto it = theta_.find(key); it != theta_.end()) return it->second;
    RationalMatrix m(dim(t + 1, c), dim(t, c));
    if (t + 1 <= top() && c >= 0 && c <= dim_of(t + 1)) {
        for (const auto& big : cx_.levels[std::size_t(t + 1)]) {
            for (std::size_t idx = 0; idx < big.size(); ++idx) {
                Subset small = without(big, idx);
                int sign = idx % 2 == 0 ? 1 : -1;
                const auto& r = cx_.stratum(small).restrictions.at(big)[std::size_t(c)];
                m.set_block(offset(t + 1, c, big), offset(t, c, small), r.scaled(sign));
            }
        }
    }
    return theta_.emplace(key, std::move(m)).first->second;
}

const RationalMatrix& LevelData::gamma(int t, int c) {
    auto key = std::make_pair(t, c);
    if (auto it = gamma_.find(key); it != gamma_.end()) return it->second;
    RationalMatrix m(dim(t, c + 1), dim(t + 1, c));
    if (t >= 1 && t + 1 <= top() && c >= 0 && c <= dim_of(t + 1)) {
        for (const auto& big : cx_.levels[std::size_t(t + 1)]) {
            for (std::size_t idx = 0; idx < big.size(); ++idx) {
                Subset small = without(big, idx);
                int sign = idx % 2 == 0 ? 1 : -1;
                auto g = gysin_adjoint(cx_, small, big);
                m.set_block(offset(t, c + 1, small), offset(t + 1, c, big), g[std::size_t(c)].scaled(sign));
            }
        }
    }
    return gamma_.emplace(key, std::move(m)).first->second;
}

const RationalMatrix& LevelData::lefschetz(int t, int c) {
    auto key = std::make_pair(t, c);
    if (auto it = lef_.find(key); it != lef_.end()) return it->second;
    RationalMatrix m(dim(t, c + 1), dim(t, c));
    if (t >= 1 && t <= top() && c >= 0 && c < dim_of(t)) {
        for (const auto& s : cx_.levels[std::size_t(t)]) {
            const Stratum& st = cx_.stratum(s);
            if (!st.lefschetz) throw SpectralError("no Lefschetz class on " + subset_label(s));
            m.set_block(offset(t, c + 1, s), offset(t, c, s), st.ring->multiplication_matrix(1, *st.lefschetz, c));
        }
    }
    return lef_.emplace(key, std::move(m)).first->second;
}

const RationalMatrix& LevelData::pairing(int t, int c) {
    auto key = std::make_pair(t, c);
    if (auto it = pair_.find(key); it != pair_.end()) return it->second;
    int d = dim_of(t);
    RationalMatrix m(dim(t, c), dim(t, d - c));
    if (t >= 1 && t <= top() && c >= 0 && c <= d) {
        for (const auto& s : cx_.levels[std::size_t(t)])
            m.set_block(offset(t, c, s), offset(t, d - c, s), cx_.stratum(s).ring->pairing[std::size_t(c)]);
    }
    return pair_.emplace(key, std::move(m)).first->second;
}

RationalMatrix LevelData::lefschetz_power(int t, int c, int e) {
    RationalMatrix acc = RationalMatrix::identity(dim(t, c));
    for (int i = 0; i < e; ++i) acc = lefschetz(t, c + i) * acc;
    return acc;
}

std::size_t SpectralPage::dim(const Pos& p) const {
    auto it = entries.find(p);
    return it == entries.end() ? 0 : it->second.dim;
}

std::vector<Pos> SpectralPage::degree(int w) const {
    std::vector<Pos> out;
    for (const auto& [p, e] : entries)
        if (p.first + p.second == w) out.push_back(p);
    return out;
}

SpectralPage build_e1(const SemistableComplex& cx, LevelData& levels) {
    SpectralPage page;
    page.n = cx.n;
    page.q = cx.q;
    for (int t = 1; t <= levels.top(); ++t) {
        for (int c = 0; c <= levels.dim_of(t); ++c) {
            std::size_t d = levels.dim(t, c);
            if (d == 0) continue;
            for (int k = 0; k < t; ++k) {
                int r = t - 1 - 2 * k;
                int w = 2 * c + t - 1;
                Pos p{-r, w + r};
                auto& e = page.entries[p];
                e.i = p.first;
                e.j = p.second;
                e.slots.push_back(Slot{r, k, t, c, 0, d});
            }
        }
    }
    for (auto& [p, e] : page.entries) {
        std::sort(e.slots.begin(), e.slots.end(), [](const Slot& a, const Slot& b) { return a.t < b.t; });
        std::size_t off = 0;
        for (auto& s : e.slots) {
            s.offset = off;
            off += s.dim;
        }
        e.dim = off;
    }

    auto find_slot = [&](const Pos& p, int t, int c, int k) -> const Slot* {
        auto it = page.entries.find(p);
        if (it == page.entries.end()) return nullptr;
        for (const auto& s : it->second.slots)
            if (s.t == t && s.c == c && s.k == k) return &s;
        return nullptr;
    };

    for (const auto& [p, e] : page.entries) {
        Pos tgt{p.first + 1, p.second};
        if (page.entries.count(tgt)) {
            RationalMatrix m(page.dim(tgt), e.dim);
            for (const auto& s : e.slots) {
                // restriction part: (r, k) -> (r-1, k+1) on level t+1
                if (const Slot* u = find_slot(tgt, s.t + 1, s.c, s.k + 1)) {
                    int sign = (s.r + s.k) % 2 == 0 ? 1 : -1;
                    m.set_block(u->offset, s.offset, levels.theta(s.t, s.c).scaled(sign));
                }
                // Gysin part: (r, k) -> (r-1, k) on level t-1, present when k >= 1 - r
                if (s.t >= 2) {
                    if (const Slot* u = find_slot(tgt, s.t - 1, s.c + 1, s.k)) {
                        int sign = s.k % 2 == 0 ? 1 : -1;
                        m.set_block(u->offset, s.offset, levels.gamma(s.t - 1, s.c).scaled(sign));
                    }
                }
            }
            page.d1.emplace(p, std::move(m));
        }
        Pos ntgt{p.first + 2, p.second - 2};
        if (page.entries.count(ntgt)) {
            RationalMatrix m(page.dim(ntgt), e.dim);
            for (const auto& s : e.slots) {
                if (const Slot* u = find_slot(ntgt, s.t, s.c, s.k + 1)) {
                    int sign = ((s.r % 2) + 2) % 2 == 0 ? 1 : -1;
                    m.set_block(u->offset, s.offset, RationalMatrix::identity(s.dim).scaled(sign));
                }
            }
            page.N.emplace(p, std::move(m));
        }
    }
    return page;
}

E1Checks check_e1(const SpectralPage& page) {
    E1Checks out;
    for (const auto& [p, m] : page.d1) {
        Pos mid{p.first + 1, p.second};
        if (const RationalMatrix* m2 = find_map(page.d1, mid)) {
            if (!((*m2) * m).is_zero()) {
                out.d1_squared_zero = false;
                out.failures.push_back("d1 o d1 != 0 at E1^{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}");
            }
        }
    }
    for (const auto& [p, e] : page.entries) {
        // N d1 and d1 N, both E1^{i,j} -> E1^{i+3,j-2}
        Pos a{p.first + 1, p.second}, b{p.first + 2, p.second - 2}, z{p.first + 3, p.second - 2};
        std::size_t dz = page.dim(z);
        RationalMatrix lhs(dz, e.dim), rhs(dz, e.dim);
        if (dz == 0) continue;
        const RationalMatrix* d = find_map(page.d1, p);
        const RationalMatrix* n2 = find_map(page.N, a);
        if (d && n2) lhs = (*n2) * (*d);
        const RationalMatrix* n = find_map(page.N, p);
        const RationalMatrix* d2 = find_map(page.d1, b);
        if (n && d2) rhs = (*d2) * (*n);
        if (!(lhs == rhs)) {
            out.monodromy_commutes = false;
            out.failures.push_back("N d1 != d1 N at E1^{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}");
        }
    }
    for (const auto& [p, e] : page.entries) {
        int r = -p.first;
        if (r < 1) continue;
        int w = p.first + p.second;
        Pos tgt{r, w - r};
        RationalMatrix m = n_power(page, p, r);
        if (page.dim(tgt) != e.dim || rank(m) != e.dim) {
            out.monodromy_iso = false;
            out.failures.push_back("N^" + std::to_string(r) + " not bijective on E1 in degree " + std::to_string(w));
        }
    }
    for (const auto& [p, e] : page.entries) {
        // targets with no source on the page
        int r = p.first;
        if (r < 1 || page.entries.count({-r, p.first + p.second + r})) continue;
        out.monodromy_iso = false;
        out.failures.push_back("N^" + std::to_string(r) + " misses E1^{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}");
    }
    return out;
}

std::size_t E2Page::dim(const Pos& p) const {
    auto it = entries.find(p);
    return it == entries.end() ? 0 : it->second.dim;
}

E2Page compute_e2(const SpectralPage& page) {
    E2Page out;
    for (const auto& [p, e] : page.entries) {
        RationalMatrix cycles = RationalMatrix::identity(e.dim);
        if (const RationalMatrix* d = find_map(page.d1, p)) cycles = kernel_basis(*d, e.dim);
        RationalMatrix bounds(e.dim, 0);
        if (const RationalMatrix* d = find_map(page.d1, {p.first - 1, p.second})) bounds = column_basis(*d);
        E2Entry entry;
        entry.boundaries = bounds;
        entry.representatives = complement_in(bounds, cycles);
        entry.dim = entry.representatives.cols();
        out.entries.emplace(p, std::move(entry));
    }
    return out;
}

std::size_t induced_rank(const SpectralPage& page, const E2Page& e2, const Pos& p, int power) {
    auto it = e2.entries.find(p);
    if (it == e2.entries.end() || it->second.dim == 0) return 0;
    Pos tgt{p.first + 2 * power, p.second - 2 * power};
    auto jt = e2.entries.find(tgt);
    if (jt == e2.entries.end()) return 0;
    RationalMatrix image = n_power(page, p, power) * it->second.representatives;
    const RationalMatrix& b = jt->second.boundaries;
    return rank(hstack(b, image)) - rank(b);
}

PurityReport check_purity(const SpectralPage& page, const E2Page& e2, int w) {
    PurityReport out;
    out.w = w;
    int reach = 0;
    for (const auto& [p, e] : page.entries) reach = std::max(reach, std::abs(p.first));
    for (int r = 1; r <= reach; ++r) {
        Pos src{-r, w + r}, tgt{r, w - r};
        PurityRow row;
        row.r = r;
        row.dim_source = e2.dim(src);
        row.dim_target = e2.dim(tgt);
        if (row.dim_source == 0 && row.dim_target == 0) continue;
        row.rank = induced_rank(page, e2, src, r);
        row.ok = row.rank == row.dim_source && row.rank == row.dim_target;
        out.ok = out.ok && row.ok;
        out.rows.push_back(row);
    }
    return out;
}

std::map<int, std::size_t> inertia_invariants(const SpectralPage& page, const E2Page& e2, int w) {
    if (!check_purity(page, e2, w).ok)
        throw SpectralError("monodromy filtration is not the weight filtration in degree " + std::to_string(w));
    std::map<int, std::size_t> out;
    for (const auto& p : page.degree(w)) {
        std::size_t d = e2.dim(p);
        if (d == 0) continue;
        std::size_t k = d - induced_rank(page, e2, p, 1);
        if (k > 0) out[p.second] += k;
    }
    return out;
}

EulerReport euler_check(const SemistableComplex& cx, const SpectralPage& page, const E2Page& e2) {
    EulerReport out;
    for (const auto& [p, e] : page.entries) {
        long sign = (p.first + p.second) % 2 == 0 ? 1 : -1;
        out.e1 += sign * long(e.dim);
        out.e2 += sign * long(e2.dim(p));
    }
    for (int t = 1; t <= cx.max_level(); ++t) {
        long chi = 0;
        for (const auto& s : cx.levels[std::size_t(t)]) {
            auto b = betti_numbers(cx.stratum(s).variety);
            chi += long(std::accumulate(b.begin(), b.end(), std::uint64_t(0)));
        }
        out.strata += (t % 2 == 1 ? 1 : -1) * long(t) * chi;
    }
    out.ok = out.e1 == out.e2 && out.e1 == out.strata;
    return out;
}

std::vector<std::size_t> e2_totals(const SpectralPage& page, const E2Page& e2) {
    std::vector<std::size_t> out(std::size_t(2 * page.n + 1), 0);
    for (const auto& [p, e] : e2.entries) {
        int w = p.first + p.second;
        if (w >= 0 && w < int(out.size())) out[std::size_t(w)] += e.dim;
    }
    return out;
}

bool WeightAnalysis::pure() const {
    return std::all_of(purity.begin(), purity.end(), [](const PurityReport& r) { return r.ok; });
}

WeightAnalysis analyze(const SemistableComplex& cx, LevelData& levels) {
    WeightAnalysis out;
    out.e1 = build_e1(cx, levels);
    out.e1_checks = check_e1(out.e1);
    if (!out.e1_checks.d1_squared_zero) return out;
    out.e2 = compute_e2(out.e1);
    for (int w = 0; w <= 2 * cx.n; ++w) out.purity.push_back(check_purity(out.e1, out.e2, w));
    out.euler = euler_check(cx, out.e1, out.e2);
    return out;
}

}  // namespace purity
