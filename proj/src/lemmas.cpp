#include "purity/lemmas.hpp"

#include <algorithm>
#include <map>

namespace purity {

namespace {

RationalMatrix empty_span(std::size_t rows) { return RationalMatrix(rows, 0); }

// Im0 from per-degree intersections with primitives: sum_j L^j P Im0_{c-j}.
RationalMatrix assemble_im0(LevelData& levels, int t, int c, const std::map<int, RationalMatrix>& prim_part) {
    RationalMatrix acc = empty_span(levels.dim(t, c));
    for (int j = 0; j <= c; ++j) {
        auto it = prim_part.find(c - j);
        if (it == prim_part.end() || it->second.cols() == 0) continue;
        acc = hstack(acc, levels.lefschetz_power(t, c - j, j) * it->second);
    }
    return column_basis(acc);
}

// (L^e a) . b on level t, degree c, with e = D - 2c >= 0.
RationalMatrix lefschetz_pairing(LevelData& levels, int t, int c) {
    int e = levels.dim_of(t) - 2 * c;
    return levels.lefschetz_power(t, c, e).transpose() * levels.pairing(t, levels.dim_of(t) - c);
}

std::size_t rank_modulo(const RationalMatrix& vecs, const RationalMatrix& base) {
    return rank(hstack(base, vecs)) - rank(base);
}

bool same_subspace(const RationalMatrix& a, const RationalMatrix& b) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra == rb && rank(hstack(a, b)) == ra;
}

std::string dims(std::size_t a, std::size_t b) { return std::to_string(a) + " vs " + std::to_string(b); }

}  // namespace

RationalMatrix level_primitive(LevelData& levels, int t, int c) {
    std::size_t d = levels.dim(t, c);
    int D = levels.dim_of(t);
    if (2 * c > D || d == 0) return empty_span(d);
    RationalMatrix m = levels.lefschetz_power(t, c, D - 2 * c + 1);
    return kernel_basis(m, d);
}

ImageSplit rho_split(LevelData& levels, int k, int c) {
    const int t = k + 1;
    std::map<int, RationalMatrix> prim;
    for (int x = 0; x <= c; ++x)
        prim[x] = subspace_intersection(column_basis(levels.theta(k, x)), level_primitive(levels, t, x));
    ImageSplit out;
    out.image = column_basis(levels.theta(k, c));
    out.im0 = assemble_im0(levels, t, c, prim);
    return out;
}

ImageSplit tau_split(LevelData& levels, int k, int c) {
    // Im tau_x sits in degree x + 1 of level k
    std::map<int, RationalMatrix> prim;
    for (int x = 0; x <= c + 1; ++x) {
        if (x == 0) {
            prim[0] = empty_span(levels.dim(k, 0));
            continue;
        }
        prim[x] = subspace_intersection(column_basis(levels.gamma(k, x - 1)), level_primitive(levels, k, x));
    }
    ImageSplit out;
    out.image = column_basis(levels.gamma(k, c));
    out.im0 = assemble_im0(levels, k, c + 1, prim);
    return out;
}

std::vector<std::string> lemma_names() {
    return {"map-identities",        "lefschetz-on-im0",      "lefschetz-on-im1",     "im0-im1-dimensions",
            "im0-pairing-nondegenerate", "composite-isomorphism", "orthogonal-splitting", "kernel-image-intersection"};
}

bool LemmaReport::lemma_ok(const std::string& name) const {
    return defined && std::all_of(checks.begin(), checks.end(), [&](const LemmaCheck& c) { return c.lemma != name || c.ok; });
}

LemmaReport verify_lemmas(const SemistableComplex& cx, LevelData& levels) {
    LemmaReport rep;
    if (!cx.has_lefschetz()) return rep;

    rep.defined = true;
    rep.strata_hodge = true;
    for (const auto& [s, st] : cx.strata) {
        StratumCheck sc;
        sc.subset = s;
        auto ctx = make_context(st.ring, *st.lefschetz);
        auto h = check_hodge_standard(ctx);
        sc.hard_lefschetz = h.hard_lefschetz;
        sc.hodge = h.ok;
        rep.defined = rep.defined && sc.hard_lefschetz;
        rep.strata_hodge = rep.strata_hodge && sc.hodge;
        rep.strata.push_back(sc);
    }
    if (!rep.defined) return rep;

    auto add = [&](const std::string& name, int k, int c, bool ok, std::string detail = {}) {
        rep.checks.push_back(LemmaCheck{name, k, c, ok, std::move(detail)});
    };
    const int top = levels.top();

    // rho rho = 0, tau tau = 0 everywhere; rho tau + tau rho = 0 on levels >= 2
    for (int t = 1; t <= top; ++t) {
        for (int c = 0; c <= levels.dim_of(t); ++c) {
            if (t + 2 <= top) add("map-identities", t, c, (levels.theta(t + 1, c) * levels.theta(t, c)).is_zero(), "rho rho");
            if (t >= 1 && t + 2 <= top)
                add("map-identities", t, c, (levels.gamma(t, c + 1) * levels.gamma(t + 1, c)).is_zero(), "tau tau");
            if (t >= 2) {
                RationalMatrix a = levels.gamma(t, c) * levels.theta(t, c);
                RationalMatrix b = levels.theta(t - 1, c + 1) * levels.gamma(t - 1, c);
                add("map-identities", t, c, (a + b).is_zero(), "rho tau + tau rho");
            }
        }
    }

    for (int k = 1; k + 1 <= top; ++k) {
        const int Dk = levels.dim_of(k), Dk1 = levels.dim_of(k + 1);
        std::map<int, ImageSplit> rho, tau;
        for (int c = 0; c <= Dk + 1; ++c) {
            rho[c] = rho_split(levels, k, c);
            tau[c] = tau_split(levels, k, c);
        }
        auto R = [&](int c) -> const ImageSplit& { return rho.at(std::clamp(c, 0, Dk + 1)); };
        auto T = [&](int c) -> const ImageSplit& { return tau.at(std::clamp(c, 0, Dk + 1)); };

        for (int c = 0; c <= Dk; ++c) {
            // primitive decomposition of Im0 and the Lefschetz isomorphisms on Im0
            {
                const ImageSplit& r = R(c);
                std::size_t total = 0;
                for (int j = 0; j <= c; ++j) {
                    RationalMatrix piece = levels.lefschetz_power(k + 1, c - j, j) * level_primitive(levels, k + 1, c - j);
                    total += subspace_dim(subspace_intersection(column_basis(piece), r.im0));
                }
                bool ok = total == r.im0.cols();
                if (2 * c <= Dk1) {
                    RationalMatrix img = levels.lefschetz_power(k + 1, c, Dk1 - 2 * c) * r.im0;
                    ok = ok && rank(img) == r.im0.cols() && same_subspace(img, R(Dk1 - c).im0);
                }
                add("lefschetz-on-im0", k, c, ok, "rho");
            }
            {
                const ImageSplit& g = T(c);
                std::size_t total = 0;
                for (int j = 0; j <= c + 1; ++j) {
                    RationalMatrix piece = levels.lefschetz_power(k, c + 1 - j, j) * level_primitive(levels, k, c + 1 - j);
                    total += subspace_dim(subspace_intersection(column_basis(piece), g.im0));
                }
                bool ok = total == g.im0.cols();
                if (2 * (c + 1) <= Dk && Dk - c - 2 >= 0) {
                    RationalMatrix img = levels.lefschetz_power(k, c + 1, Dk - 2 * c - 2) * g.im0;
                    ok = ok && rank(img) == g.im0.cols() && same_subspace(img, T(Dk - c - 2).im0);
                }
                add("lefschetz-on-im0", k, c, ok, "tau");
            }

            // Lefschetz isomorphisms on the quotients Im1
            if (2 * c <= Dk1 + 1) {
                const ImageSplit& src = R(c);
                const ImageSplit& dst = R(Dk1 + 1 - c);
                RationalMatrix img = levels.lefschetz_power(k + 1, c, Dk1 + 1 - 2 * c) * src.image;
                std::size_t rk = rank_modulo(img, dst.im0);
                bool ok = rk == src.im1_dim() && rk == dst.im1_dim();
                add("lefschetz-on-im1", k, c, ok, "rho " + dims(src.im1_dim(), dst.im1_dim()));
            }
            if (2 * c + 1 <= Dk && Dk - c - 1 >= 0) {
                const ImageSplit& src = T(c);
                const ImageSplit& dst = T(Dk - c - 1);
                RationalMatrix img = levels.lefschetz_power(k, c + 1, Dk - 1 - 2 * c) * src.image;
                std::size_t rk = rank_modulo(img, dst.im0);
                bool ok = rk == src.im1_dim() && rk == dst.im1_dim();
                add("lefschetz-on-im1", k, c, ok, "tau " + dims(src.im1_dim(), dst.im1_dim()));
            }

            // dimension equalities
            add("im0-im1-dimensions", k, c, R(c).im0.cols() == T(c).im1_dim(),
                "Im0 rho vs Im1 tau " + dims(R(c).im0.cols(), T(c).im1_dim()));
            add("im0-im1-dimensions", k, c, R(c + 1).im1_dim() == T(c).im0.cols(),
                "Im1 rho vs Im0 tau " + dims(R(c + 1).im1_dim(), T(c).im0.cols()));

            // Lefschetz pairing restricted to Im0, where the pairing is defined
            if (2 * c <= Dk1) {
                const RationalMatrix& b = R(c).im0;
                RationalMatrix g = b.transpose() * lefschetz_pairing(levels, k + 1, c) * b;
                add("im0-pairing-nondegenerate", k, c, rank(g) == b.cols(), "rho");
            }
            if (2 * (c + 1) <= Dk) {
                const RationalMatrix& b = T(c).im0;
                RationalMatrix g = b.transpose() * lefschetz_pairing(levels, k, c + 1) * b;
                add("im0-pairing-nondegenerate", k, c, rank(g) == b.cols(), "tau");
            }

            // Im0 rho -> Im1 tau via tau, Im0 tau -> Im1 rho via rho
            RationalMatrix tau_of_r0 = levels.gamma(k, c) * R(c).im0;
            RationalMatrix rho_of_t0 = levels.theta(k, c + 1) * T(c).im0;
            {
                std::size_t rk = rank_modulo(tau_of_r0, T(c).im0);
                add("composite-isomorphism", k, c, rk == R(c).im0.cols() && rk == T(c).im1_dim(), "tau");
                rk = rank_modulo(rho_of_t0, R(c + 1).im0);
                add("composite-isomorphism", k, c, rk == T(c).im0.cols() && rk == R(c + 1).im1_dim(), "rho");
            }

            // Im = Im0 + (image of the other Im0), direct and orthogonal
            {
                const ImageSplit& g = T(c);
                bool ok = rank(hstack(g.im0, tau_of_r0)) == g.im0.cols() + rank(tau_of_r0) &&
                          same_subspace(hstack(g.im0, tau_of_r0), g.image);
                if (ok && 2 * (c + 1) <= Dk)
                    ok = (g.im0.transpose() * lefschetz_pairing(levels, k, c + 1) * tau_of_r0).is_zero();
                add("orthogonal-splitting", k, c, ok, "tau");
            }
            {
                const ImageSplit& r = R(c + 1);
                bool ok = rank(hstack(r.im0, rho_of_t0)) == r.im0.cols() + rank(rho_of_t0) &&
                          same_subspace(hstack(r.im0, rho_of_t0), r.image);
                if (ok && 2 * (c + 1) <= Dk1)
                    ok = (r.im0.transpose() * lefschetz_pairing(levels, k + 1, c + 1) * rho_of_t0).is_zero();
                add("orthogonal-splitting", k, c, ok, "rho");
            }

            // Ker tau cap Im rho = Im(rho tau), Ker rho cap Im tau = Im(tau rho)
            {
                std::size_t d = levels.dim(k + 1, c);
                RationalMatrix ker_tau = kernel_basis(levels.gamma(k, c), d);
                RationalMatrix lhs = subspace_intersection(ker_tau, R(c).image);
                RationalMatrix rhs = c >= 1 ? column_basis(levels.theta(k, c) * levels.gamma(k, c - 1)) : empty_span(d);
                add("kernel-image-intersection", k, c, same_subspace(lhs, rhs), "ker tau, im rho");
            }
            {
                std::size_t d = levels.dim(k, c + 1);
                RationalMatrix ker_rho = kernel_basis(levels.theta(k, c + 1), d);
                RationalMatrix lhs = subspace_intersection(ker_rho, T(c).image);
                RationalMatrix rhs = column_basis(levels.gamma(k, c) * levels.theta(k, c));
                add("kernel-image-intersection", k, c, same_subspace(lhs, rhs), "ker rho, im tau");
            }
        }
    }

    rep.ok = std::all_of(rep.checks.begin(), rep.checks.end(), [](const LemmaCheck& c) { return c.ok; });
    return rep;
}

}  // namespace purity
