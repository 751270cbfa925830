#pragma once

#include "purity/lefschetz.hpp"
#include "purity/weight_ss.hpp"

#include <string>
#include <vector>

namespace purity {

// Between levels k and k+1 in Chow degree c:
//   rho_c = theta(k, c) : N^c(X^(k)) -> N^c(X^(k+1))
//   tau_c = gamma(k, c) : N^c(X^(k+1)) -> N^{c+1}(X^(k))
// Im0 is the part of an image built from primitive pieces, Im1 the quotient by it.
struct ImageSplit {
    RationalMatrix image;  // basis of Im
    RationalMatrix im0;    // basis of Im0, inside Im
    std::size_t im1_dim() const { return image.cols() - im0.cols(); }
};

ImageSplit rho_split(LevelData& levels, int k, int c);
ImageSplit tau_split(LevelData& levels, int k, int c);
// Columns span ker L^{D-2c+1} on level t (D = dimension of level t); empty when 2c > D.
RationalMatrix level_primitive(LevelData& levels, int t, int c);

struct LemmaCheck {
    std::string lemma;
    int k = 0;  // levels k and k+1; level itself for identities
    int c = 0;
    bool ok = false;
    std::string detail;
};

struct StratumCheck {
    Subset subset;
    bool hard_lefschetz = false;
    bool hodge = false;
};

struct LemmaReport {
    bool defined = false;  // every stratum satisfies hard Lefschetz
    bool strata_hodge = false;
    bool ok = false;
    std::vector<StratumCheck> strata;
    std::vector<LemmaCheck> checks;

    bool lemma_ok(const std::string& name) const;
};

std::vector<std::string> lemma_names();
LemmaReport verify_lemmas(const SemistableComplex& cx, LevelData& levels);

}  // namespace purity
