#pragma once

#include "purity/complex.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace purity {

// Level spaces H^{2c}(X^{(t)}) = sum over |S| = t of N^c(X_S), in the order of cx.levels[t].
// theta is the alternating restriction X^{(t)} -> X^{(t+1)}; gamma is its pairing adjoint
// X^{(t+1)} -> X^{(t)}, raising the degree by one, with the same signs.
class LevelData {
public:
    explicit LevelData(const SemistableComplex& cx);

    const SemistableComplex& complex() const { return cx_; }
    int top() const { return cx_.max_level(); }
    int dim_of(int t) const { return cx_.level_dim(t); }
    std::size_t dim(int t, int c) const;
    std::size_t offset(int t, int c, const Subset& s) const;

    const RationalMatrix& theta(int t, int c);      // (t, c) -> (t+1, c)
    const RationalMatrix& gamma(int t, int c);      // (t+1, c) -> (t, c+1)
    const RationalMatrix& lefschetz(int t, int c);  // (t, c) -> (t, c+1)
    const RationalMatrix& pairing(int t, int c);    // (t, c) x (t, dim - c)
    RationalMatrix lefschetz_power(int t, int c, int e);

private:
    const SemistableComplex& cx_;
    std::map<std::pair<int, int>, RationalMatrix> theta_, gamma_, lef_, pair_;
};

int edge_sign(const Subset& s, int added);  // (-1)^{position of added in S + added}

// Pairing adjoint of the restriction S -> S' (S' = S plus one index): for each degree s of X_S',
// the map N^s(X_S') -> N^{s+1}(X_S) with  a . gysin(b) = restrict(a) . b.
std::vector<RationalMatrix> gysin_adjoint(const SemistableComplex& cx, const Subset& s, const Subset& t);

using Pos = std::pair<int, int>;  // (i, j) of E1^{i,j}

struct Slot {
    int r = 0, k = 0, t = 0, c = 0;  // H^{2c}(X^{(t)}) placed at r = t - 1 - 2k
    std::size_t offset = 0, dim = 0;
};

struct E1Entry {
    int i = 0, j = 0;  // j is the weight tag: Frobenius acts by q^{j/2}
    std::vector<Slot> slots;
    std::size_t dim = 0;
};

struct SpectralPage {
    int n = 0, q = 0;
    std::map<Pos, E1Entry> entries;     // nonzero entries only
    std::map<Pos, RationalMatrix> d1;   // E1^{i,j} -> E1^{i+1,j}, keyed by source
    std::map<Pos, RationalMatrix> N;    // E1^{i,j} -> E1^{i+2,j-2}, keyed by source

    std::size_t dim(const Pos& p) const;
    std::vector<Pos> degree(int w) const;  // positions with i + j = w
};

class SpectralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct E1Checks {
    bool d1_squared_zero = true;
    bool monodromy_commutes = true;
    bool monodromy_iso = true;  // N^r : E1^{-r,w+r} -> E1^{r,w-r}
    std::vector<std::string> failures;
};

// Whole page over all degrees w; d1 maps degree w to w + 1.
SpectralPage build_e1(const SemistableComplex& cx, LevelData& levels);
E1Checks check_e1(const SpectralPage& page);

struct E2Entry {
    std::size_t dim = 0;
    RationalMatrix boundaries;       // basis of im d1 into the entry
    RationalMatrix representatives;  // cycles completing a basis modulo boundaries
};

struct E2Page {
    std::map<Pos, E2Entry> entries;
    std::size_t dim(const Pos& p) const;
};

E2Page compute_e2(const SpectralPage& page);
// Rank of the map induced by N^power on E2, from position p.
std::size_t induced_rank(const SpectralPage& page, const E2Page& e2, const Pos& p, int power);

struct PurityRow {
    int r = 0;
    std::size_t dim_source = 0, dim_target = 0, rank = 0;
    bool ok = false;
};

struct PurityReport {
    int w = 0;
    bool ok = true;
    std::vector<PurityRow> rows;
};

PurityReport check_purity(const SpectralPage& page, const E2Page& e2, int w);

// Ker N on the E2 terms of degree w, graded by weight tag. Throws SpectralError without purity.
std::map<int, std::size_t> inertia_invariants(const SpectralPage& page, const E2Page& e2, int w);

struct EulerReport {
    long e1 = 0, e2 = 0, strata = 0;
    bool ok = false;
};

// Alternating sums over E1, over E2, and sum_t t (-1)^{t-1} chi(X^{(t)}) from Betti numbers.
EulerReport euler_check(const SemistableComplex& cx, const SpectralPage& page, const E2Page& e2);

std::vector<std::size_t> e2_totals(const SpectralPage& page, const E2Page& e2);  // per degree w

// Everything derived from one complex.
struct WeightAnalysis {
    SpectralPage e1;
    E1Checks e1_checks;
    E2Page e2;
    std::vector<PurityReport> purity;  // per w
    EulerReport euler;
    bool pure() const;
};

WeightAnalysis analyze(const SemistableComplex& cx, LevelData& levels);

}  // namespace purity
