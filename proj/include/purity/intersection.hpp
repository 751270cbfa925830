#pragma once

#include "purity/variety.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

namespace purity {

struct DescentPolicy {
    enum class Mode { LexLeast, Random } mode = Mode::LexLeast;
    std::uint64_t seed = 0;
};

using GenTerms = std::vector<std::pair<Generator, Rational>>;

// Intersection numbers of top-degree monomials. On BlownUp(n, F) a monomial containing e_V is
// reduced by restricting the remaining factors to D_V = B^{dim V} x B^{n - dim V - 1}.
class IntersectionEngine {
public:
    explicit IntersectionEngine(DescentPolicy policy = {});

    // Throws std::invalid_argument on a degree mismatch or a generator foreign to the variety.
    Rational number(const VarietySpec& x, const Monomial& m);
    Rational evaluate(const VarietySpec& x, const Polynomial& p);

    // Restriction of a generator of BlownUp(n, f) to D_V; factor 0 is B^{dim V}, factor 1 is
    // B^{n - dim V - 1}. V may have any dimension 0..n-1.
    GenTerms restrict_generator(int n, const FieldSpec& f, const LinearSubvariety& v, const Generator& g);

    std::size_t memo_size() const;
    const DescentPolicy& policy() const { return policy_; }

private:
    struct FieldCache {
        FieldSpec field;
        std::map<std::vector<Generator>, Rational> memo[kMaxAmbient + 1];
        std::map<std::pair<int, LinearSubvariety>, std::vector<LinearSubvariety>> below;  // proper subvarieties of H
        std::map<std::pair<int, LinearSubvariety>, LinearSubvariety> least_hyperplane;
    };

    FieldCache& cache_for(const FieldSpec& f);
    Rational atomic(const VarietySpec& a, std::vector<Generator> gens);
    Rational blown(FieldCache& fc, int n, std::vector<Generator> gens);
    Rational blown_points(const VarietySpec& a, std::vector<Generator> gens);
    GenTerms restrict_in(FieldCache& fc, int n, const LinearSubvariety& v, const Generator& g);
    const std::vector<LinearSubvariety>& below(FieldCache& fc, int n, const LinearSubvariety& h);
    LinearSubvariety least_hyperplane(FieldCache& fc, int n, const LinearSubvariety& v);
    std::size_t choose(std::size_t count);

    DescentPolicy policy_;
    mutable std::recursive_mutex mu_;
    std::mt19937_64 rng_;
    std::map<std::string, std::unique_ptr<FieldCache>> caches_;
};

std::shared_ptr<IntersectionEngine> default_engine();

}  // namespace purity
