#pragma once

#include "purity/graded_ring.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace purity {

using Json = nlohmann::json;
using Subset = std::vector<int>;  // sorted component indices, starting at 1

std::string subset_label(const Subset& s);  // "{1,2}"

struct Stratum {
    Subset subset;
    VarietySpec variety;
    RingPtr ring;
    std::optional<RationalVector> lefschetz;  // N^1 coordinates
    // restrictions[S'][k]: N^k(X_S) -> N^k(X_S') for S' = S plus one index
    std::map<Subset, std::vector<RationalMatrix>> restrictions;
};

// Combinatorial strictly semistable special fiber: components X_1..X_m and the nonempty
// intersections X_S with their restriction maps.
struct SemistableComplex {
    int n = 0;  // dimension of the components
    int q = 0;
    int component_count = 0;
    std::map<Subset, Stratum> strata;       // every nonempty X_S, singletons included
    std::vector<std::vector<Subset>> levels; // levels[t]: subsets of size t, sorted; levels[0] empty

    int max_level() const { return int(levels.size()) - 1; }
    int level_dim(int t) const { return n - t + 1; }
    const Stratum& stratum(const Subset& s) const;
    bool has_lefschetz() const;
};

class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Validates in order: schema and dimensions, square commutativity, ring homomorphism,
// Lefschetz compatibility. Throws LoadError with a diagnostic.
SemistableComplex load_complex(const Json& description, const ResourceLimits& limits = ResourceLimits::from_env());
Json complex_to_json(const SemistableComplex& cx);

Json variety_to_json(const VarietySpec& v);
VarietySpec variety_from_json(const Json& j);
Json matrix_to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

// Restriction along a chain S -> ... -> S' (S' a superset), composed in increasing index order.
std::vector<RationalMatrix> restriction_between(const SemistableComplex& cx, const Subset& s, const Subset& t);

}  // namespace purity
