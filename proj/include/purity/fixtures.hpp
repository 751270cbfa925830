#pragma once

#include "purity/complex.hpp"

#include <string>
#include <vector>

namespace purity {

// Built-in special fibers, produced as JSON descriptions so they pass through load_complex.
//   tate-cycle(m, q)       m >= 2 copies of P^1 in a cycle
//   two-planes(n[, q])     two copies of P^1 x P^{n-1} glued along pt x P^{n-1} (quadric degeneration)
//   triangle-of-planes     three planes, each blown up at three points of one double line
//   drinfeld-local(d, q)   the star of a vertex: B^d and its neighbours, d in {1, 2}
Json tate_cycle_json(int m, int q);
Json two_planes_json(int n, int q = 2);  // q only labels Frobenius weights
Json triangle_of_planes_json();
Json drinfeld_local_json(int d, int q);

// "name" or "name:a,b" (e.g. "tate-cycle:3,2").
Json fixture_json(const std::string& spec);
std::vector<std::string> fixture_names();

}  // namespace purity
