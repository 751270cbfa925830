#pragma once

// Small seeded generators for property tests.

#include "purity/exact_linalg.hpp"

#include <random>

namespace gen {

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20240611);
    return r;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline purity::Rational small_rational() {
    purity::Rational x(uniform(-6, 6), uniform(1, 4));
    x.canonicalize();
    return x;
}

inline purity::RationalMatrix matrix(std::size_t r, std::size_t c, int lo = -4, int hi = 4) {
    purity::RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
}

// rank exactly k, as a product of r x k and k x c factors of full rank
inline purity::RationalMatrix of_rank(std::size_t r, std::size_t c, std::size_t k) {
    for (;;) {
        auto a = matrix(r, k), b = matrix(k, c);
        if (purity::rank(a) == k && purity::rank(b) == k) return a * b;
    }
}

inline purity::RationalMatrix invertible(std::size_t n) {
    for (;;) {
        auto m = matrix(n, n, -3, 3);
        if (purity::rank(m) == n) return m;
    }
}

}  // namespace gen
