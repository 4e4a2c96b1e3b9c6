#pragma once

// Shared generators for property tests.

#include <random>
#include <vector>

#include "linecong/mpoly.hpp"

namespace linecong::testing {

inline Rat rand_rat(std::mt19937_64& rng, int num = 9, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  return make_rat(n(rng), d(rng));
}

inline long rand_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline ProjVec rand_vec(std::mt19937_64& rng, std::size_t n, int range = 5) {
  while (true) {
    ProjVec v(n);
    for (auto& x : v) x = rand_int(rng, -range, range);
    if (!is_zero_vec(v)) return v;
  }
}

/// Random multihomogeneous polynomial with roughly `density` of the monomials present.
inline MPoly rand_poly(std::mt19937_64& rng, const MultiDeg& d, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  Terms t;
  for (const auto& e : monomials(d))
    if (keep(rng)) terms::add_term(t, e, rand_rat(rng));
  return MPoly::from_terms(std::move(t), d);
}

}  // namespace linecong::testing
