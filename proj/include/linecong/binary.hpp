#pragma once

// Binary forms in one size-2 block: square-free decomposition and exact
// rational roots.

#include <utility>
#include <vector>

#include "linecong/mpoly.hpp"

namespace linecong {

inline MPoly derivative(const MPoly& p, int var) {
  Terms t;
  for (const auto& [e, c] : p.terms()) {
    if (!e[var]) continue;
    Exponent f = e;
    f[var] -= 1;
    terms::add_term(t, f, c * e[var]);
  }
  MultiDeg d = p.degree();
  d[block_of(var)] = std::max(0, d[block_of(var)] - 1);
  return MPoly::from_terms(std::move(t), d);
}

inline bool is_constant(const MPoly& p) { return p.degree() == MultiDeg{0, 0, 0, 0}; }

/// Square-free factors of a binary form: entry k holds the product of the
/// irreducible factors of multiplicity exactly k (constant when there are none).
inline std::vector<std::pair<MPoly, int>> square_free_factors(const MPoly& p, Block b) {
  if (p.is_zero()) fail(ErrorKind::ZeroInput, "square-free decomposition of zero");
  const int v0 = kBlockStart[static_cast<int>(b)];
  auto radical = [&](const MPoly& q) {
    if (is_constant(q)) return q;
    MPoly g = gcd(derivative(q, v0), derivative(q, v0 + 1));
    return *q.divide(g);
  };
  std::vector<MPoly> D;  // D[k-1] = product of factors with multiplicity >= k
  MPoly cur = p;
  while (!is_constant(cur)) {
    MPoly r = radical(cur).normalized();
    D.push_back(r);
    cur = *cur.divide(r);
  }
  std::vector<std::pair<MPoly, int>> out;
  for (std::size_t k = 0; k < D.size(); ++k) {
    MPoly exact = k + 1 < D.size() ? *D[k].divide(D[k + 1]) : D[k];
    if (!is_constant(exact)) out.emplace_back(exact.normalized(), int(k + 1));
  }
  return out;
}

namespace detail {

using UPoly = std::vector<Rat>;  // index = power

inline void trim(UPoly& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

inline Rat ueval(const UPoly& p, const Rat& x) {
  Rat r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

inline UPoly urem(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

inline std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain{p};
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(long(i)));
  trim(d);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (true) {
    UPoly r = urem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

inline int sign_changes(const std::vector<UPoly>& chain, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(ueval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Rational roots of a square-free polynomial with rational coefficients.
inline std::vector<Rat> rational_roots(UPoly p) {
  trim(p);
  std::vector<Rat> roots;
  if (p.size() <= 1) return roots;
  // scale to integer coefficients so that lc * r is an integer for rational roots r
  std::vector<Rat> n = normalize(p);
  p = n;
  const Rat lc = abs(p.back());
  Rat bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rat(abs(p[i] / p.back())));
  bound += 1;
  auto chain = sturm_chain(p);
  // intervals (lo, hi] with their root counts
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    int count = sign_changes(chain, lo) - sign_changes(chain, hi);
    if (count == 0) continue;
    if (count == 1 && (hi - lo) * lc < 1) {
      Rat scaled = hi * lc;
      Int m;
      mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      Rat cand = Rat(m) / lc;
      if (cand > lo && cand <= hi && is_zero(ueval(p, cand))) roots.push_back(cand);
      continue;
    }
    Rat mid = (lo + hi) / 2;
    work.emplace_back(lo, mid);
    work.emplace_back(mid, hi);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

struct BinaryRoots {
  std::vector<ProjVec> rational;  // distinct, normalized (v0 : v1)
  int irrational = 0;             // distinct roots outside Q
};

/// Distinct roots (v0 : v1) of a nonzero binary form in block b.
inline BinaryRoots binary_roots(const MPoly& p, Block b) {
  BinaryRoots out;
  if (p.is_zero()) fail(ErrorKind::ZeroInput, "roots of the zero form");
  const int bi = static_cast<int>(b), v0 = kBlockStart[bi];
  MPoly r = MPoly::constant(1);
  for (const auto& [f, k] : square_free_factors(p, b)) r = r * f;
  const int n = r.degree()[bi];
  if (n == 0) return out;
  detail::UPoly q(n + 1, Rat(0));  // coefficient of v0^j v1^(n-j) at index j
  for (const auto& [e, c] : r.terms()) q[e[v0]] = c;
  int found = 0;
  if (is_zero(q[n])) {
    out.rational.push_back(ProjVec{1, 0});
    ++found;
  }
  for (const Rat& z : detail::rational_roots(q)) {
    out.rational.push_back(normalize(ProjVec{z, 1}));
    ++found;
  }
  out.irrational = n - found;
  return out;
}

/// Linear form vanishing at the point (p0 : p1) of block b.
inline MPoly vanishing_form(Block b, const ProjVec& p) {
  return MPoly::var(b, 0) * p[1] - MPoly::var(b, 1) * p[0];
}

}  // namespace linecong
