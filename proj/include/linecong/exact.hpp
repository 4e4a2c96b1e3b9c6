#pragma once

// Exact scalars: GMP rationals, elements of a quadratic extension Q(sqrt d),
// and canonical representatives of projective vectors.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "linecong/error.hpp"

namespace linecong {

using Rat = mpq_class;
using Int = mpz_class;

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" into a canonical rational.
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) fail(ErrorKind::SyntaxError, "bad rational literal '" + s + "'");
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Square-free decomposition of rationals

/// Result of writing q = k^2 * d with d a square-free integer.
struct SquareFree {
  Rat k;  // k >= 0
  Int d;
};

/// Factors the square part out of q. Trial division runs to 10^5; a cofactor
/// left above that bound is tested for being a perfect square, which makes the
/// result exact for cofactors below 10^15.
inline SquareFree square_free(const Rat& q) {
  if (is_zero(q)) return {Rat(0), Int(0)};
  // q = p/r = p*r / r^2
  Int n = q.get_num() * q.get_den();
  Int sign = n < 0 ? Int(-1) : Int(1);
  n = abs(n);
  Int square_root(1);
  Int d(1);
  for (unsigned long p = 2; p <= 100000; ++p) {
    Int pp(p);
    if (pp * pp > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= pp;
      ++e;
    }
    for (unsigned i = 0; i + 1 < e; i += 2) square_root *= pp;
    if (e % 2) d *= pp;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      Int r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      square_root *= r;
    } else {
      d *= n;
    }
  }
  Rat k(square_root, q.get_den());
  k.canonicalize();
  return {k, sign * d};
}

/// Exact square root of a rational, when it exists.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(q.get_den().get_mpz_t()))
    return std::nullopt;
  Int a, b;
  mpz_sqrt(a.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(a, b);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Quadratic extension elements

/// a + b*sqrt(d). `d == 0` marks a plain rational (then b is zero). Elements
/// with b != 0 from different extensions must not be mixed.
struct Ext {
  Rat a{0};
  Rat b{0};
  Rat d{0};

  Ext() = default;
  Ext(const Rat& re) : a(re) {}  // NOLINT(google-explicit-constructor)
  Ext(long re) : a(re) {}        // NOLINT(google-explicit-constructor)
  Ext(Rat re, Rat im, Rat disc) : a(std::move(re)), b(std::move(im)), d(std::move(disc)) {
    if (is_zero(b)) d = 0;
  }

  bool is_rational() const { return is_zero(b); }
  Ext conj() const { return Ext(a, -b, d); }

  friend bool is_zero(const Ext& x) { return is_zero(x.a) && is_zero(x.b); }

  friend bool operator==(const Ext& x, const Ext& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Ext& x, const Ext& y) { return !(x == y); }

  static Rat common_d(const Ext& x, const Ext& y) {
    if (x.is_rational()) return y.d;
    if (y.is_rational()) return x.d;
    if (x.d != y.d) fail(ErrorKind::ExtensionMismatch, "mixing Q(sqrt " + x.d.get_str() + ") and Q(sqrt " + y.d.get_str() + ")");
    return x.d;
  }

  friend Ext operator+(const Ext& x, const Ext& y) { return Ext(x.a + y.a, x.b + y.b, common_d(x, y)); }
  friend Ext operator-(const Ext& x, const Ext& y) { return Ext(x.a - y.a, x.b - y.b, common_d(x, y)); }
  friend Ext operator-(const Ext& x) { return Ext(-x.a, -x.b, x.d); }
  friend Ext operator*(const Ext& x, const Ext& y) {
    Rat d = common_d(x, y);
    return Ext(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
  }
  Ext inverse() const {
    Rat n = a * a - b * b * d;
    if (is_zero(n)) fail(ErrorKind::ZeroInput, "inverse of zero in quadratic extension");
    return Ext(a / n, -b / n, d);
  }
  friend Ext operator/(const Ext& x, const Ext& y) { return x * y.inverse(); }
  Ext& operator+=(const Ext& y) { return *this = *this + y; }
  Ext& operator-=(const Ext& y) { return *this = *this - y; }
  Ext& operator*=(const Ext& y) { return *this = *this * y; }

  /// Sign of a real element (requires d > 0 or b == 0).
  int sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sgn(d) < 0) fail(ErrorKind::ExtensionMismatch, "sign of a non-real element");
    if (sa == 0 || sa == sb) return sb;
    // a and b*sqrt(d) have opposite signs: compare squares
    Rat lhs = a * a, rhs = b * b * d;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  std::string str() const {
    if (is_rational()) return a.get_str();
    std::ostringstream os;
    const Rat mag = abs(b);
    if (sgn(a) != 0) os << a.get_str() << (sgn(b) < 0 ? " - " : " + ");
    else if (sgn(b) < 0) os << "-";
    if (mag != 1) os << mag.get_str() << "*";
    os << "sqrt(" << d.get_str() << ")";
    return os.str();
  }
};

/// sqrt(d) itself.
inline Ext ext_unit(const Rat& d) { return Ext(Rat(0), Rat(1), d); }

// ---------------------------------------------------------------------------
// Projective normalization

using ProjVec = std::vector<Rat>;

/// Canonical representative: integer, coprime, positive leading nonzero entry.
template <class Vec>
Vec normalize(Vec v) {
  std::size_t lead = v.size();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) {
      lead = i;
      break;
    }
  if (lead == v.size()) fail(ErrorKind::ZeroVector, "cannot normalize the zero vector");
  Int den(1);
  for (auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  Int g(0);
  for (auto& x : v) {
    x *= den;
    x.canonicalize();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (sgn(v[lead]) < 0) g = -g;
  for (auto& x : v) {
    x /= g;
    x.canonicalize();
  }
  return v;
}

/// Canonical representative over a quadratic extension: leading entry 1.
template <std::size_t N>
std::array<Ext, N> normalize_ext(std::array<Ext, N> v) {
  for (std::size_t i = 0; i < N; ++i)
    if (!is_zero(v[i])) {
      Ext inv = v[i].inverse();
      for (auto& x : v) x = x * inv;
      return v;
    }
  fail(ErrorKind::ZeroVector, "cannot normalize the zero vector");
}

template <class Vec>
bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// Projective equality: all 2x2 minors vanish.
template <class Vec>
bool proportional(const Vec& u, const Vec& v) {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!is_zero(u[i] * v[j] - u[j] * v[i])) return false;
  return true;
}

template <class Vec>
std::string vec_str(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, Ext>)
      out += v[i].str();
    else
      out += v[i].get_str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Binary quadratic forms

enum class RootKind { TwoRealRoots, ConjugatePair, DoubleRoot, IdenticallyZero };

inline std::string_view to_string(RootKind k) {
  switch (k) {
    case RootKind::TwoRealRoots: return "TwoRealRoots";
    case RootKind::ConjugatePair: return "ConjugatePair";
    case RootKind::DoubleRoot: return "DoubleRoot";
    case RootKind::IdenticallyZero: return "IdenticallyZero";
  }
  return "?";
}

/// Roots (lambda:mu) of A*lambda^2 + B*lambda*mu + C*mu^2.
struct RootClassification {
  RootKind kind = RootKind::IdenticallyZero;
  Rat discriminant{0};
  /// Square-free part of the discriminant; the roots live in Q(sqrt d). 1 when rational.
  Rat d{1};
  std::vector<std::array<Ext, 2>> roots;

  bool rational() const { return d == 1 || kind == RootKind::DoubleRoot; }
};

inline RootClassification quad_root_pair(const Rat& A, const Rat& B, const Rat& C) {
  RootClassification out;
  if (is_zero(A) && is_zero(B) && is_zero(C)) return out;
  out.discriminant = B * B - 4 * A * C;
  const int sd = sgn(out.discriminant);
  if (sd == 0) {
    out.kind = RootKind::DoubleRoot;
    out.d = 1;
    if (!is_zero(A))
      out.roots.push_back({Ext(Rat(-B)), Ext(Rat(2 * A))});
    else
      out.roots.push_back({Ext(Rat(1)), Ext(Rat(0))});
    return out;
  }
  SquareFree sf = square_free(out.discriminant);
  out.d = Rat(sf.d);
  out.kind = sd > 0 ? RootKind::TwoRealRoots : RootKind::ConjugatePair;
  Ext root_disc = sf.d == 1 ? Ext(sf.k) : Ext(Rat(0), sf.k, out.d);
  if (!is_zero(A)) {
    Ext twoA{Rat(2 * A)};
    out.roots.push_back({Ext(Rat(-B)) + root_disc, twoA});
    out.roots.push_back({Ext(Rat(-B)) - root_disc, twoA});
  } else {
    // mu * (B*lambda + C*mu)
    out.roots.push_back({Ext(Rat(1)), Ext(Rat(0))});
    out.roots.push_back({Ext(Rat(-C)), Ext(Rat(B))});
  }
  return out;
}

}  // namespace linecong
