#pragma once

// Multihomogeneous polynomials over Q in the variable blocks
//   s = (s0, s1), t = (t0, t1), u = (u0, u1), x = (x0, x1, x2, x3).
// Terms are kept in descending lexicographic order of the exponent tuple,
// which is the block order s, t, u, x.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linecong/error.hpp"
#include "linecong/exact.hpp"
#include "linecong/linalg.hpp"

namespace linecong {

inline constexpr int kNumVars = 10;
using Exponent = std::array<std::uint8_t, kNumVars>;
using MultiDeg = std::array<int, 4>;
using Terms = std::map<Exponent, Rat, std::greater<Exponent>>;

enum class Block : int { s = 0, t = 1, u = 2, x = 3 };

inline constexpr std::array<int, 4> kBlockStart{0, 2, 4, 6};
inline constexpr std::array<int, 4> kBlockSize{2, 2, 2, 4};
inline constexpr std::array<std::string_view, kNumVars> kVarNames{
    "s0", "s1", "t0", "t1", "u0", "u1", "x0", "x1", "x2", "x3"};
inline constexpr std::array<std::string_view, 4> kBlockNames{"s", "t", "u", "x"};

inline int block_of(int var) {
  if (var < 2) return 0;
  if (var < 4) return 1;
  if (var < 6) return 2;
  return 3;
}

inline int var_index(Block b, int i) { return kBlockStart[static_cast<int>(b)] + i; }

inline MultiDeg multidegree(const Exponent& e) {
  MultiDeg d{0, 0, 0, 0};
  for (int i = 0; i < kNumVars; ++i) d[block_of(i)] += e[i];
  return d;
}

/// Which blocks a polynomial may use.
struct Signature {
  std::array<bool, 4> has{true, true, true, true};

  static Signature all() { return {}; }
  static Signature params() { return {{true, true, true, false}}; }
  static Signature points() { return {{false, false, false, true}}; }
  bool allows(int var) const { return has[block_of(var)]; }
};

// ---------------------------------------------------------------------------
// Ungraded term arithmetic (used internally for gcd, division and parsing)

namespace terms {

inline void add_term(Terms& t, const Exponent& e, const Rat& c) {
  if (is_zero(c)) return;
  auto [it, inserted] = t.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) t.erase(it);
  }
}

inline Terms add(const Terms& a, const Terms& b) {
  Terms r = a;
  for (const auto& [e, c] : b) add_term(r, e, c);
  return r;
}

inline Terms sub(const Terms& a, const Terms& b) {
  Terms r = a;
  for (const auto& [e, c] : b) add_term(r, e, -c);
  return r;
}

inline Terms scale(const Terms& a, const Rat& k) {
  if (is_zero(k)) return {};
  Terms r;
  for (const auto& [e, c] : a) r.emplace_hint(r.end(), e, c * k);
  return r;
}

inline Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent e{};
  for (int i = 0; i < kNumVars; ++i) e[i] = static_cast<std::uint8_t>(a[i] + b[i]);
  return e;
}

inline Terms mul(const Terms& a, const Terms& b) {
  Terms r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_term(r, add_exp(ea, eb), ca * cb);
  return r;
}

inline Terms constant(const Rat& c) {
  Terms r;
  add_term(r, Exponent{}, c);
  return r;
}

inline bool is_constant(const Terms& a) { return a.size() == 1 && a.begin()->first == Exponent{}; }

inline int deg_in(const Terms& a, int v) {
  int d = -1;
  for (const auto& [e, c] : a) d = std::max(d, int(e[v]));
  return d;
}

/// Coefficient of v^k, as a polynomial free of v.
inline Terms coeff_in(const Terms& a, int v, int k) {
  Terms r;
  for (const auto& [e, c] : a)
    if (e[v] == k) {
      Exponent f = e;
      f[v] = 0;
      r.emplace(f, c);
    }
  return r;
}

inline Terms shift(const Terms& a, int v, int k) {
  Terms r;
  for (const auto& [e, c] : a) {
    Exponent f = e;
    f[v] = static_cast<std::uint8_t>(f[v] + k);
    r.emplace(f, c);
  }
  return r;
}

/// Exact quotient a / b when b divides a.
inline std::optional<Terms> divide(const Terms& a, const Terms& b) {
  if (b.empty()) fail(ErrorKind::ZeroInput, "division by the zero polynomial");
  Terms q, r = a;
  const auto& [eb, cb] = *b.begin();
  while (!r.empty()) {
    const auto& [er, cr] = *r.begin();
    Exponent e{};
    for (int i = 0; i < kNumVars; ++i) {
      if (er[i] < eb[i]) return std::nullopt;
      e[i] = static_cast<std::uint8_t>(er[i] - eb[i]);
    }
    Rat c = cr / cb;
    add_term(q, e, c);
    Terms m;
    m.emplace(e, c);
    r = sub(r, mul(m, b));
  }
  return q;
}

/// Integer, coprime coefficients with positive leading coefficient.
inline Terms normalized(const Terms& a) {
  if (a.empty()) return a;
  std::vector<Rat> c;
  c.reserve(a.size());
  for (const auto& kv : a) c.push_back(kv.second);
  c = normalize(std::move(c));
  Terms r;
  std::size_t i = 0;
  for (const auto& kv : a) r.emplace_hint(r.end(), kv.first, c[i++]);
  return r;
}

Terms gcd(const Terms& a, const Terms& b);

inline Terms content_in(const Terms& a, int v) {
  Terms g;
  for (int k = 0, n = deg_in(a, v); k <= n; ++k) {
    Terms c = coeff_in(a, v, k);
    if (c.empty()) continue;
    g = gcd(g, c);
    if (is_constant(g)) break;
  }
  return g;
}

inline Terms primitive_in(const Terms& a, int v) {
  Terms c = content_in(a, v);
  if (c.empty() || is_constant(c)) return a;
  return *divide(a, c);
}

/// Pseudo-remainder of a by b as polynomials in v.
inline Terms prem(Terms a, const Terms& b, int v) {
  const int db = deg_in(b, v);
  const Terms lb = coeff_in(b, v, db);
  int da = deg_in(a, v);
  while (!a.empty() && da >= db) {
    Terms la = coeff_in(a, v, da);
    a = sub(mul(lb, a), shift(mul(la, b), v, da - db));
    da = deg_in(a, v);
  }
  return a;
}

/// Greatest common divisor by recursive primitive remainder sequences,
/// normalized as in `normalized`.
inline Terms gcd(const Terms& a, const Terms& b) {
  if (a.empty()) return normalized(b);
  if (b.empty()) return normalized(a);
  if (is_constant(a) || is_constant(b)) return constant(Rat(1));
  int v = -1;
  for (int i = kNumVars - 1; i >= 0 && v < 0; --i)
    if (deg_in(a, i) > 0 || deg_in(b, i) > 0) v = i;
  if (deg_in(a, v) == 0) return gcd(a, content_in(b, v));
  if (deg_in(b, v) == 0) return gcd(content_in(a, v), b);
  Terms ca = content_in(a, v), cb = content_in(b, v);
  Terms g = gcd(ca, cb);
  Terms A = *divide(a, ca), B = *divide(b, cb);
  if (deg_in(A, v) < deg_in(B, v)) std::swap(A, B);
  Terms h;
  while (true) {
    Terms R = prem(A, B, v);
    if (R.empty()) {
      h = primitive_in(B, v);
      break;
    }
    if (deg_in(R, v) == 0) {
      h = constant(Rat(1));
      break;
    }
    A = std::move(B);
    B = primitive_in(R, v);
  }
  return normalized(mul(g, h));
}

}  // namespace terms

// ---------------------------------------------------------------------------
// MPoly

class MPoly {
 public:
  MPoly() = default;

  static MPoly zero(const MultiDeg& d) {
    MPoly p;
    p.deg_ = d;
    return p;
  }
  static MPoly constant(const Rat& c) {
    MPoly p;
    p.terms_ = terms::constant(c);
    return p;
  }
  static MPoly var(int index) {
    MPoly p;
    Exponent e{};
    e[index] = 1;
    p.terms_.emplace(e, Rat(1));
    p.deg_[block_of(index)] = 1;
    return p;
  }
  static MPoly var(std::string_view name) {
    for (int i = 0; i < kNumVars; ++i)
      if (kVarNames[i] == name) return var(i);
    fail(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  }
  static MPoly var(Block b, int i) { return var(var_index(b, i)); }

  /// Builds a polynomial from raw terms; all terms must share one multidegree.
  static MPoly from_terms(Terms t, const MultiDeg& zero_degree = {0, 0, 0, 0}) {
    MPoly p;
    if (t.empty()) {
      p.deg_ = zero_degree;
      return p;
    }
    p.deg_ = multidegree(t.begin()->first);
    for (const auto& kv : t)
      if (multidegree(kv.first) != p.deg_) {
        MPoly a, b;
        a.terms_.emplace(t.begin()->first, Rat(1));
        b.terms_.emplace(kv.first, Rat(1));
        a.deg_ = multidegree(t.begin()->first);
        b.deg_ = multidegree(kv.first);
        fail(ErrorKind::NotHomogeneous,
             "monomials " + a.str() + " and " + b.str() + " have different multidegrees");
      }
    p.terms_ = std::move(t);
    return p;
  }

  const Terms& terms() const { return terms_; }
  const MultiDeg& degree() const { return deg_; }
  int degree(Block b) const { return deg_[static_cast<int>(b)]; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r;
    r.deg_ = common_degree(a, b);
    r.terms_ = terms::add(a.terms_, b.terms_);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r;
    r.deg_ = common_degree(a, b);
    r.terms_ = terms::sub(a.terms_, b.terms_);
    return r;
  }
  friend MPoly operator-(const MPoly& a) { return a * Rat(-1); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (int i = 0; i < 4; ++i) r.deg_[i] = a.deg_[i] + b.deg_[i];
    r.terms_ = terms::mul(a.terms_, b.terms_);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const Rat& k) {
    MPoly r;
    r.deg_ = a.deg_;
    r.terms_ = terms::scale(a.terms_, k);
    return r;
  }
  friend MPoly operator*(const Rat& k, const MPoly& a) { return a * k; }
  MPoly& operator+=(const MPoly& b) { return *this = *this + b; }
  MPoly& operator-=(const MPoly& b) { return *this = *this - b; }
  MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

  /// Exact quotient when b divides this polynomial.
  std::optional<MPoly> divide(const MPoly& b) const {
    auto q = terms::divide(terms_, b.terms_);
    if (!q) return std::nullopt;
    MultiDeg d;
    for (int i = 0; i < 4; ++i) d[i] = deg_[i] - b.deg_[i];
    return from_terms(std::move(*q), d);
  }

  /// Copy scaled to integer coprime coefficients with positive leading coefficient.
  MPoly normalized() const {
    MPoly r = *this;
    r.terms_ = terms::normalized(terms_);
    return r;
  }

  std::string str() const;

 private:
  static MultiDeg common_degree(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.deg_;
    if (b.is_zero()) return a.deg_;
    if (a.deg_ != b.deg_)
      fail(ErrorKind::DegreeMismatch, "adding polynomials of different multidegrees");
    return a.deg_;
  }

  Terms terms_;
  MultiDeg deg_{0, 0, 0, 0};
};

inline MPoly pow(const MPoly& p, int n) {
  MPoly r = MPoly::constant(Rat(1));
  for (int i = 0; i < n; ++i) r = r * p;
  return r;
}

// ---------------------------------------------------------------------------
// Printing

inline std::string monomial_str(const Exponent& e) {
  std::string out;
  for (int i = 0; i < kNumVars; ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += "*";
    out += kVarNames[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

inline std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool neg = sgn(c) < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    Rat a = abs(c);
    std::string m = monomial_str(e);
    if (m.empty())
      out += a.get_str();
    else if (a == 1)
      out += m;
    else
      out += a.get_str() + "*" + m;
  }
  return out;
}

inline std::string to_string(const MPoly& p) { return p.str(); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Signature sig) : s_(text), sig_(sig) {}

  Terms parse() {
    Terms r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::SyntaxError, "at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }

  Terms expr() {
    Terms r = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        r = terms::add(r, term());
      } else if (peek('-')) {
        ++pos_;
        r = terms::sub(r, term());
      } else {
        return r;
      }
    }
  }

  Terms term() {
    Terms r = factor();
    while (peek('*')) {
      ++pos_;
      r = terms::mul(r, factor());
    }
    return r;
  }

  Terms factor() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    if (s_[pos_] == '-') {
      ++pos_;
      return terms::scale(factor(), Rat(-1));
    }
    if (s_[pos_] == '+') {
      ++pos_;
      return factor();
    }
    Terms base = primary();
    while (peek('^')) {
      ++pos_;
      skip();
      std::string n = digits();
      if (n.size() > 3) error("exponent too large");
      int k = std::stoi(n);
      Terms r = terms::constant(Rat(1));
      for (int i = 0; i < k; ++i) r = terms::mul(r, base);
      base = std::move(r);
    }
    return base;
  }

  Terms primary() {
    skip();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Terms r = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) error("zero denominator");
        num += "/" + den;
      }
      return terms::constant(parse_rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      for (int i = 0; i < kNumVars; ++i)
        if (kVarNames[i] == name) {
          if (!sig_.allows(i))
            fail(ErrorKind::UnknownVariable,
                 "variable '" + std::string(name) + "' is not in the signature (position " +
                     std::to_string(start) + ")");
          Exponent e{};
          e[i] = 1;
          Terms r;
          r.emplace(e, Rat(1));
          return r;
        }
      fail(ErrorKind::UnknownVariable,
           "unknown variable '" + std::string(name) + "' at position " + std::to_string(start));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  Signature sig_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MPoly parse_poly(std::string_view text, Signature sig = Signature::all()) {
  return MPoly::from_terms(detail::Parser(text, sig).parse());
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

template <class F>
F eval(const MPoly& p, const std::array<F, kNumVars>& values) {
  F total(0);
  for (const auto& [e, c] : p.terms()) {
    F m{c};
    for (int i = 0; i < kNumVars; ++i)
      for (int k = 0; k < e[i]; ++k) m = m * values[i];
    total = total + m;
  }
  return total;
}

/// Per-block point assignment; blocks the polynomial does not use may be empty.
struct Assignment {
  std::array<ProjVec, 4> blocks;

  Assignment() = default;
  Assignment(ProjVec s, ProjVec t, ProjVec u, ProjVec x = {})
      : blocks{std::move(s), std::move(t), std::move(u), std::move(x)} {}
};

inline std::array<Rat, kNumVars> flat_values(const Assignment& a) {
  std::array<Rat, kNumVars> v;
  for (auto& x : v) x = 0;
  for (int b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < a.blocks[b].size() && int(i) < kBlockSize[b]; ++i)
      v[kBlockStart[b] + i] = a.blocks[b][i];
  return v;
}

inline Rat evaluate(const MPoly& p, const Assignment& a) {
  for (int b = 0; b < 4; ++b)
    if (p.degree()[b] > 0 && int(a.blocks[b].size()) != kBlockSize[b])
      fail(ErrorKind::ZeroInput, std::string("assignment misses block ") + std::string(kBlockNames[b]));
  return eval<Rat>(p, flat_values(a));
}

/// Replaces each variable by a polynomial (identity where `images` holds
/// the variable itself).
inline MPoly compose(const MPoly& p, const std::array<MPoly, kNumVars>& images) {
  MultiDeg d = p.degree();
  Terms out;
  std::array<std::vector<Terms>, kNumVars> powers;
  for (int i = 0; i < kNumVars; ++i) powers[i].push_back(terms::constant(Rat(1)));
  for (const auto& [e, c] : p.terms()) {
    Terms m = terms::constant(c);
    MultiDeg md{0, 0, 0, 0};
    for (int i = 0; i < kNumVars; ++i) {
      while (int(powers[i].size()) <= e[i]) powers[i].push_back(terms::mul(powers[i].back(), images[i].terms()));
      if (e[i]) m = terms::mul(m, powers[i][e[i]]);
      for (int b = 0; b < 4; ++b) md[b] += e[i] * images[i].degree()[b];
    }
    d = md;
    out = terms::add(out, m);
  }
  return MPoly::from_terms(std::move(out), d);
}

inline std::array<MPoly, kNumVars> identity_images() {
  std::array<MPoly, kNumVars> v;
  for (int i = 0; i < kNumVars; ++i) v[i] = MPoly::var(i);
  return v;
}

/// Substitutes a point for one block; the block disappears from the result.
inline MPoly substitute_block(const MPoly& p, Block b, const std::vector<Rat>& values) {
  auto images = identity_images();
  const int bi = static_cast<int>(b);
  if (int(values.size()) != kBlockSize[bi]) fail(ErrorKind::ZeroInput, "wrong number of block values");
  for (int i = 0; i < kBlockSize[bi]; ++i) images[kBlockStart[bi] + i] = MPoly::constant(values[i]);
  MPoly r = compose(p, images);
  if (r.is_zero()) {
    MultiDeg d = p.degree();
    d[bi] = 0;
    return MPoly::zero(d);
  }
  return r;
}

/// Applies a linear change of variables v_i -> sum_j m[i][j] v_j inside a block.
inline MPoly linear_substitute(const MPoly& p, Block b, const Matrix<Rat>& m) {
  auto images = identity_images();
  const int bi = static_cast<int>(b);
  for (int i = 0; i < kBlockSize[bi]; ++i) {
    MPoly img = MPoly::zero({0, 0, 0, 0});
    for (int j = 0; j < kBlockSize[bi]; ++j)
      if (!is_zero(m[i][j])) img += MPoly::var(kBlockStart[bi] + j) * m[i][j];
    if (img.is_zero()) {
      MultiDeg d{0, 0, 0, 0};
      d[bi] = 1;
      img = MPoly::zero(d);
    }
    images[kBlockStart[bi] + i] = img;
  }
  MPoly r = compose(p, images);
  return r.is_zero() ? MPoly::zero(p.degree()) : r;
}

/// Exchanges two size-2 blocks (e.g. s <-> t) in a polynomial.
inline MPoly swap_blocks(const MPoly& p, Block a, Block b) {
  auto images = identity_images();
  const int ai = kBlockStart[static_cast<int>(a)], bi = kBlockStart[static_cast<int>(b)];
  for (int i = 0; i < 2; ++i) {
    images[ai + i] = MPoly::var(bi + i);
    images[bi + i] = MPoly::var(ai + i);
  }
  MPoly r = compose(p, images);
  if (r.is_zero()) {
    MultiDeg d = p.degree();
    std::swap(d[static_cast<int>(a)], d[static_cast<int>(b)]);
    return MPoly::zero(d);
  }
  return r;
}

/// All exponents of the given multidegree, in descending lex order.
inline std::vector<Exponent> monomials(const MultiDeg& d) {
  std::vector<std::vector<std::vector<std::uint8_t>>> per_block(4);
  for (int b = 0; b < 4; ++b) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur(kBlockSize[b], 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == kBlockSize[b] - 1) {
        cur[i] = static_cast<std::uint8_t>(left);
        out.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[i] = static_cast<std::uint8_t>(k);
        rec(i + 1, left - k);
      }
    };
    rec(0, d[b]);
    per_block[b] = std::move(out);
  }
  std::vector<Exponent> result;
  for (const auto& es : per_block[0])
    for (const auto& et : per_block[1])
      for (const auto& eu : per_block[2])
        for (const auto& ex : per_block[3]) {
          Exponent e{};
          std::copy(es.begin(), es.end(), e.begin());
          std::copy(et.begin(), et.end(), e.begin() + 2);
          std::copy(eu.begin(), eu.end(), e.begin() + 4);
          std::copy(ex.begin(), ex.end(), e.begin() + 6);
          result.push_back(e);
        }
  return result;
}

inline MPoly monomial(const Exponent& e, const Rat& c = Rat(1)) {
  Terms t;
  terms::add_term(t, e, c);
  return MPoly::from_terms(std::move(t), multidegree(e));
}

// ---------------------------------------------------------------------------
// GCD and content

inline MPoly gcd(const MPoly& a, const MPoly& b) {
  return MPoly::from_terms(terms::gcd(a.terms(), b.terms()));
}

inline MPoly gcd(const std::vector<MPoly>& ps) {
  Terms g;
  for (const auto& p : ps) {
    g = terms::gcd(g, p.terms());
    if (terms::is_constant(g)) break;
  }
  return MPoly::from_terms(std::move(g));
}

/// Divides out the polynomial gcd of the list. Inputs come back unchanged
/// when the gcd is a constant.
inline std::vector<MPoly> content_free(const std::vector<MPoly>& ps) {
  if (ps.empty()) fail(ErrorKind::AllZero, "empty polynomial list");
  bool all_zero = true;
  for (const auto& p : ps) all_zero = all_zero && p.is_zero();
  if (all_zero) fail(ErrorKind::AllZero, "every polynomial in the list is zero");
  MPoly g = gcd(ps);
  if (g.degree() == MultiDeg{0, 0, 0, 0}) return ps;
  std::vector<MPoly> out;
  out.reserve(ps.size());
  for (const auto& p : ps) {
    if (p.is_zero()) {
      MultiDeg d = p.degree();
      for (int i = 0; i < 4; ++i) d[i] -= g.degree()[i];
      out.push_back(MPoly::zero(d));
    } else {
      out.push_back(*p.divide(g));
    }
  }
  return out;
}

template <std::size_t N>
std::array<MPoly, N> content_free(const std::array<MPoly, N>& ps) {
  auto v = content_free(std::vector<MPoly>(ps.begin(), ps.end()));
  std::array<MPoly, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Resultants

/// Coefficients of p in a size-2 block, ordered by descending power of the
/// block's second variable: p = sum_k c_k * v1^(n-k) * v0^k.
inline std::vector<MPoly> block_coefficients(const MPoly& p, Block b) {
  const int bi = static_cast<int>(b);
  if (kBlockSize[bi] != 2) fail(ErrorKind::WrongDegree, "block coefficients need a size-2 block");
  const int n = p.degree()[bi];
  const int v0 = kBlockStart[bi], v1 = v0 + 1;
  MultiDeg d = p.degree();
  d[bi] = 0;
  std::vector<Terms> c(n + 1);
  for (const auto& [e, coef] : p.terms()) {
    Exponent f = e;
    int k = n - e[v1];
    f[v0] = 0;
    f[v1] = 0;
    c[k].emplace(f, coef);
  }
  std::vector<MPoly> out;
  for (auto& t : c) out.push_back(MPoly::from_terms(std::move(t), d));
  return out;
}

/// Determinant of a square matrix of polynomials by fraction-free elimination.
inline MPoly poly_det(std::vector<std::vector<MPoly>> m, const MultiDeg& zero_degree) {
  const std::size_t n = m.size();
  if (n == 0) return MPoly::constant(Rat(1));
  MPoly prev = MPoly::constant(Rat(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly::zero(zero_degree);
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Terms num = terms::sub(terms::mul(m[k][k].terms(), m[i][j].terms()),
                               terms::mul(m[i][k].terms(), m[k][j].terms()));
        auto q = terms::divide(num, prev.terms());
        if (!q) fail(ErrorKind::InconsistentData, "fraction-free elimination lost exactness");
        m[i][j] = MPoly::from_terms(std::move(*q));
      }
    prev = m[k][k];
  }
  MPoly r = m[n - 1][n - 1];
  if (r.is_zero()) return MPoly::zero(zero_degree);
  return MPoly::from_terms(r.terms(), zero_degree) * Rat(sign);
}

/// Sylvester resultant eliminating a size-2 block.
inline MPoly sylvester_resultant(const MPoly& p, const MPoly& q, Block b) {
  const int bi = static_cast<int>(b);
  if (p.is_zero() || q.is_zero()) fail(ErrorKind::ZeroInput, "resultant of a zero polynomial");
  const int m = p.degree()[bi], n = q.degree()[bi];
  if (m <= 0 || n <= 0) fail(ErrorKind::ZeroInput, "resultant needs positive degree in the block");
  auto pc = block_coefficients(p, b);
  auto qc = block_coefficients(q, b);
  MultiDeg rd{0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) rd[i] = i == bi ? 0 : n * p.degree()[i] + m * q.degree()[i];
  const int N = m + n;
  std::vector<std::vector<MPoly>> S(N, std::vector<MPoly>(N));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S[r][r + k] = pc[k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S[n + r][r + k] = qc[k];
  return poly_det(std::move(S), rd);
}

// ---------------------------------------------------------------------------
// Rank-one structure of trilinear forms

inline bool is_trilinear(const MPoly& p) { return p.degree() == MultiDeg{1, 1, 1, 0}; }

/// Coefficient tensor of a trilinear form: index i*4 + j*2 + k for s_i t_j u_k.
inline std::array<Rat, 8> trilinear_tensor(const MPoly& p) {
  if (!is_trilinear(p)) fail(ErrorKind::WrongDegree, "expected a trilinear form, got " + p.str());
  std::array<Rat, 8> T;
  for (auto& x : T) x = 0;
  for (const auto& [e, c] : p.terms()) {
    int i = e[0] ? 0 : 1, j = e[2] ? 0 : 1, k = e[4] ? 0 : 1;
    T[i * 4 + j * 2 + k] = c;
  }
  return T;
}

inline MPoly trilinear_from_tensor(const std::array<Rat, 8>& T) {
  Terms t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Exponent e{};
        e[i] = 1;
        e[2 + j] = 1;
        e[4 + k] = 1;
        terms::add_term(t, e, T[i * 4 + j * 2 + k]);
      }
  return MPoly::from_terms(std::move(t), {1, 1, 1, 0});
}

/// 2x4 matrix: rows indexed by the chosen block's variable, columns by the
/// monomials of the other two blocks in lex order.
inline Matrix<Rat> flattening(const MPoly& p, Block b) {
  auto T = trilinear_tensor(p);
  Matrix<Rat> M = zeros<Rat>(2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Rat& v = T[i * 4 + j * 2 + k];
        switch (b) {
          case Block::s: M[i][j * 2 + k] = v; break;
          case Block::t: M[j][i * 2 + k] = v; break;
          case Block::u: M[k][i * 2 + j] = v; break;
          default: fail(ErrorKind::WrongDegree, "flattening needs one of the blocks s, t, u");
        }
      }
  return M;
}

struct RankOneSplit {
  MPoly a, b, c;
  Rat lambda;  // a*b*c == lambda * p
};

inline RankOneSplit split_rank_one(const MPoly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroInput, "cannot split the zero form");
  for (Block b : {Block::s, Block::t, Block::u})
    if (rank(flattening(p, b)) > 1) fail(ErrorKind::Indecomposable, p.str() + " is not a product of linear forms");
  auto T = trilinear_tensor(p);
  int i0 = 0, j0 = 0, k0 = 0;
  for (int idx = 0; idx < 8; ++idx)
    if (!is_zero(T[idx])) {
      i0 = idx / 4;
      j0 = (idx / 2) % 2;
      k0 = idx % 2;
      break;
    }
  auto lin = [](Block b, const Rat& c0, const Rat& c1) {
    return MPoly::var(b, 0) * c0 + MPoly::var(b, 1) * c1;
  };
  RankOneSplit r;
  r.a = lin(Block::s, T[0 * 4 + j0 * 2 + k0], T[1 * 4 + j0 * 2 + k0]);
  r.b = lin(Block::t, T[i0 * 4 + 0 * 2 + k0], T[i0 * 4 + 1 * 2 + k0]);
  r.c = lin(Block::u, T[i0 * 4 + j0 * 2 + 0], T[i0 * 4 + j0 * 2 + 1]);
  const Rat& pivot = T[i0 * 4 + j0 * 2 + k0];
  r.lambda = pivot * pivot;
  return r;
}

}  // namespace linecong
