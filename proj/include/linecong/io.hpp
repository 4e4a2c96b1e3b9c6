#pragma once

// Map files, JSON reports and CSV plot data.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "linecong/classify.hpp"

namespace linecong {

/// Plain-text map description:
///   name: <text>
///   f0: <expr> ... f3: <expr>
///   expect: <label>
///   inverse_s: <expr> ; <expr>     (also inverse_t, inverse_u)
///   candidate: <S|T|U> <six integers>
/// with '#' comments.
struct MapFile {
  std::string name;
  std::array<std::string, 4> f;
  std::optional<std::string> expect;
  std::array<std::optional<std::array<MPoly, 2>>, 3> inverse;
  std::vector<std::pair<int, Line>> candidates;  // deliberately wrong focal lines

  TrilinearMap map() const { return parse_map(f); }
  bool has_inverse() const { return inverse[0] && inverse[1] && inverse[2]; }
  InverseMap inverse_map() const {
    InverseMap inv;
    for (int k = 0; k < 3; ++k) inv.comp[k] = *inverse[k];
    return inv;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// what() without the leading "Kind: ".
inline std::string message(const Error& e) {
  std::string w = e.what(), k(to_string(e.kind()));
  return w.rfind(k + ": ", 0) == 0 ? w.substr(k.size() + 2) : w;
}

inline int family_index(const std::string& s) {
  for (int k = 0; k < 3; ++k)
    if (s == kFamilyNames[k]) return k;
  return -1;
}

}  // namespace detail

inline MapFile parse_map_file(const std::string& text, const std::string& origin = "<input>") {
  MapFile mf;
  std::array<bool, 4> seen{};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno) + ": ";
    std::string line = raw.substr(0, raw.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(ErrorKind::SyntaxError, where + "expected 'key: value'");
    std::string key = detail::trim(line.substr(0, colon)), value = detail::trim(line.substr(colon + 1));
    try {
      if (key.size() == 2 && key[0] == 'f' && key[1] >= '0' && key[1] <= '3') {
        int i = key[1] - '0';
        if (seen[i]) fail(ErrorKind::SyntaxError, "duplicate entry " + key);
        seen[i] = true;
        MPoly p = parse_poly(value, Signature::params());
        if (!p.is_zero() && p.degree() != kTrilinear)
          fail(ErrorKind::NotHomogeneous, key + " = " + p.str() + " is not of multidegree (1,1,1) in (s,t,u)");
        mf.f[i] = value;
      } else if (key == "name") {
        mf.name = value;
      } else if (key == "expect") {
        mf.expect = value;
      } else if (key.rfind("inverse_", 0) == 0 && key.size() == 9) {
        int k = key[8] == 's' ? 0 : key[8] == 't' ? 1 : key[8] == 'u' ? 2 : -1;
        auto semi = value.find(';');
        if (k < 0 || semi == std::string::npos) fail(ErrorKind::SyntaxError, "expected 'inverse_<s|t|u>: <expr> ; <expr>'");
        mf.inverse[k] = std::array<MPoly, 2>{parse_poly(detail::trim(value.substr(0, semi)), Signature::points()),
                                             parse_poly(detail::trim(value.substr(semi + 1)), Signature::points())};
      } else if (key == "candidate") {
        std::istringstream vs(value);
        std::string fam;
        vs >> fam;
        Line l;
        for (auto& x : l) {
          std::string tok;
          if (!(vs >> tok)) fail(ErrorKind::SyntaxError, "candidate needs a family and six numbers");
          x = parse_rat(tok);
        }
        int k = detail::family_index(fam);
        if (k < 0) fail(ErrorKind::SyntaxError, "unknown family '" + fam + "'");
        mf.candidates.push_back({k, l});
      } else {
        fail(ErrorKind::SyntaxError, "unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      fail(e.kind(), where + detail::message(e));
    }
  }
  for (int i = 0; i < 4; ++i)
    if (!seen[i]) fail(ErrorKind::SyntaxError, origin + ": missing entry f" + std::to_string(i));
  return mf;
}

inline MapFile read_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map_file(ss.str(), path);
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

inline json to_json(const Rat& x) { return x.get_str(); }
inline json to_json(const Ext& x) { return x.str(); }

template <class V>
json vec_json(const V& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json line_json(const Line6<Ext>& l) {
  if (ext_line_rational(l)) return vec_json(normalize(rational_part(l)));
  return vec_json(normalize_ext(l));
}

inline json matrix_json(const Matrix<Rat>& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(vec_json(r));
  return a;
}

inline json focal_json(const FocalVariety& f, const Certificate& c) {
  json j;
  j["kind"] = std::string(to_string(f.kind));
  if (!f.name.empty()) j["name"] = f.name;
  if (f.kind == FocalKind::Conic) {
    j["plane"] = vec_json(f.plane);
    j["form"] = matrix_json(f.form);
  } else if (f.kind == FocalKind::FocalPoint) {
    j["point"] = vec_json(f.point);
  } else {
    json ls = json::array();
    for (const auto& l : f.lines) ls.push_back(line_json(l));
    j["lines"] = ls;
    if (f.d != 1) j["d"] = to_json(f.d);
  }
  j["certificate"] = c.str();
  return j;
}

inline json family_json(const FamilyReport& f) {
  json j;
  j["name"] = f.name;
  j["bidegree"] = {std::to_string(f.param.bidegree[0]), std::to_string(f.param.bidegree[1])};
  j["klein_form_zero"] = f.klein_zero;
  j["syzygy_param_agrees"] = f.syzygy_agrees ? json(*f.syzygy_agrees) : json(nullptr);
  if (!f.cls) {
    j["error"] = f.error;
    return j;
  }
  const CongruenceClass& c = *f.cls;
  j["class"] = std::string(to_string(c.label));
  j["span_dim"] = std::to_string(c.span_dim);
  if (c.pencil) {
    j["pencil"] = {{"A", to_json(c.pencil->A)},
                   {"B", to_json(c.pencil->B)},
                   {"C", to_json(c.pencil->C)},
                   {"discriminant", to_json(c.pencil->discriminant)}};
  }
  json fs = json::array();
  for (std::size_t i = 0; i < c.focal.size(); ++i) fs.push_back(focal_json(c.focal[i], c.certificates[i]));
  j["focal"] = fs;
  return j;
}

inline std::string inverse_str(const std::array<MPoly, 2>& c) { return "(" + c[0].str() + " : " + c[1].str() + ")"; }

inline json report_json(const Report& r, const std::string& name, const std::optional<VerificationReport>& ver) {
  json j;
  j["name"] = name;
  json m;
  for (int i = 0; i < 4; ++i) m["f" + std::to_string(i)] = r.map.f[i].str();
  j["map"] = m;
  j["type"] = type_str(r.info.type);
  j["degrees"] = {std::to_string(r.info.degrees[0]), std::to_string(r.info.degrees[1]), std::to_string(r.info.degrees[2])};
  j["permutation"] = {std::to_string(r.info.perm[0]), std::to_string(r.info.perm[1]), std::to_string(r.info.perm[2])};
  json sp;
  sp["available"] = r.data.has_value();
  if (r.data) {
    sp["d"] = to_json(r.data->d);
    sp["general"] = r.data->general;
    json planes = json::object();
    for (const auto& [n, p] : r.data->planes) planes[n] = vec_json(normalize_ext(p));
    sp["planes"] = planes;
  } else {
    sp["note"] = r.data_note;
  }
  j["special_planes"] = sp;
  json fams = json::array();
  for (const auto& f : r.families) fams.push_back(family_json(f));
  j["families"] = fams;
  if (r.config) {
    json cfg;
    json lines = json::object(), points = json::object(), preds = json::object();
    for (const auto& [n, l] : r.config->lines) lines[n] = line_json(l);
    for (const auto& [n, p] : r.config->points) points[n] = vec_json(p);
    for (const auto& [n, p] : r.config->predicates) preds[n] = {{"value", p.value}, {"certificate", p.certificate}};
    cfg["lines"] = lines;
    cfg["points"] = points;
    cfg["predicates"] = preds;
    j["configuration"] = cfg;
  }
  j["label"] = r.classified() ? json(r.label) : json(nullptr);
  j["status"] = r.classified() ? "ok" : std::string(to_string(r.failure));
  if (!r.classified()) j["message"] = r.failure_message;
  json inv;
  for (int k = 0; k < 3; ++k) inv[std::string(kBlockNames[k])] = inverse_str(r.info.inverse.comp[k]);
  json verification;
  verification["inverse"] = inv;
  if (ver) {
    verification["composition"] = {{"samples", std::to_string(ver->samples)},
                                   {"passed", std::to_string(ver->passed)},
                                   {"failures", ver->failures}};
  }
  j["verification"] = verification;
  j["warnings"] = r.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Plot data: affine segments clipped to a box in the chart h.x = 1, h0 = 1,
// with affine coordinates (x1, x2, x3) / h.x

namespace detail {

struct Seg {
  double a[3], b[3];
};

inline Pt to_chart(const Pt& x, const Plane& h) { return {h[0] * x[0] + h[1] * x[1] + h[2] * x[2] + h[3] * x[3], x[1], x[2], x[3]}; }

/// Clip the affine line through p, q (chart coordinates, p0 or q0 nonzero) to the box [-B, B]^3.
inline std::optional<Seg> clip(const Pt& p, const Pt& q, double B) {
  // point(s) = P + s D in affine coordinates
  double P[3], D[3];
  double p0 = p[0].get_d(), q0 = q[0].get_d();
  const Pt& base = std::abs(p0) >= std::abs(q0) ? p : q;
  const Pt& other = std::abs(p0) >= std::abs(q0) ? q : p;
  double b0 = base[0].get_d(), o0 = other[0].get_d();
  if (b0 == 0) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    P[i] = base[i + 1].get_d() / b0;
    D[i] = other[i + 1].get_d() - o0 * P[i];
  }
  double lo = -1e300, hi = 1e300;
  for (int i = 0; i < 3; ++i) {
    if (D[i] == 0) {
      if (std::abs(P[i]) > B) return std::nullopt;
      continue;
    }
    double s1 = (-B - P[i]) / D[i], s2 = (B - P[i]) / D[i];
    lo = std::max(lo, std::min(s1, s2));
    hi = std::min(hi, std::max(s1, s2));
  }
  if (lo > hi) return std::nullopt;
  Seg s;
  for (int i = 0; i < 3; ++i) {
    s.a[i] = P[i] + lo * D[i];
    s.b[i] = P[i] + hi * D[i];
  }
  return s;
}

inline std::optional<Seg> clip_line(const Line& l, const Plane& h, double B) {
  auto pts = points_on(l);
  return clip(to_chart(pts[0], h), to_chart(pts[1], h), B);
}

inline std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

/// Affine image of a finite point, written twice to fill both endpoint columns.
inline std::string point_cols(const Pt& x, const Plane& h) {
  Pt y = to_chart(x, h);
  std::string s;
  for (int rep = 0; rep < 2; ++rep)
    for (int k = 1; k < 4; ++k) s += "," + num(Rat(y[k] / y[0]).get_d());
  return s;
}

/// First h in a fixed list with every focal point off h = 0 and no conic in that plane.
inline Plane plot_chart(const Report& r) {
  static const long cand[][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
                                 {1, 1, 1, 1}, {1, -1, 1, 0}, {1, 2, -1, 3}};
  for (const auto& c : cand) {
    Plane h{Rat(c[0]), Rat(c[1]), Rat(c[2]), Rat(c[3])};
    bool ok = true;
    for (const auto& f : r.families) {
      if (!f.cls) continue;
      for (const auto& fv : f.cls->focal) {
        if (fv.kind == FocalKind::FocalPoint) ok = ok && !is_zero(to_chart(fv.point, h)[0]);
        if (fv.kind == FocalKind::Conic) ok = ok && !proportional(fv.plane, h);
      }
    }
    if (ok) return h;
  }
  return {Rat(1), Rat(0), Rat(0), Rat(0)};
}

}  // namespace detail

/// family,kind,t0,t1,u0,u1,x0,y0,z0,x1,y1,z1 rows: member lines on a parameter
/// grid, focal lines, conic points (member lines meeting the conic plane) and focal points.
/// The parameter columns hold the family's two surviving factors in order.
inline std::string plot_csv(const Report& r, int grid = 4, double box = 10.0) {
  const Plane c = detail::plot_chart(r);
  std::ostringstream os;
  os << "family,kind,t0,t1,u0,u1,x0,y0,z0,x1,y1,z1\n";
  for (const auto& f : r.families) {
    const FocalVariety* conic = f.cls ? f.cls->find(FocalKind::Conic) : nullptr;
    for (int i = -grid; i <= grid; ++i)
      for (int j = -grid; j <= grid; ++j) {
        ProjVec p{Rat(i), Rat(grid)}, q{Rat(j), Rat(grid)};
        Line l = f.param.at(p, q);
        if (is_zero_vec(l) || !is_zero(klein_form(l))) continue;
        std::string params = p[0].get_str() + "," + p[1].get_str() + "," + q[0].get_str() + "," + q[1].get_str();
        if (auto s = detail::clip_line(l, c, box)) {
          os << f.name << ",line," << params;
          for (double v : s->a) os << "," << detail::num(v);
          for (double v : s->b) os << "," << detail::num(v);
          os << "\n";
        }
        if (conic) {
          Pt x = contract(l, conic->plane);
          if (!is_zero_vec(x) && !is_zero(detail::to_chart(x, c)[0])) os << f.name << ",conic_point," << params << detail::point_cols(x, c) << "\n";
        }
      }
    if (!f.cls) continue;
    for (const auto& fv : f.cls->focal) {
      if (fv.kind == FocalKind::FocalPoint) {
        if (!is_zero(detail::to_chart(fv.point, c)[0])) os << f.name << ",focal_point,,,," << detail::point_cols(fv.point, c) << "\n";
      } else if (fv.kind == FocalKind::RealLine || fv.kind == FocalKind::DoubleLine) {
        for (const auto& l : fv.lines) {
          if (!ext_line_rational(l)) continue;
          if (auto s = detail::clip_line(rational_part(l), c, box)) {
            os << f.name << "," << (fv.kind == FocalKind::DoubleLine ? "double_focal_line" : "focal_line") << ",,,,";
            for (double v : s->a) os << "," << detail::num(v);
            for (double v : s->b) os << "," << detail::num(v);
            os << "\n";
          }
        }
      }
    }
  }
  return os.str();
}

}  // namespace linecong
