#pragma once

// Per-family congruence classes and the class label of the whole map, with
// the configuration predicates that decide it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linecong/congruence.hpp"

namespace linecong {

enum class CongruenceLabel { A1_hyperbolic, A2_elliptic, A3_parabolic, B_quadratic, C_degenerate };

inline std::string_view to_string(CongruenceLabel l) {
  switch (l) {
    case CongruenceLabel::A1_hyperbolic: return "A1_hyperbolic";
    case CongruenceLabel::A2_elliptic: return "A2_elliptic";
    case CongruenceLabel::A3_parabolic: return "A3_parabolic";
    case CongruenceLabel::B_quadratic: return "B_quadratic";
    case CongruenceLabel::C_degenerate: return "C_degenerate";
  }
  return "?";
}

struct CongruenceClass {
  CongruenceLabel label = CongruenceLabel::A1_hyperbolic;
  std::vector<FocalVariety> focal;
  std::vector<Certificate> certificates;  // parallel to focal
  std::size_t span_dim = 0;
  std::optional<PencilClassification> pencil;

  /// Focal lines as lead-one vectors (both members of a conjugate pair, the double line once).
  std::vector<Line6<Ext>> lines() const {
    std::vector<Line6<Ext>> out;
    for (const auto& f : focal)
      if (f.kind != FocalKind::Conic && f.kind != FocalKind::FocalPoint)
        for (const auto& l : f.lines) out.push_back(l);
    return out;
  }
  const FocalVariety* find(FocalKind k) const {
    for (const auto& f : focal)
      if (f.kind == k) return &f;
    return nullptr;
  }
};

inline bool same_line(const Line6<Ext>& a, const Line6<Ext>& b) { return normalize_ext(a) == normalize_ext(b); }

inline Line6<Ext> ext_line(const Line& l) {
  Line6<Ext> e;
  for (int i = 0; i < 6; ++i) e[i] = Ext(l[i]);
  return normalize_ext(e);
}

inline std::string ext_vec_str(const Line6<Ext>& l) {
  if (ext_line_rational(l)) return vec_str(normalize(rational_part(l)));
  return vec_str(l);
}

namespace detail {

inline void certify_all(CongruenceClass& cls, const CongruenceParam& C) {
  for (const auto& f : cls.focal) {
    cls.certificates.push_back(incidence_certificate(C, f));
    if (!cls.certificates.back().ok)
      fail(ErrorKind::Unclassifiable, std::string(to_string(f.kind)) + " candidate of family " +
                                          std::string(kFamilyNames[C.family]) + " " + cls.certificates.back().str());
  }
}

}  // namespace detail

/// Class of one congruence. `canonical` is the family's index after sorting
/// factors by inverse degree; it selects the focal conic of the special-plane data.
inline CongruenceClass classify_family(const CongruenceParam& C, const SpecialPlaneData* data, int canonical) {
  CongruenceClass cls;
  auto sp = span(C);
  cls.span_dim = sp.size();
  const std::string fam(kFamilyNames[C.family]);
  if (sp.size() == 4) {
    auto pc = focal_lines_linear(C);
    cls.pencil = pc;
    switch (pc.kind) {
      case PencilKind::Hyperbolic:
        cls.label = CongruenceLabel::A1_hyperbolic;
        for (const auto& l : pc.lines) {
          FocalVariety f;
          f.lines = {normalize_ext(l)};
          f.d = pc.d;
          cls.focal.push_back(f);
        }
        break;
      case PencilKind::Elliptic: {
        cls.label = CongruenceLabel::A2_elliptic;
        FocalVariety f;
        f.kind = FocalKind::ConjugateLinePair;
        f.d = pc.d;
        for (const auto& l : pc.lines) f.lines.push_back(normalize_ext(l));
        cls.focal.push_back(f);
        break;
      }
      case PencilKind::Parabolic:
        cls.label = CongruenceLabel::A3_parabolic;
        cls.focal.push_back(FocalVariety::real_line(pc.rational_lines.at(0), FocalKind::DoubleLine));
        break;
      case PencilKind::Degenerate:
        fail(ErrorKind::Unclassifiable, "family " + fam + ": the polar pencil lies on the Klein quadric");
    }
  } else if (sp.size() == 3) {
    FocalVariety f;
    f.kind = FocalKind::FocalPoint;
    f.point = focal_point(C);
    cls.label = CongruenceLabel::C_degenerate;
    cls.focal.push_back(f);
  } else if (sp.size() == 5) {
    Line v = *polar_point(C);
    if (!is_zero(klein_form(v)))
      fail(ErrorKind::Unclassifiable, "family " + fam + ": polar point " + vec_str(v) + " is not a line");
    FocalVariety line = FocalVariety::real_line(v);
    FocalVariety conic;
    if (data) {
      for (const auto& [name, l] : covector_lines(*data))
        if (same_line(l, line.lines[0])) line.name = name;
      if (line.name.empty())
        fail(ErrorKind::Unclassifiable, "family " + fam + ": focal line " + vec_str(v) + " matches no special-plane line");
      try {
        conic = focal_conic(*data, canonical);
      } catch (const Error& e) {
        fail(ErrorKind::Unclassifiable, "family " + fam + ": " + e.what());
      }
    } else {
      auto sc = sampled_conic(C, v);
      if (!sc) fail(ErrorKind::Unclassifiable, "family " + fam + ": second focal points do not lie on a plane conic");
      conic = *sc;
    }
    Pt X = contract(v, conic.plane);
    if (is_zero_vec(X) || !is_zero(quadric_value(conic.form, X)))
      fail(ErrorKind::Unclassifiable, "family " + fam + ": the focal line does not meet the conic");
    cls.label = CongruenceLabel::B_quadratic;
    cls.focal = {line, conic};
  } else {
    fail(ErrorKind::Unclassifiable, "family " + fam + " spans a subspace of dimension " + std::to_string(sp.size()));
  }
  detail::certify_all(cls, C);
  return cls;
}

// ---------------------------------------------------------------------------
// Configuration predicates

struct Predicate {
  bool value = false;
  std::string certificate;  // the exact value or rank that decides it
};

struct Configuration {
  std::map<std::string, Line6<Ext>> lines;  // letters of the normal form
  std::map<std::string, Pt> points;         // O, P
  std::map<std::string, Predicate> predicates;
  std::map<std::string, int> counts;        // parabolic families and the like
  std::optional<FocalVariety> conic;
  std::vector<std::string> warnings;
};

namespace detail {

inline bool proportional_matrix(const Matrix<Rat>& a, const Matrix<Rat>& b) {
  std::vector<Rat> x, y;
  for (const auto& r : a) x.insert(x.end(), r.begin(), r.end());
  for (const auto& r : b) y.insert(y.end(), r.begin(), r.end());
  return proportional(x, y);
}

[[noreturn]] inline void no_match(const std::string& why) { fail(ErrorKind::NoMatch, why); }

inline Predicate meet_predicate(const Line6<Ext>& l, const Line6<Ext>& m) {
  Ext v = klein_pairing(l, m);
  return {is_zero(v), "pairing " + v.str()};
}

inline Line6<Ext> join(const Pt& p, const Pt& q) { return ext_line(normalize(line_from_points(p, q))); }

inline bool ext_point_on_line(const Pt& p, const Line6<Ext>& l) {
  Pt4<Ext> e;
  for (int i = 0; i < 4; ++i) e[i] = Ext(p[i]);
  return point_on_line(e, l);
}

inline std::optional<Pt> rational_meet(const Line6<Ext>& l, const Line6<Ext>& m) {
  if (!ext_line_rational(l) || !ext_line_rational(m)) return std::nullopt;
  auto p = meet_point(rational_part(l), rational_part(m));
  if (!p) return std::nullopt;
  return normalize(*p);
}

inline std::optional<Line6<Ext>> other_line(const CongruenceClass& c, const Line6<Ext>& l) {
  for (const auto& m : c.lines())
    if (!same_line(m, l)) return m;
  return std::nullopt;
}

inline std::vector<Line6<Ext>> common_lines(const CongruenceClass& a, const CongruenceClass& b) {
  std::vector<Line6<Ext>> out;
  for (const auto& l : a.lines())
    for (const auto& m : b.lines())
      if (same_line(l, m)) out.push_back(l);
  return out;
}

/// Letter from the special-plane data, or the fallback when there is none.
inline std::string line_name(const FocalVariety& l, const char* fallback) { return l.name.empty() ? fallback : l.name; }

inline bool is_linear_real(const CongruenceClass& c) {
  return c.label == CongruenceLabel::A1_hyperbolic || c.label == CongruenceLabel::A3_parabolic;
}

/// Letters of the special-plane data that disagree with the computed lines.
inline void cross_check(Configuration& cfg, const SpecialPlaneData* data) {
  if (!data) return;
  auto ref = covector_lines(*data);
  // members of a conjugate pair carry no order
  if (cfg.lines.count("x") && cfg.lines.count("y") && ref.count("x") && ref.count("y") &&
      same_line(cfg.lines["x"], ref["y"]) && same_line(cfg.lines["y"], ref["x"]))
    std::swap(ref["x"], ref["y"]);
  for (const auto& [name, l] : cfg.lines) {
    auto it = ref.find(name);
    if (it == ref.end()) continue;
    if (!same_line(it->second, l)) {
      bool elsewhere = false;
      for (const auto& [n2, l2] : ref) elsewhere = elsewhere || same_line(l2, l);
      cfg.warnings.push_back("line " + name + " = " + ext_vec_str(l) + " differs from the special-plane line " +
                             ext_vec_str(it->second) + (elsewhere ? " (matches another letter)" : ""));
    }
  }
}

inline void config_111(Configuration& cfg, const std::array<CongruenceClass, 3>& fam) {
  // family k carries the two letters other than letter k
  static const char* letter[3] = {"a", "b", "c"};
  std::array<std::optional<Line6<Ext>>, 3> L;
  auto assign = [&](int m, const Line6<Ext>& l) {
    if (L[m] && !same_line(*L[m], l))
      no_match(std::string("conflicting candidates for line ") + letter[m]);
    L[m] = l;
  };
  for (int k = 0; k < 3; ++k)
    if (fam[k].label != CongruenceLabel::A1_hyperbolic && fam[k].label != CongruenceLabel::C_degenerate)
      no_match(std::string("family ") + std::string(kFamilyNames[k]) + " is " + std::string(to_string(fam[k].label)) +
               "; type (1,1,1) allows only hyperbolic or degenerate families");
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      int m = 3 - j - k;
      const auto &F = fam[j], &G = fam[k];
      bool fl = F.label == CongruenceLabel::A1_hyperbolic, gl = G.label == CongruenceLabel::A1_hyperbolic;
      if (fl && gl) {
        auto common = common_lines(F, G);
        if (common.size() != 1)
          no_match("families " + std::string(kFamilyNames[j]) + " and " + std::string(kFamilyNames[k]) + " share " +
                   std::to_string(common.size()) + " focal lines");
        assign(m, common[0]);
        assign(k, *other_line(F, common[0]));
        assign(j, *other_line(G, common[0]));
      } else if (!fl && !gl) {
        const Pt& p = F.focal[0].point;
        const Pt& q = G.focal[0].point;
        if (p == q)
          no_match("families " + std::string(kFamilyNames[j]) + " and " + std::string(kFamilyNames[k]) +
                   " share the focal point " + vec_str(p));
        assign(m, join(p, q));
      } else {
        const CongruenceClass& lin = fl ? F : G;
        const Pt& p = (fl ? G : F).focal[0].point;
        int lin_idx = fl ? j : k, pt_idx = fl ? k : j;
        (void)lin_idx;
        std::vector<Line6<Ext>> through, off;
        for (const auto& l : lin.lines()) (ext_point_on_line(p, l) ? through : off).push_back(l);
        if (through.size() != 1)
          no_match("focal point " + vec_str(p) + " lies on " + std::to_string(through.size()) +
                   " focal lines of the adjacent hyperbolic family");
        assign(m, through[0]);
        assign(pt_idx, off[0]);
      }
    }
  for (int m = 0; m < 3; ++m) {
    if (!L[m]) no_match(std::string("line ") + letter[m] + " is not determined");
    cfg.lines[letter[m]] = *L[m];
  }
  const auto &a = *L[0], &b = *L[1], &c = *L[2];
  if (same_line(a, b) || same_line(a, c) || same_line(b, c)) no_match("the lines a, b, c are not distinct");
  cfg.predicates["a meets b"] = meet_predicate(a, b);
  cfg.predicates["a meets c"] = meet_predicate(a, c);
  cfg.predicates["b meets c"] = meet_predicate(b, c);
  // coplanar: the points of the three lines span a plane; concurrent: their planes span a point
  Matrix<Rat> pts, pls;
  for (const auto& l : {a, b, c}) {
    Line r = rational_part(l);
    for (const auto& p : points_on(r)) pts.emplace_back(p.begin(), p.end());
    for (const auto& p : planes_through(r)) pls.emplace_back(p.begin(), p.end());
  }
  std::size_t rp = rank(pts), rq = rank(pls);
  cfg.predicates["a, b, c coplanar"] = {rp == 3, "rank of points " + std::to_string(rp)};
  cfg.predicates["a, b, c concurrent"] = {rq == 3, "rank of planes " + std::to_string(rq)};
  // family k is degenerate exactly when its two letters meet
  const char* pair_of[3] = {"b meets c", "a meets c", "a meets b"};
  for (int k = 0; k < 3; ++k) {
    bool meets = cfg.predicates[pair_of[k]].value;
    bool degenerate = fam[k].label == CongruenceLabel::C_degenerate;
    if (meets != degenerate)
      no_match(std::string("family ") + std::string(kFamilyNames[k]) + " is " + std::string(to_string(fam[k].label)) +
               " but " + pair_of[k] + " is " + (meets ? "true" : "false"));
  }
}

inline void config_112(Configuration& cfg, const std::array<CongruenceClass, 3>& fam) {
  if (fam[2].label != CongruenceLabel::C_degenerate)
    no_match("the degree-two family " + std::string(kFamilyNames[2]) + " is " + std::string(to_string(fam[2].label)) +
             ", not degenerate");
  const Pt O = fam[2].focal[0].point;
  cfg.points["O"] = O;
  bool quad0 = fam[0].label == CongruenceLabel::B_quadratic, quad1 = fam[1].label == CongruenceLabel::B_quadratic;
  if (quad0 && quad1) {
    const FocalVariety& c0 = *fam[0].find(FocalKind::Conic);
    const FocalVariety& c1 = *fam[1].find(FocalKind::Conic);
    if (c0.plane != c1.plane || !proportional_matrix(c0.form, c1.form)) no_match("families S and T have different conics");
    cfg.conic = c0;
    std::size_t r = conic_rank(c0);
    cfg.predicates["conic smooth"] = {r == 3, "rank " + std::to_string(r)};
    bool in_plane = is_zero(c0.plane[0] * O[0] + c0.plane[1] * O[1] + c0.plane[2] * O[2] + c0.plane[3] * O[3]);
    Rat q = quadric_value(c0.form, O);
    cfg.predicates["O on c"] = {in_plane && is_zero(q), std::string(in_plane ? "O in plane, " : "O off plane, ") +
                                                          "form " + q.get_str()};
    for (int k = 0; k < 2; ++k) {
      const FocalVariety& l = *fam[k].find(FocalKind::RealLine);
      cfg.lines[line_name(l, k == 0 ? "a" : "b")] = l.lines[0];
      if (!ext_point_on_line(O, l.lines[0]))
        no_match("O does not lie on the focal line of " + std::string(kFamilyNames[k]));
    }
    if (cfg.lines.size() != 2) no_match("families S and T have the same focal line");
    const std::string s_name = line_name(*fam[0].find(FocalKind::RealLine), "a");
    if (s_name != "b")
      cfg.warnings.push_back("class table lists S with focal curves b and c; the computed S focal line is " + s_name +
                             " = " + ext_vec_str(cfg.lines[s_name]));
    return;
  }
  if (!is_linear_real(fam[0]) || !is_linear_real(fam[1]))
    no_match("families S and T are " + std::string(to_string(fam[0].label)) + " and " +
             std::string(to_string(fam[1].label)));
  // S carries b (through O) and x; T carries a (through O) and y
  auto split = [&](int k, const char* through_name, const char* other_name) {
    std::vector<Line6<Ext>> through, off;
    for (const auto& l : fam[k].lines()) (ext_point_on_line(O, l) ? through : off).push_back(l);
    if (through.size() != 1)
      no_match("O lies on " + std::to_string(through.size()) + " focal lines of " + std::string(kFamilyNames[k]));
    cfg.lines[through_name] = through[0];
    if (!off.empty()) cfg.lines[other_name] = off[0];
  };
  split(0, "b", "x");
  split(1, "a", "y");
  int parabolic = (fam[0].label == CongruenceLabel::A3_parabolic) + (fam[1].label == CongruenceLabel::A3_parabolic);
  cfg.counts["parabolic families"] = parabolic;
  cfg.predicates["conic smooth"] = {false, "S and T are linear"};
  if (cfg.lines.count("x") && cfg.lines.count("y")) {
    cfg.predicates["x meets y"] = meet_predicate(cfg.lines["x"], cfg.lines["y"]);
    if (!cfg.predicates["x meets y"].value) no_match("the lines x and y of the split conic are skew");
    bool distinct = true;
    std::vector<Line6<Ext>> all;
    for (const auto& [n, l] : cfg.lines) {
      for (const auto& m : all) distinct = distinct && !same_line(l, m);
      all.push_back(l);
    }
    cfg.predicates["four lines distinct"] = {distinct, std::to_string(all.size()) + " lines"};
    if (!distinct) no_match("the lines a, b, x, y are not distinct");
  }
}

inline void config_122(Configuration& cfg, const std::array<CongruenceClass, 3>& fam) {
  const auto &S = fam[0], &T = fam[1], &U = fam[2];
  if (S.label != CongruenceLabel::A1_hyperbolic && S.label != CongruenceLabel::A2_elliptic &&
      S.label != CongruenceLabel::A3_parabolic)
    no_match("family S is " + std::string(to_string(S.label)) + ", not linear");
  if (!is_linear_real(T) || !is_linear_real(U))
    no_match("families T and U must be hyperbolic or parabolic; found " + std::string(to_string(T.label)) + " and " +
             std::string(to_string(U.label)));
  bool tp = T.label == CongruenceLabel::A3_parabolic, up = U.label == CongruenceLabel::A3_parabolic;
  cfg.counts["parabolic families among T, U"] = tp + up;
  auto common = common_lines(T, U);
  if (common.size() != 1)
    no_match("families T and U share " + std::to_string(common.size()) + " focal lines");
  const Line6<Ext> a = common[0];
  cfg.lines["a"] = a;
  if (!tp) cfg.lines["c"] = *other_line(T, a);
  if (!up) cfg.lines["b"] = *other_line(U, a);
  if (tp && up) {
    cfg.predicates["double lines coincide"] = {true, ext_vec_str(a)};
    cfg.predicates["spans of T and U differ"] = {true, "distinct parameterizations"};
  }
  auto sl = S.lines();
  cfg.lines["x"] = sl.at(0);
  if (sl.size() > 1) cfg.lines["y"] = sl.at(1);
  cfg.predicates["x, y real"] = {S.label != CongruenceLabel::A2_elliptic,
                                 S.pencil ? "discriminant " + S.pencil->discriminant.get_str() : ""};
  for (const char* n : {"b", "c"})
    if (cfg.lines.count(n)) {
      auto p = meet_predicate(a, cfg.lines[n]);
      cfg.predicates[std::string("a meets ") + n] = p;
      if (p.value) no_match(std::string("the lines a and ") + n + " meet");
    }
  if (cfg.lines.count("b") && cfg.lines.count("c")) {
    auto bc = meet_predicate(cfg.lines["b"], cfg.lines["c"]);
    cfg.predicates["b meets c"] = bc;
    if (bc.value) {
      if (S.label == CongruenceLabel::A2_elliptic) no_match("b and c meet while x, y are non-real");
      auto P = rational_meet(cfg.lines["b"], cfg.lines["c"]);
      if (!P) no_match("b and c meet in no rational point");
      if (!ext_point_on_line(*P, cfg.lines["x"])) {
        if (cfg.lines.count("y") && ext_point_on_line(*P, cfg.lines["y"]))
          std::swap(cfg.lines["x"], cfg.lines["y"]);
        else
          no_match("the point b^c " + vec_str(*P) + " lies on neither x nor y");
      }
      cfg.points["P"] = *P;
      cfg.predicates["P = b^c on x"] = {true, vec_str(*P)};
    }
  }
}

inline void config_222(Configuration& cfg, const std::array<CongruenceClass, 3>& fam) {
  for (int k = 0; k < 3; ++k)
    if (fam[k].label != CongruenceLabel::B_quadratic)
      no_match("family " + std::string(kFamilyNames[k]) + " is " + std::string(to_string(fam[k].label)) +
               ", not quadratic");
  const FocalVariety& c = *fam[0].find(FocalKind::Conic);
  for (int k = 1; k < 3; ++k) {
    const FocalVariety& ck = *fam[k].find(FocalKind::Conic);
    if (ck.plane != c.plane || !proportional_matrix(ck.form, c.form)) no_match("the families have different conics");
  }
  cfg.conic = c;
  std::size_t r = conic_rank(c);
  cfg.predicates["conic smooth"] = {r == 3, "rank " + std::to_string(r)};
  if (r != 3) no_match("the common conic is singular");
  for (int k = 0; k < 3; ++k) {
    const FocalVariety& l = *fam[k].find(FocalKind::RealLine);
    cfg.lines[line_name(l, k == 0 ? "x" : k == 1 ? "y" : "z")] = l.lines[0];
  }
  if (cfg.lines.size() != 3) no_match("two families share a focal line");
  auto it = cfg.lines.begin();
  const auto& l0 = it->second;
  const auto& l1 = std::next(it)->second;
  const auto& l2 = std::next(it, 2)->second;
  auto P = rational_meet(l0, l1);
  if (!P || !ext_point_on_line(*P, l2)) no_match("the three focal lines are not concurrent");
  cfg.points["P"] = *P;
  bool in_plane = is_zero(c.plane[0] * (*P)[0] + c.plane[1] * (*P)[1] + c.plane[2] * (*P)[2] + c.plane[3] * (*P)[3]);
  Rat q = quadric_value(c.form, *P);
  cfg.predicates["P on c"] = {in_plane && is_zero(q),
                              std::string(in_plane ? "P in plane, " : "P off plane, ") + "form " + q.get_str()};
}

}  // namespace detail

/// Named lines, points and exact predicates of the map's focal configuration.
/// `fam` is in canonical factor order.
inline Configuration configuration_predicates(const std::array<int, 3>& type, const std::array<CongruenceClass, 3>& fam,
                                              const SpecialPlaneData* data) {
  Configuration cfg;
  if (type == std::array<int, 3>{1, 1, 1})
    detail::config_111(cfg, fam);
  else if (type == std::array<int, 3>{1, 1, 2})
    detail::config_112(cfg, fam);
  else if (type == std::array<int, 3>{1, 2, 2})
    detail::config_122(cfg, fam);
  else
    detail::config_222(cfg, fam);
  detail::cross_check(cfg, data);
  return cfg;
}

/// Class label from the decision tables.
inline std::string class_label(const std::array<int, 3>& type, const std::array<CongruenceClass, 3>& fam,
                                   Configuration& cfg) {
  const std::string prefix = type_str(type) + " class ";
  auto pred = [&](const std::string& n) {
    auto it = cfg.predicates.find(n);
    return it != cfg.predicates.end() && it->second.value;
  };
  if (type == std::array<int, 3>{1, 1, 1}) {
    int meets = pred("a meets b") + pred("a meets c") + pred("b meets c");
    if (meets < 3) return prefix + std::to_string(meets + 1);
    if (pred("a, b, c coplanar") && !pred("a, b, c concurrent")) return prefix + "4";
    detail::no_match(pred("a, b, c coplanar") ? "the lines a, b, c lie in one pencil"
                                              : "the lines a, b, c are concurrent but not coplanar");
  }
  if (type == std::array<int, 3>{1, 1, 2}) {
    if (cfg.conic) {
      if (!pred("conic smooth")) detail::no_match("quadratic families with a singular conic");
      return prefix + (pred("O on c") ? "2" : "1");
    }
    return prefix + std::to_string(3 + cfg.counts["parabolic families"]);
  }
  if (type == std::array<int, 3>{2, 2, 2}) return prefix + (pred("P on c") ? "2" : "1");

  int parabolic = cfg.counts["parabolic families among T, U"];
  CongruenceLabel s = fam[0].label;
  if (s == CongruenceLabel::A2_elliptic) return prefix + "b." + std::to_string(parabolic + 1);
  bool meet = pred("b meets c");
  bool sp = s == CongruenceLabel::A3_parabolic;
  std::string cls;
  if (parabolic == 0)
    cls = meet ? (sp ? "a.8" : "a.5") : (sp ? "a.3" : "a.1");
  else if (parabolic == 1)
    cls = sp ? "a.4" : "a.2";
  else
    cls = sp ? "a.7" : "a.6";
  if (cls == "a.3")
    cfg.warnings.push_back("class a.3 lists U with focal lines a and c; the computed U focal lines are a and b");
  if (parabolic == 2)
    cfg.warnings.push_back("both double lines equal a: matches the reading b->a, c->a of the second degeneration");
  return prefix + cls;
}

// ---------------------------------------------------------------------------
// Whole-map report

struct FamilyReport {
  std::string name;   // S, T, U in the map's own factor order
  int canonical = 0;  // index after sorting by inverse degree
  CongruenceParam param;
  bool klein_zero = false;
  std::optional<bool> syzygy_agrees;  // empty when the syzygy route is undefined
  std::optional<CongruenceClass> cls;
  std::string error;
};

struct Report {
  TrilinearMap map;
  TypeInfo info;
  std::optional<SpecialPlaneData> data;
  std::string data_note;
  std::array<FamilyReport, 3> families;  // original factor order
  std::optional<Configuration> config;
  std::string label;
  ErrorKind failure = ErrorKind::Unclassifiable;
  std::string failure_message;
  std::vector<std::string> warnings;

  bool classified() const { return !label.empty(); }
};

/// Full pipeline after parsing; NotBirational propagates, classification
/// failures are recorded in the report.
inline Report analyze(const TrilinearMap& m) {
  Report r;
  r.map = m;
  r.info = detect_type(m);
  const auto& perm = r.info.perm;
  try {
    r.data = special_planes(m, r.info);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateConfiguration && e.kind() != ErrorKind::NoSpecialPlanes &&
        e.kind() != ErrorKind::InconsistentData)
      throw;
    r.data_note = e.what();
  }
  if (r.data && !r.data->general)
    r.warnings.push_back("special planes violate the independence conditions of the normal form");
  const SpecialPlaneData* data = r.data ? &*r.data : nullptr;
  std::array<CongruenceClass, 3> canonical;
  bool all = true;
  for (int k = 0; k < 3; ++k) {
    const int orig = perm[k];
    FamilyReport& f = r.families[orig];
    f.name = std::string(kFamilyNames[orig]);
    f.canonical = k;
    try {
      f.param = biquadratic_param(m, orig);
      f.klein_zero = klein_form_poly(f.param).is_zero();
      try {
        f.syzygy_agrees = params_agree(f.param, syzygy_param(m, orig));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DependentSyzygies) throw;
      }
      f.cls = classify_family(f.param, data, k);
      canonical[k] = *f.cls;
    } catch (const Error& e) {
      f.error = std::string(to_string(e.kind())) + ": " + e.what();
      if (all) {
        r.failure = e.kind() == ErrorKind::PlanarCongruence || e.kind() == ErrorKind::DegenerateFamily
                        ? ErrorKind::Unclassifiable
                        : e.kind();
        r.failure_message = "family " + f.name + ": " + e.what();
      }
      all = false;
    }
  }
  if (!all) return r;
  try {
    r.config = configuration_predicates(r.info.type, canonical, data);
    r.label = class_label(r.info.type, canonical, *r.config);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoMatch) throw;
    r.failure = ErrorKind::NoMatch;
    r.failure_message = e.what();
    r.label.clear();
  }
  if (r.config)
    for (const auto& w : r.config->warnings) r.warnings.push_back(w);
  return r;
}

}  // namespace linecong
