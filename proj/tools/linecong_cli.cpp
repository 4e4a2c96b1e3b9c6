// linecong: analyze, invert and check trilinear birational maps.
//
// Exit codes:
//   0  success
//   1  unreadable file or parse error
//   2  map is not birational (or not dominant)
//   3  map is birational but no class label could be assigned
//   4  check: a certificate, composition test or reference comparison failed

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "linecong/io.hpp"

using namespace linecong;

namespace {

enum Exit { kOk = 0, kInput = 1, kNotBirational = 2, kUnclassified = 3, kCheckFailed = 4 };

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Io:
    case ErrorKind::SyntaxError:
    case ErrorKind::NotHomogeneous:
    case ErrorKind::UnknownVariable:
    case ErrorKind::DegreeMismatch:
    case ErrorKind::AllZero:
    case ErrorKind::WrongDegree:
      return kInput;
    case ErrorKind::NotBirational:
    case ErrorKind::NotDominant:
      return kNotBirational;
    default:
      return kUnclassified;
  }
}

std::string family_line(const FamilyReport& f) {
  std::string s = "  " + f.name + ": ";
  if (!f.cls) return s + "unclassified (" + f.error + ")";
  const CongruenceClass& c = *f.cls;
  s += std::string(to_string(c.label)) + ", span " + std::to_string(c.span_dim);
  if (c.pencil) s += ", discriminant " + c.pencil->discriminant.get_str();
  for (std::size_t i = 0; i < c.focal.size(); ++i) {
    const FocalVariety& v = c.focal[i];
    s += "\n    " + std::string(to_string(v.kind));
    if (!v.name.empty()) s += " " + v.name;
    if (v.kind == FocalKind::FocalPoint) {
      s += " " + vec_str(v.point);
    } else if (v.kind == FocalKind::Conic) {
      s += " in plane " + vec_str(v.plane);
    } else {
      for (const auto& l : v.lines) s += " " + ext_vec_str(l);
      if (v.d != 1) s += " over d = " + v.d.get_str();
    }
    s += "  [" + c.certificates[i].str() + "]";
  }
  return s;
}

void print_report(const Report& r, const MapFile& mf) {
  if (!mf.name.empty()) std::cout << "name: " << mf.name << "\n";
  std::cout << "type: " << type_str(r.info.type) << "  (factor order " << kFamilyNames[r.info.perm[0]]
            << kFamilyNames[r.info.perm[1]] << kFamilyNames[r.info.perm[2]] << ")\n";
  std::cout << "families:\n";
  for (const auto& f : r.families) std::cout << family_line(f) << "\n";
  if (r.config) {
    for (const auto& [n, l] : r.config->lines) std::cout << "  line " << n << " = " << ext_vec_str(l) << "\n";
    for (const auto& [n, p] : r.config->points) std::cout << "  point " << n << " = " << vec_str(p) << "\n";
    for (const auto& [n, p] : r.config->predicates)
      std::cout << "  " << n << ": " << (p.value ? "yes" : "no") << " (" << p.certificate << ")\n";
  }
  if (r.classified())
    std::cout << "label: " << r.label << "\n";
  else
    std::cout << "label: none (" << to_string(r.failure) << ": " << r.failure_message << ")\n";
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
  if (mf.expect && r.classified() && *mf.expect != r.label)
    std::cout << "warning: expected " << *mf.expect << "\n";
}

int cmd_analyze(const std::string& path, bool as_json, const std::string& plot_path) {
  MapFile mf = read_map_file(path);
  TrilinearMap m = mf.map();
  Report r = analyze(m);
  if (!plot_path.empty()) {
    std::ofstream out(plot_path);
    if (!out) fail(ErrorKind::Io, "cannot write " + plot_path);
    out << plot_csv(r);
  }
  if (as_json) {
    VerificationReport ver = verify_birational(m, r.info.inverse, 20, 42);
    std::cout << report_json(r, mf.name, ver).dump(2) << "\n";
  } else {
    print_report(r, mf);
  }
  return r.classified() ? kOk : kUnclassified;
}

int cmd_invert(const std::string& path) {
  MapFile mf = read_map_file(path);
  TypeInfo info = detect_type(mf.map());
  std::cout << "type: " << type_str(info.type) << "\n";
  const char* keys[3] = {"inverse_s", "inverse_t", "inverse_u"};
  for (int k = 0; k < 3; ++k)
    std::cout << keys[k] << ": " << info.inverse.comp[k][0].str() << " ; " << info.inverse.comp[k][1].str() << "\n";
  int code = kOk;
  for (int k = 0; k < 3; ++k) {
    if (!mf.inverse[k]) continue;
    auto M = pair_equivalence(*mf.inverse[k], info.inverse.comp[k]);
    if (M) {
      std::cout << "equivalence_" << kBlockNames[k] << ": reference = [[" << (*M)[0][0] << ", " << (*M)[0][1]
                << "], [" << (*M)[1][0] << ", " << (*M)[1][1] << "]] * computed\n";
    } else {
      std::cout << "equivalence_" << kBlockNames[k] << ": none, reference differs\n";
      code = kCheckFailed;
    }
  }
  return code;
}

int cmd_check(const std::string& path, int samples, std::uint64_t seed) {
  MapFile mf = read_map_file(path);
  TrilinearMap m = mf.map();
  Report r = analyze(m);
  bool ok = true;
  auto line = [&](bool good, const std::string& what) {
    std::cout << (good ? "pass " : "FAIL ") << what << "\n";
    ok = ok && good;
  };

  const InverseMap inv = mf.has_inverse() ? mf.inverse_map() : r.info.inverse;
  VerificationReport ver = verify_birational(m, inv, samples, seed);
  line(ver.ok(), std::string("composition ") + (mf.has_inverse() ? "(file inverse) " : "(computed inverse) ") +
                     std::to_string(ver.passed) + "/" + std::to_string(ver.samples));
  const std::size_t shown = std::min<std::size_t>(ver.failures.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) std::cout << "  witness: " << ver.failures[i] << "\n";
  if (ver.failures.size() > shown) std::cout << "  ... " << ver.failures.size() - shown << " more\n";

  for (const auto& f : r.families) {
    line(f.klein_zero, f.name + " Klein form vanishes identically");
    if (f.syzygy_agrees) line(*f.syzygy_agrees, f.name + " syzygy and biquadratic parameterizations agree");
    if (!f.cls) continue;
    for (std::size_t i = 0; i < f.cls->focal.size(); ++i)
      line(f.cls->certificates[i].ok,
           f.name + " " + std::string(to_string(f.cls->focal[i].kind)) + " incidence: " + f.cls->certificates[i].str());
  }
  for (const auto& [k, l] : mf.candidates) {
    Certificate c = incidence_certificate(r.families[k].param, FocalVariety::real_line(l));
    line(!c.ok && c.witness.has_value(), std::string(kFamilyNames[k]) + " candidate " + vec_str(l) + " rejected: " + c.str());
  }
  if (r.classified())
    std::cout << "label: " << r.label << "\n";
  else
    std::cout << "label: none (" << to_string(r.failure) << ": " << r.failure_message << ")\n";
  if (!ok) return kCheckFailed;
  return r.classified() ? kOk : kUnclassified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze trilinear birational maps (P1)^3 -> P3 and their line congruences"};
  app.require_subcommand(1);

  std::string path, plot_path;
  bool as_json = false;
  int samples = 100;
  std::uint64_t seed = 42;

  auto* analyze_cmd = app.add_subcommand("analyze", "Type, congruence classes and label of a map");
  analyze_cmd->add_option("file", path, "Map file")->required();
  analyze_cmd->add_flag("--json", as_json, "Print the report as JSON");
  analyze_cmd->add_option("--plot-data", plot_path, "Write sampled lines and focal curves as CSV");

  auto* invert_cmd = app.add_subcommand("invert", "Print the inverse map");
  invert_cmd->add_option("file", path, "Map file")->required();

  auto* check_cmd = app.add_subcommand("check", "Sampled composition test and symbolic certificates");
  check_cmd->add_option("file", path, "Map file")->required();
  check_cmd->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", seed, "Random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) return cmd_analyze(path, as_json, plot_path);
    if (*invert_cmd) return cmd_invert(path);
    return cmd_check(path, samples, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
}
