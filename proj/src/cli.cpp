#include "troplin/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <ostream>
#include <sstream>

#include "troplin/io.hpp"

namespace troplin::cli {

using io::Json;

ColorMode color_mode_from_env() {
  const char* v = std::getenv("TROPLIN_COLOR");
  if (!v) return ColorMode::automatic;
  const std::string s(v);
  if (s == "always") return ColorMode::always;
  if (s == "never") return ColorMode::never;
  return ColorMode::automatic;
}

namespace {

struct Output {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  bool color = false;

  std::string paint(std::string_view text, const char* code) const {
    if (!color) return std::string(text);
    return std::string("\033[") + code + "m" + std::string(text) + "\033[0m";
  }
  std::string status(CheckStatus s) const {
    switch (s) {
      case CheckStatus::pass: return paint("PASS", "32");
      case CheckStatus::fail: return paint("FAIL", "31");
      case CheckStatus::skipped: return paint("SKIP", "33");
    }
    return {};
  }
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::WrongAmbient:
    case ErrorCode::UnknownGenerator:
    case ErrorCode::UnsupportedManifoldKind:
    case ErrorCode::NonPositiveParameter:
    case ErrorCode::DegenerateLattice:
    case ErrorCode::NotUnimodular:
    case ErrorCode::ZeroVector:
      return usage_error;
    default:
      return check_failed;
  }
}

std::string format(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string format(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string format(const ZeroCycle& z) {
  if (z.empty()) return "0";
  std::string s;
  for (const auto& t : z.terms()) {
    const bool neg = t.multiplicity < 0;
    const auto m = neg ? -t.multiplicity : t.multiplicity;
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (m != 1) s += std::to_string(m);
    s += "[" + format(t.point) + "]";
  }
  return s;
}

// dx, dy, dz up to dimension 3, numbered coordinates beyond.
std::string differential(std::size_t i, std::size_t dim) {
  if (dim <= 3) return std::string("d") + "xyz"[i];
  return "dx" + std::to_string(i + 1);
}

std::string format(const TropicalForm& f) {
  auto subsets = combinations(f.dim, f.degree);
  std::string s;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (f.coefficients[i] == 0) continue;
    if (!s.empty()) s += f.coefficients[i] < 0 ? " - " : " + ";
    else if (f.coefficients[i] < 0) s += "-";
    Integer c = abs(f.coefficients[i]);
    if (c != 1 || subsets[i].empty()) s += to_string(c);
    for (std::size_t k = 0; k < subsets[i].size(); ++k)
      s += (k ? "^" : "") + differential(subsets[i][k], f.dim);
  }
  return s.empty() ? "0" : s;
}

void print_report(const Output& o, std::ostream& os, const Report& r, const std::string& title) {
  os << title << "\n";
  for (const auto& c : r.checks) {
    os << "  " << o.status(c.status) << "  " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << "  result: " << (r.passed() ? o.paint("PASS", "32") : o.paint("FAIL", "31")) << "\n";
}

// Curve files may hold an abstract curve or a parametrized one.
Report validate_document(const Json& j) {
  if (io::is_parametrized_curve(j)) return validate_parametrized(io::parse_parametrized_curve(j));
  if (j.contains("manifold")) return validate_parametrized(io::parse_parametrized_curve(j));
  return validate_abstract(io::parse_abstract_curve(j));
}

AbstractCurve abstract_of(const Json& j) {
  if (j.contains("manifold")) return io::parse_parametrized_curve(j).abstract;
  return io::parse_abstract_curve(j);
}

struct FileOutcome {
  int code = ok;
  std::string text;
  Json json;
};

FileOutcome validate_file(const Output& o, const std::string& path) {
  FileOutcome r;
  try {
    Report rep = validate_document(io::read_file(path));
    std::ostringstream os;
    print_report(o, os, rep, path + ": " + rep.subject);
    r.text = os.str();
    r.json = io::to_json(rep);
    r.code = rep.passed() ? ok : check_failed;
  } catch (const Error& e) {
    r.code = exit_code_for(e);
    r.text = path + ": error: " + e.what() + "\n";
    r.json = {{"status", "error"}, {"error", to_string(e.code())}, {"message", e.what()}};
  } catch (const Json::exception& e) {
    r.code = usage_error;
    r.text = path + ": error: " + e.what() + "\n";
    r.json = {{"status", "error"}, {"error", "ParseError"}, {"message", e.what()}};
  }
  r.json["file"] = path;
  return r;
}

int cmd_validate(const Output& o, const std::vector<std::string>& files) {
  std::vector<std::future<FileOutcome>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, validate_file, o, f));
  int code = ok;
  Json all = Json::array();
  for (auto& job : jobs) {
    FileOutcome r = job.get();
    if (r.code == usage_error || (r.code == check_failed && code == ok)) code = r.code;
    if (o.json)
      all.push_back(std::move(r.json));
    else if (r.code == usage_error)
      o.err << r.text;
    else
      o.out << r.text;
  }
  if (o.json) o.out << all.dump(2) << "\n";
  return code;
}

int cmd_homology(const Output& o, const std::string& path) {
  AbstractCurve c = abstract_of(io::read_file(path));
  auto basis = relative_h1_basis(c);
  if (o.json) {
    Json b = Json::array();
    for (const auto& v : basis) b.push_back(io::vector_json(v));
    o.out << Json{{"edges", [&] {
                     Json ids = Json::array();
                     for (const auto& e : c.edges()) ids.push_back(e.id);
                     return ids;
                   }()},
                  {"dimension", basis.size()},
                  {"basis", b}}
                 .dump(2)
          << "\n";
    return ok;
  }
  o.out << "relative H1: dimension " << basis.size() << "\n";
  o.out << "  edge order:";
  for (const auto& e : c.edges()) o.out << " " << e.id;
  o.out << "\n";
  for (const auto& v : basis) o.out << "  " << format(v) << "\n";
  return ok;
}

int cmd_forms(const Output& o, const std::string& path, std::optional<std::size_t> degree) {
  Json j = io::read_file(path);
  if (io::is_manifold(j)) {
    Manifold m = io::parse_manifold(j);
    std::vector<std::size_t> degrees;
    if (degree)
      degrees.push_back(*degree);
    else
      for (std::size_t p = 0; p <= m.dim(); ++p) degrees.push_back(p);
    Json res = Json::array();
    for (std::size_t p : degrees) {
      auto forms = invariant_forms(m, p);
      if (o.json) {
        Json fs = Json::array();
        for (const auto& f : forms) fs.push_back(io::to_json(f));
        res.push_back({{"degree", p}, {"rank", forms.size()}, {"forms", fs}});
      } else {
        o.out << "degree " << p << ": rank " << forms.size();
        for (std::size_t i = 0; i < forms.size(); ++i) o.out << (i ? ", " : "  ") << format(forms[i]);
        o.out << "\n";
      }
    }
    if (o.json) o.out << res.dump(2) << "\n";
    return ok;
  }

  AbstractCurve c = abstract_of(j);
  auto forms = locally_constant_forms(c);
  auto h1 = relative_h1_basis(c);
  Report rep;
  rep.subject = "locally constant forms";
  RatMatrix boundary = relative_boundary_matrix(c);
  if (forms.size() == h1.size())
    rep.pass("dimension matches relative H1", std::to_string(forms.size()));
  else
    rep.fail("dimension matches relative H1",
             std::to_string(forms.size()) + " forms vs " + std::to_string(h1.size()) + " cycles");
  bool closed = true;
  for (const auto& f : forms)
    if (!is_zero(boundary.apply(eta(c, f)))) closed = false;
  if (closed)
    rep.pass("boundary of eta vanishes");
  else
    rep.fail("boundary of eta vanishes", "some form maps to a chain with nonzero boundary");
  if (o.json) {
    Json fs = Json::array();
    for (const auto& f : forms) fs.push_back(io::vector_json(f.values));
    o.out << Json{{"dimension", forms.size()}, {"forms", fs}, {"report", io::to_json(rep)}}.dump(2) << "\n";
  } else {
    o.out << "locally constant forms: dimension " << forms.size() << "\n";
    for (const auto& f : forms) o.out << "  " << format(f.values) << "\n";
    print_report(o, o.out, rep, path + ": " + rep.subject);
  }
  return rep.passed() ? ok : check_failed;
}

int cmd_deform(const Output& o, const std::string& path, const std::string& gauge_name) {
  ParametrizedCurve h = io::parse_parametrized_curve(io::read_file(path));
  DeformationGauge gauge;
  if (gauge_name == "smoothed")
    gauge = DeformationGauge::smoothed;
  else if (gauge_name == "none")
    gauge = DeformationGauge::none;
  else
    throw Error(ErrorCode::ParseError, "unknown gauge '" + gauge_name + "'");
  auto basis = deformation_basis(h, gauge);
  if (o.json) {
    Json b = Json::array();
    for (const auto& d : basis) {
      Json per = Json::object();
      for (std::size_t v = 0; v < d.size(); ++v) per[h.abstract.vertices()[v]] = io::vector_json(d[v]);
      b.push_back(per);
    }
    o.out << Json{{"gauge", gauge_name}, {"dimension", basis.size()}, {"basis", b}}.dump(2) << "\n";
    return ok;
  }
  o.out << "deformation space (" << gauge_name << "): dimension " << basis.size() << "\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    o.out << "  D" << i << ":";
    for (std::size_t v = 0; v < basis[i].size(); ++v)
      o.out << " " << h.abstract.vertices()[v] << "=" << format(basis[i][v]);
    o.out << "\n";
  }
  return ok;
}

int cmd_ev(const Output& o, const std::string& path) {
  ParametrizedCurve h = io::parse_parametrized_curve(io::read_file(path));
  require_valid(h);
  auto ev = evaluate_at_infinity(h);
  ZeroCycle boundary = ev.plus - ev.minus;
  if (o.json) {
    o.out << Json{{"minus", io::to_json(ev.minus)},
                  {"plus", io::to_json(ev.plus)},
                  {"boundary", io::to_json(boundary)},
                  {"degree", boundary.degree()}}
                 .dump(2)
          << "\n";
    return ok;
  }
  o.out << "minus: " << format(ev.minus) << "\n";
  o.out << "plus: " << format(ev.plus) << "\n";
  o.out << "boundary: " << format(boundary) << " (degree " << boundary.degree() << ")\n";
  return ok;
}

int emit_isotropy(const Output& o, const std::string& path, const IsotropyResult& r) {
  if (o.json) {
    Json evs = Json::array();
    for (const auto& e : r.evaluations)
      evs.push_back({{"tuple", e.tuple},
                     {"direct", io::rational_json(e.direct)},
                     {"via_contraction", io::rational_json(e.via_contraction)}});
    o.out << Json{{"deformation_dim", r.deformation_dim}, {"evaluations", evs}, {"report", io::to_json(r.report)}}
                 .dump(2)
          << "\n";
  } else {
    o.out << "deformation space: dimension " << r.deformation_dim << "\n";
    for (const auto& e : r.evaluations) {
      o.out << "  (";
      for (std::size_t i = 0; i < e.tuple.size(); ++i) o.out << (i ? "," : "") << e.tuple[i];
      o.out << ") -> " << to_string(e.direct) << " (contraction " << to_string(e.via_contraction) << ")\n";
    }
    print_report(o, o.out, r.report, path + ": " + r.report.subject);
  }
  return r.report.passed() ? ok : check_failed;
}

int cmd_isotropy(const Output& o, const std::string& path, const std::string& form_path,
                 std::optional<std::size_t> degree) {
  ParametrizedCurve h = io::parse_parametrized_curve(io::read_file(path));
  require_valid(h);
  if (!form_path.empty())
    return emit_isotropy(o, path, isotropy_check(h, io::parse_form(io::read_file(form_path))));
  return emit_isotropy(o, path, isotropy_check(h, degree.value_or(2)));
}

int cmd_roitman(const Output& o, const std::string& path, const std::string& form_path) {
  Json j = io::read_file(path);
  RoitmanInstance inst;
  if (io::is_roitman_instance(j)) {
    inst = io::parse_roitman_instance(j);
  } else {
    if (form_path.empty()) throw Error(ErrorCode::ParseError, "a curve needs --form");
    ParametrizedCurve h = io::parse_parametrized_curve(j);
    require_valid(h);
    inst = restrict_to_infinity(h, io::parse_form(io::read_file(form_path)));
  }
  RoitmanResult r = roitman_bound_check(inst.space, inst.w);
  const bool good = r.isotropic && r.satisfied.value_or(false);
  if (o.json) {
    Json res{{"isotropic", r.isotropic}, {"dim_w", r.dim_w}, {"bound", r.bound}, {"blocks", inst.space.blocks.size()}};
    if (r.satisfied) res["satisfied"] = *r.satisfied;
    if (!r.isotropic)
      res["witness"] = {{"tuple", r.witness_tuple}, {"value", io::rational_json(r.witness_value)}};
    o.out << res.dump(2) << "\n";
  } else {
    o.out << "blocks: " << inst.space.blocks.size() << ", total dimension "
          << inst.space.total_dimension() << "\n";
    o.out << "  " << o.status(r.isotropic ? CheckStatus::pass : CheckStatus::fail) << "  isotropic";
    if (!r.isotropic) {
      o.out << ": basis tuple (";
      for (std::size_t i = 0; i < r.witness_tuple.size(); ++i) o.out << (i ? "," : "") << r.witness_tuple[i];
      o.out << ") evaluates to " << to_string(r.witness_value);
    }
    o.out << "\n";
    if (r.satisfied)
      o.out << "  " << o.status(*r.satisfied ? CheckStatus::pass : CheckStatus::fail) << "  dim W = " << r.dim_w
            << (*r.satisfied ? " <= " : " > ") << r.bound << " = dim V - m\n";
    else
      o.out << "  " << o.status(CheckStatus::skipped) << "  bound: W is not isotropic (dim W = " << r.dim_w
            << ", dim V - m = " << r.bound << ")\n";
  }
  return good ? ok : check_failed;
}

int cmd_albanese(const Output& o, const std::string& path, const std::string& cycle_path) {
  Manifold m = io::parse_manifold(io::read_file(path));
  AlbaneseData a = albanese_data(m);
  Json res;
  if (o.json) {
    Json forms = Json::array(), periods = Json::array(), lattice = Json::array();
    for (const auto& f : a.forms) forms.push_back(io::to_json(f));
    for (const auto& p : a.periods) periods.push_back(io::vector_json(p));
    for (const auto& l : a.lattice_basis) lattice.push_back(io::vector_json(l));
    res = {{"rank", a.rank}, {"forms", forms}, {"periods", periods}, {"lattice_basis", lattice}};
  } else {
    o.out << "invariant 1-forms: rank " << a.rank;
    for (std::size_t i = 0; i < a.forms.size(); ++i) o.out << (i ? ", " : "  ") << format(a.forms[i]);
    o.out << "\n";
    for (std::size_t g = 0; g < a.periods.size(); ++g)
      o.out << "  period of " << m.generators()[g].name << ": " << format(a.periods[g]) << "\n";
    o.out << "  period lattice basis:";
    for (const auto& l : a.lattice_basis) o.out << " " << format(l);
    o.out << "\n";
  }
  if (!cycle_path.empty()) {
    ZeroCycle z = io::parse_zero_cycle(io::read_file(cycle_path), m);
    AlbaneseClass c = albanese_class(m, z);
    if (o.json)
      res["class"] = {{"degree", c.degree}, {"value", io::rational_json(c.value)},
                      {"modulus", io::rational_json(c.modulus)}};
    else
      o.out << "cycle " << format(z) << ": degree " << c.degree << ", class " << to_string(c.value)
            << " (mod " << to_string(c.modulus) << ")\n";
  }
  if (o.json) o.out << res.dump(2) << "\n";
  return ok;
}

int cmd_chow(const Output& o, const std::string& k_path, const std::string& z1_path,
             const std::string& z2_path) {
  Manifold k = io::parse_manifold(io::read_file(k_path));
  ZeroCycle z1 = io::parse_zero_cycle(io::read_file(z1_path), k);
  ZeroCycle z2 = io::parse_zero_cycle(io::read_file(z2_path), k);
  AlbaneseClass c1 = albanese_class(k, z1), c2 = albanese_class(k, z2);
  // z1 ~ z2 iff z1 - z2 has degree 0 and Albanese class 0.
  AlbaneseClass diff = albanese_class(k, z1 - z2);
  const bool eq = chow_equivalent(k, z1, z2);
  if (o.json) {
    auto cls = [](const AlbaneseClass& c) {
      return Json{{"degree", c.degree}, {"value", io::rational_json(c.value)}, {"modulus", io::rational_json(c.modulus)}};
    };
    o.out << Json{{"equivalent", eq}, {"first", cls(c1)}, {"second", cls(c2)}, {"difference", cls(diff)}}.dump(2)
          << "\n";
  } else {
    o.out << (eq ? "equivalent" : "not equivalent") << ": degree " << diff.degree
          << (diff.degree == 0 ? "=" : "!=") << "0, class " << to_string(diff.value)
          << (diff.value == 0 ? "=" : "!=") << "0 (mod " << to_string(diff.modulus) << ")\n";
  }
  return eq ? ok : check_failed;
}

RatVector parse_point(const std::string& text) {
  RatVector p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) p.push_back(parse_rational(part));
  return p;
}

int cmd_witness(const Output& o, const std::string& relation, const std::string& k_path,
                const std::string& point) {
  Manifold k = io::parse_manifold(io::read_file(k_path));
  RatVector p = parse_point(point);
  ParametrizedCurve h;
  if (relation == "two-torsion")
    h = witness_two_torsion(k, p);
  else if (relation == "fiber")
    h = witness_fiber_relation(k, p);
  else
    throw Error(ErrorCode::ParseError, "unknown relation '" + relation + "'");
  o.out << io::to_json(h).dump(2) << "\n";
  if (!o.json) o.err << "boundary: " << format(boundary_zero_cycle(h)) << "\n";
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool out_is_terminal) {
  CLI::App app{"Exact verification of tropical curves, deformations and 0-cycle relations", "troplin"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable output");

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Validate abstract or parametrized curves");
  validate->add_option("files", validate_files, "Curve files")->required();
  validate->add_flag("--json", json, "Machine-readable output");

  std::string path, form_path, cycle_path, z1, z2, relation, point, gauge = "smoothed";
  std::optional<std::size_t> degree;

  auto* homology = app.add_subcommand("homology", "Relative first homology of a curve");
  homology->add_option("curve", path)->required();

  auto* forms = app.add_subcommand("forms", "Invariant forms of a manifold, or locally constant forms of a curve");
  forms->add_option("file", path)->required();
  forms->add_option("--degree", degree, "Form degree (manifolds only)");

  auto* deform = app.add_subcommand("deform", "Deformation space of a parametrized curve");
  deform->add_option("curve", path)->required();
  deform->add_option("--gauge", gauge, "smoothed (default) or none");

  auto* ev = app.add_subcommand("ev", "Evaluation at infinity and boundary cycle");
  ev->add_option("curve", path)->required();

  auto* isotropy = app.add_subcommand("isotropy", "Check the wedge pairing at infinity vanishes");
  isotropy->add_option("curve", path)->required();
  isotropy->add_option("--form", form_path, "Form on the base");
  isotropy->add_option("--degree", degree, "Use every invariant form of this degree");

  auto* roitman = app.add_subcommand("roitman", "Isotropy and dimension bound for a graded space");
  roitman->add_option("instance", path, "Instance file, or a curve together with --form")->required();
  roitman->add_option("--form", form_path, "Form on the base when given a curve");

  auto* albanese = app.add_subcommand("albanese", "Albanese data of a manifold");
  albanese->add_option("manifold", path)->required();
  albanese->add_option("--cycle", cycle_path, "0-cycle whose class to compute (Klein bottles)");

  auto* chow = app.add_subcommand("chow-equiv", "Decide rational equivalence of two 0-cycles on a Klein bottle");
  chow->add_option("klein", path)->required();
  chow->add_option("first", z1)->required();
  chow->add_option("second", z2)->required();

  auto* witness = app.add_subcommand("witness", "Emit a curve realizing a relation on a Klein bottle");
  witness->add_option("--relation", relation, "two-torsion or fiber")->required();
  witness->add_option("klein", path)->required();
  witness->add_option("--point", point, "Point as \"p/q,p/q\"")->required();

  for (auto* sub : {homology, forms, deform, ev, isotropy, roitman, albanese, chow, witness})
    sub->add_flag("--json", json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "troplin: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      err << sub->help();
      return usage_error;
    }
    err << app.help();
    return usage_error;
  }

  bool color = false;
  switch (color_mode_from_env()) {
    case ColorMode::always: color = true; break;
    case ColorMode::never: color = false; break;
    case ColorMode::automatic: color = out_is_terminal; break;
  }
  Output o{out, err, json, color && !json};

  try {
    if (*validate) return cmd_validate(o, validate_files);
    if (*homology) return cmd_homology(o, path);
    if (*forms) return cmd_forms(o, path, degree);
    if (*deform) return cmd_deform(o, path, gauge);
    if (*ev) return cmd_ev(o, path);
    if (*isotropy) return cmd_isotropy(o, path, form_path, degree);
    if (*roitman) return cmd_roitman(o, path, form_path);
    if (*albanese) return cmd_albanese(o, path, cycle_path);
    if (*chow) return cmd_chow(o, path, z1, z2);
    if (*witness) return cmd_witness(o, relation, path, point);
  } catch (const Error& e) {
    err << "troplin: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const Json::exception& e) {
    err << "troplin: ParseError: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace troplin::cli
