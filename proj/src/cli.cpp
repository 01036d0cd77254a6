#include "circumlab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "circumlab/constants.hpp"
#include "circumlab/fem.hpp"
#include "circumlab/interp.hpp"
#include "circumlab/mesh.hpp"
#include "circumlab/report.hpp"
#include "circumlab/sampling.hpp"
#include "circumlab/seminorm.hpp"

namespace circumlab {

int exit_code(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::audit:
      return 1;
    case ErrorClass::usage:
      return 2;
    case ErrorClass::degenerate:
      return 3;
    case ErrorClass::numerical:
      return 4;
  }
  return 4;
}

namespace {

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorClass::usage, what) {}
};

struct Globals {
  std::string out_dir;
  std::string format = "both";
  bool svg = false;
  std::uint64_t seed = 20100101;
  int quad_degree = 0;  // 0: chosen per quantity
};

/// Prints reports to stdout and, with --out, writes them to files.
class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  void emit(const std::string& stem, const Json& doc, const std::optional<Table>& table) {
    const bool json = g_.format != "csv";
    const bool csv = g_.format != "json" && table.has_value();
    if (json) {
      out_ << doc.dump(2) << '\n';
    } else if (csv) {
      out_ << table->csv();
    }
    if (g_.out_dir.empty()) return;
    if (json) write(stem + ".json", doc.dump(2) + "\n");
    if (csv) write(stem + ".csv", table->csv());
  }

  void write(const std::string& name, const std::string& content) {
    const std::filesystem::path dir = g_.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(g_.out_dir);
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) throw UsageError("cannot write " + path.string());
    err_ << "wrote " << path.string() << '\n';
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("expected a vertex 'x,y', got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string xs = text.substr(0, comma), ys = text.substr(comma + 1);
    const double x = std::stod(xs, &used);
    if (used != xs.size()) throw std::invalid_argument(xs);
    const double y = std::stod(ys, &used);
    if (used != ys.size()) throw std::invalid_argument(ys);
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError("expected a vertex 'x,y', got '" + text + "'");
  }
}

Triangle parse_triangle(const std::vector<std::string>& vertices) {
  if (vertices.size() != 3) throw UsageError("expected three vertices 'x1,y1 x2,y2 x3,y3'");
  return Triangle(parse_point(vertices[0]), parse_point(vertices[1]), parse_point(vertices[2]));
}

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  try {
    std::size_t used = 0;
    const double p = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return p;
  } catch (const std::logic_error&) {
    throw UsageError("invalid exponent '" + text + "'");
  }
}

Json real_or_text(double x) { return std::isfinite(x) ? Json(x) : Json(format_real(x)); }

Json triangle_vertices(const Triangle& tri) { return to_json(tri); }

InterpErrorReport report_with(const Triangle& tri, const ScalarField& v, double p, int quad_degree) {
  return quad_degree > 0 ? error_report(tri, v, p, cached_rule(quad_degree)) : error_report(tri, v, p);
}

// ---------------------------------------------------------------- triangle

struct TriangleArgs {
  std::vector<std::string> vertices;
  std::vector<double> needle;
  double theta0 = std::numbers::pi / 12;
  double theta1 = 5 * std::numbers::pi / 6;
  double sigma = kInfinity;
};

int cmd_triangle(const TriangleArgs& a, const Globals& g, Emitter& em) {
  Triangle tri;
  Json config = {{"theta0", a.theta0}, {"theta1", a.theta1}, {"sigma", real_or_text(a.sigma)}};
  if (!a.needle.empty()) {
    if (!a.vertices.empty()) throw UsageError("give either vertices or --needle, not both");
    tri = needle(a.needle[0], a.needle[1]);
    config["needle"] = {{"h", a.needle[0]}, {"alpha", a.needle[1]}};
  } else {
    tri = parse_triangle(a.vertices);
    config["vertices"] = a.vertices;
  }
  const TriangleMetrics m = metrics(tri);
  const ConditionFlags flags = condition_flags(m, a.theta0, a.theta1, a.sigma);
  const CanonicalForm cf = canonicalize(tri);
  Json result = {{"triangle", triangle_vertices(tri)},
                 {"metrics", to_json(m)},
                 {"flags", to_json(flags)},
                 {"canonical", to_json(cf)},
                 {"circumradius_identity", circumradius_identity_check(tri)}};

  Table table({"A", "B", "C", "S", "h_K", "rho_K", "R_K", "theta_min", "theta_max", "C_K", "min_angle_ok",
               "max_angle_ok", "regular_ok", "s", "t", "eta"});
  table.add_row({m.A, m.B, m.C, m.S, m.h_K, m.rho_K, m.R_K, m.theta_min, m.theta_max, m.C_K, flags.min_angle_ok,
                 flags.max_angle_ok, flags.regular_ok, cf.s, cf.t, cf.eta});
  (void)g;
  em.emit("triangle", envelope("triangle", config, result), table);
  return 0;
}

// ---------------------------------------------------------------- interp

struct InterpArgs {
  std::optional<double> needle_alpha;
  int levels = 9;
  std::string field = "sinsin";
  std::string p = "2";
  int sweep = 0;
  std::vector<std::string> vertices;
};

int cmd_interp(const InterpArgs& a, const Globals& g, Emitter& em) {
  const double p = parse_exponent(a.p);
  Json config = {{"p", real_or_text(p)}, {"quad_degree", g.quad_degree}};
  const int modes = (a.needle_alpha ? 1 : 0) + (a.sweep > 0 ? 1 : 0) + (a.vertices.empty() ? 0 : 1);
  if (modes != 1) throw UsageError("choose exactly one of --needle-study, --kobayashi-sweep or three vertices");

  if (a.needle_alpha) {
    if (a.levels < 1 || a.levels > 40) throw UsageError("--levels must lie in [1, 40]");
    const ScalarField v = lookup_field(a.field);
    std::vector<double> hs;
    for (int k = 2; k <= a.levels + 1; ++k) hs.push_back(std::ldexp(1.0, -k));
    config["needle_alpha"] = *a.needle_alpha;
    config["levels"] = a.levels;
    config["field"] = a.field;
    std::vector<NeedleRow> rows;
    if (g.quad_degree > 0) {
      if (!(*a.needle_alpha > 1.0)) throw InvalidFamily("needle family needs alpha > 1");
      for (double h : hs) rows.push_back({h, report_with(needle(h, *a.needle_alpha), v, p, g.quad_degree)});
    } else {
      rows = needle_study(hs, *a.needle_alpha, v, p);
    }
    Table table({"k", "h", "R_K", "theta_max_rad", "err_0p", "err_1p", "semi_2p", "ratio_1", "C_K", "bound_ok",
                 "empirical_quotient"});
    Json jrows = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i].report;
      table.add_row({static_cast<long long>(i + 2), rows[i].h, r.metrics.R_K, r.metrics.theta_max, r.err_0p, r.err_1p,
                     r.semi_2p, r.ratio_1, r.metrics.C_K, r.bound_satisfied, r.empirical_quotient});
      Json j = to_json(r);
      j["h"] = rows[i].h;
      jrows.push_back(j);
    }
    em.emit("interp_needle", envelope("interp", config, {{"rows", jrows}}), table);
    return 0;
  }

  if (a.sweep > 0) {
    config["kobayashi_sweep"] = a.sweep;
    config["seed"] = g.seed;
    Sampler sampler(g.seed);
    Table table({"index", "degree", "R_K", "C_K", "err_1p", "semi_2p", "bound", "bound_satisfied"});
    Json jrows = Json::array();
    int failures = 0;
    for (int i = 0; i < a.sweep; ++i) {
      const Triangle tri = sampler.triangle();
      const int degree = sampler.uniform_int(2, 4);
      const ScalarField v = ScalarField::from_polynomial("poly", sampler.polynomial(degree));
      const InterpErrorReport r = report_with(tri, v, 2.0, g.quad_degree);
      failures += r.bound_satisfied ? 0 : 1;
      table.add_row({static_cast<long long>(i), static_cast<long long>(degree), r.metrics.R_K, r.metrics.C_K, r.err_1p,
                     r.semi_2p, r.metrics.C_K * r.semi_2p, r.bound_satisfied});
      jrows.push_back({{"triangle", to_json(tri)}, {"degree", degree}, {"report", to_json(r)}});
    }
    em.emit("interp_kobayashi", envelope("interp", config, {{"failures", failures}, {"rows", jrows}}), table);
    return failures == 0 ? 0 : exit_code(ErrorClass::audit);
  }

  const Triangle tri = parse_triangle(a.vertices);
  const ScalarField v = lookup_field(a.field);
  config["vertices"] = a.vertices;
  config["field"] = a.field;
  const InterpErrorReport r = report_with(tri, v, p, g.quad_degree);
  Table table({"R_K", "C_K", "err_0p", "err_1p", "err_full", "semi_2p", "ratio_1", "empirical_quotient",
               "hypothesis_ok", "bound_satisfied"});
  table.add_row({r.metrics.R_K, r.metrics.C_K, r.err_0p, r.err_1p, r.err_full, r.semi_2p, r.ratio_1,
                 r.empirical_quotient, r.hypothesis_ok, r.bound_satisfied});
  em.emit("interp", envelope("interp", config, to_json(r)), table);
  return 0;
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  bool babuska_aziz = false;
  std::string estimate;
  bool audit = false;
  int degree = 12;
  int right_count = 20;
  int canonical_count = 50;
  std::vector<std::string> vertices;
};

QuotientKind parse_kind(const std::string& s) {
  if (s == "A1") return QuotientKind::A1;
  if (s == "A2Edge" || s == "A2-edge" || s == "A2") return QuotientKind::A2Edge;
  if (s == "B") return QuotientKind::B;
  if (s == "D") return QuotientKind::D;
  throw UsageError("unknown quotient '" + s + "' (expected A1, A2Edge, B or D)");
}

int cmd_constants(const ConstantsArgs& a, const Globals& g, Emitter& em) {
  const int modes = (a.babuska_aziz ? 1 : 0) + (a.estimate.empty() ? 0 : 1) + (a.audit ? 1 : 0);
  if (modes != 1) throw UsageError("choose exactly one of --babuska-aziz, --estimate or --audit");

  if (a.babuska_aziz) {
    const double x = babuska_aziz_root();
    const double residual = std::abs(1 / x + std::tan(1 / x));
    Table table({"root", "residual", "A2"});
    table.add_row({x, residual, 1 / x});
    em.emit("constants_babuska_aziz",
            envelope("constants", {{"babuska_aziz", true}}, {{"root", x}, {"residual", residual}, {"A2", 1 / x}}),
            table);
    return 0;
  }

  const Triangle tri = a.vertices.empty() ? Triangle() : parse_triangle(a.vertices);
  if (!a.estimate.empty()) {
    const QuotientKind kind = parse_kind(a.estimate);
    const QuotientEstimate e = rayleigh(kind, tri, a.degree);
    Table table({"kind", "degree", "value"});
    for (const auto& h : e.history) table.add_row({to_string(kind), static_cast<long long>(h.degree), h.value});
    em.emit("constants_estimate",
            envelope("constants", {{"estimate", to_string(kind)}, {"degree", a.degree}, {"triangle", to_json(tri)}},
                     to_json(e)),
            table);
    return 0;
  }

  std::vector<AuditRecord> records;
  Json config = {{"audit", true}, {"degree", a.degree}};
  if (!a.vertices.empty()) {
    config["triangle"] = to_json(tri);
    records.push_back(lemma_inequality_audit(tri, a.degree));
  } else {
    config["seed"] = g.seed;
    config["right_count"] = a.right_count;
    config["canonical_count"] = a.canonical_count;
    Sampler sampler(g.seed);
    records.push_back(lemma_inequality_audit(Triangle(), a.degree));
    const Lemma right[] = {Lemma::RightTriangle};
    for (int i = 0; i < a.right_count; ++i) {
      records.push_back(lemma_inequality_audit(sampler.axis_right_triangle(), a.degree, right));
    }
    const Lemma general[] = {Lemma::GeneralFirst, Lemma::GeneralZero};
    for (int i = 0; i < a.canonical_count; ++i) {
      records.push_back(lemma_inequality_audit(sampler.canonical_triangle(), a.degree, general));
    }
  }
  Table table({"record", "lemma", "quantity", "computed", "bound", "pass"});
  Json jrecords = Json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& c : records[i].checks) {
      table.add_row({static_cast<long long>(i), to_string(c.lemma), to_string(c.quantity), c.computed, c.bound, c.pass});
    }
    all_pass = all_pass && records[i].all_pass();
    jrecords.push_back(to_json(records[i]));
  }
  em.emit("constants_audit", envelope("constants", config, {{"all_pass", all_pass}, {"records", jrecords}}), table);
  return all_pass ? 0 : exit_code(ErrorClass::audit);
}

// ---------------------------------------------------------------- mesh

struct MeshArgs {
  std::string family;
  int n = 8;
  double alpha = 1.5;
  bool force = false;
  std::string stats_file;
};

Table stats_table(const MeshStats& s) {
  Table table({"n_vertices", "n_triangles", "h_max", "max_R_K", "min_angle", "max_angle", "min_rho_over_h"});
  table.add_row({static_cast<long long>(s.n_vertices), static_cast<long long>(s.n_triangles), s.h_max, s.max_R_K,
                 s.min_angle, s.max_angle, s.min_rho_over_h});
  return table;
}

int cmd_mesh(const MeshArgs& a, const Globals& g, Emitter& em) {
  if (a.family.empty() == a.stats_file.empty()) throw UsageError("choose exactly one of --family or --stats");
  if (!a.stats_file.empty()) {
    std::ifstream f(a.stats_file, std::ios::binary);
    if (!f) throw UsageError("cannot read " + a.stats_file);
    std::stringstream text;
    text << f.rdbuf();
    const ReadResult r = read_mesh(text.str());
    const MeshStats s = stats(r.mesh);
    em.emit("mesh_stats", envelope("mesh", {{"stats", a.stats_file}}, {{"stats", to_json(s)}, {"warnings", r.warnings}}),
            stats_table(s));
    return 0;
  }
  Mesh mesh;
  Json config = {{"family", a.family}, {"n", a.n}};
  if (a.family == "uniform") {
    mesh = gen_uniform(a.n);
  } else if (a.family == "crisscross") {
    mesh = gen_crisscross_aniso(a.n, a.alpha, a.force);
    config["alpha"] = a.alpha;
    config["force"] = a.force;
  } else if (a.family == "lens") {
    mesh = gen_lens(a.n);
  } else {
    throw InvalidFamily("unknown mesh family '" + a.family + "' (expected uniform, crisscross or lens)");
  }
  check_conformity(mesh);
  const MeshStats s = stats(mesh);
  Json params = Json::object();
  for (const auto& [k, v] : mesh.family->params) params[k] = v;
  em.emit("mesh_" + a.family, envelope("mesh", config, {{"family", a.family}, {"parameters", params}, {"stats", to_json(s)}}),
          stats_table(s));
  if (!g.out_dir.empty()) em.write("mesh_" + a.family + "_" + std::to_string(a.n) + ".txt", write_mesh(mesh));
  return 0;
}

// ---------------------------------------------------------------- fem

struct FemArgs {
  std::string family = "crisscross";
  double alpha = 1.5;
  int levels = 4;
  int n0 = 8;
  std::string field = "sinsin";
};

int cmd_fem(const FemArgs& a, const Globals& g, Emitter& em) {
  if (a.levels < 1 || a.levels > 8) throw UsageError("--levels must lie in [1, 8]");
  if (a.n0 < 1) throw UsageError("--n0 must be positive");
  std::vector<int> ns;
  for (int k = 0; k < a.levels; ++k) ns.push_back(a.n0 << k);
  const ScalarField u = lookup_field(a.field);
  CeaOptions options;
  if (g.quad_degree > 0) options.error_degree = g.quad_degree;
  const CeaReport rep = cea_study(a.family, ns, a.alpha, u, options);

  bool optimal = true, chain = true, decreasing = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const CeaRow& r = rep.rows[i];
    if (r.solved) optimal = optimal && r.h1_semi_error <= r.interp_semi_error * (1 + 1e-8);
    chain = chain && r.interp_semi_error <= r.max_R_K * r.semi_22_exact * (1 + 1e-8);
    if (i > 0 && r.solved) decreasing = decreasing && r.h1_norm_error < rep.rows[i - 1].h1_norm_error;
  }
  Json result = to_json(rep);
  result["checks"] = {{"galerkin_optimality", optimal}, {"interpolation_chain", chain}, {"h1_norm_decreasing", decreasing}};

  Table table({"level", "n", "n_triangles", "max_R_K", "h_max", "max_angle", "h1_semi_error", "h1_norm_error",
               "interp_semi_error", "semi_22_exact", "quotient", "cg_iterations"});
  for (const auto& r : rep.rows) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    table.add_row({static_cast<long long>(r.level), static_cast<long long>(r.n), static_cast<long long>(r.n_triangles),
                   r.max_R_K, r.h_max, r.max_angle, r.solved ? r.h1_semi_error : nan, r.solved ? r.h1_norm_error : nan,
                   r.interp_semi_error, r.semi_22_exact, r.quotient, static_cast<long long>(r.cg_iterations)});
  }
  Json config = {{"family", a.family}, {"alpha", a.alpha}, {"levels", a.levels}, {"n0", a.n0}, {"field", a.field},
                 {"error_degree", options.error_degree}};
  em.emit("fem_" + a.family, envelope("fem", config, result), table);

  if (g.svg) {
    std::vector<Series> series(3);
    series[0].label = "|u-u_h|_1 (norm)";
    series[1].label = "|u-I_h u|_1";
    series[2].label = "max R_K |u|_2";
    for (const auto& r : rep.rows) {
      for (auto& s : series) s.x.push_back(r.max_R_K);
      series[0].y.push_back(r.solved ? r.h1_norm_error : 0.0);
      series[1].y.push_back(r.interp_semi_error);
      series[2].y.push_back(r.max_R_K * r.semi_22_exact);
    }
    if (!rep.rows.empty() && !rep.rows.front().solved) series.erase(series.begin());
    em.write("fem_" + a.family + ".svg",
             loglog_svg(a.family + " mesh, u = " + a.field, "max R_K", "H1 error", series));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circumradius-condition toolkit for P1 interpolation", "circumlab"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out_dir, "Directory for report files");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_flag("--svg", g.svg, "Write the convergence plot (fem)");
  app.add_option("--seed", g.seed, "Seed for random sweeps");
  app.add_option("--quad-degree", g.quad_degree, "Quadrature degree (default: chosen per quantity)")
      ->check(CLI::Range(kMinRuleDegree, kMaxRuleDegree));

  TriangleArgs ta;
  auto* tri = app.add_subcommand("triangle", "Quality report of one triangle")->fallthrough();
  tri->add_option("vertices", ta.vertices, "x1,y1 x2,y2 x3,y3");
  tri->add_option("--needle", ta.needle, "Isosceles needle with base h and height h^alpha")->expected(2);
  tri->add_option("--theta0", ta.theta0, "Minimum angle threshold (rad)");
  tri->add_option("--theta1", ta.theta1, "Maximum angle threshold (rad)");
  tri->add_option("--sigma", ta.sigma, "Regularity threshold h/rho");

  InterpArgs ia;
  auto* interp = app.add_subcommand("interp", "Interpolation error studies")->fallthrough();
  interp->add_option("--needle-study", ia.needle_alpha, "Needle family exponent alpha");
  interp->add_option("--levels", ia.levels, "Needle levels: h = 2^-k, k = 2..levels+1");
  interp->add_option("--field", ia.field, "Field name (sinsin, expsum, bubble, mono(i,j), poly:...)");
  interp->add_option("--p", ia.p, "Exponent p (number or inf)");
  interp->add_option("--kobayashi-sweep", ia.sweep, "Random (triangle, polynomial) pairs checked against C(K)");
  interp->add_option("vertices", ia.vertices, "x1,y1 x2,y2 x3,y3");

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Sobolev quotient estimates and lemma audits")->fallthrough();
  constants->add_flag("--babuska-aziz", ca.babuska_aziz, "Root of 1/x + tan(1/x) = 0");
  constants->add_option("--estimate", ca.estimate, "Quotient A1, A2Edge, B or D");
  constants->add_flag("--audit", ca.audit, "Lemma inequality audit");
  constants->add_option("--degree", ca.degree, "Polynomial subspace degree")
      ->check(CLI::Range(kMinSubspaceDegree, kMaxSubspaceDegree));
  constants->add_option("--right-count", ca.right_count, "Random axis-parallel right triangles in the audit");
  constants->add_option("--canonical-count", ca.canonical_count, "Random canonical triangles in the audit");
  constants->add_option("vertices", ca.vertices, "x1,y1 x2,y2 x3,y3 (default: reference triangle)");

  MeshArgs ma;
  auto* mesh = app.add_subcommand("mesh", "Mesh generation and statistics")->fallthrough();
  mesh->add_option("--family", ma.family, "uniform, crisscross or lens");
  mesh->add_option("--n", ma.n, "Generator size parameter");
  mesh->add_option("--alpha", ma.alpha, "Row exponent of the crisscross family");
  mesh->add_flag("--force", ma.force, "Allow alpha = 1 or 2 for the crisscross family");
  mesh->add_option("--stats", ma.stats_file, "Statistics of a mesh file");

  FemArgs fa;
  auto* fem = app.add_subcommand("fem", "P1 Poisson convergence study")->fallthrough();
  fem->add_option("--family", fa.family, "uniform, crisscross or lens");
  fem->add_option("--alpha", fa.alpha, "Row exponent of the crisscross family");
  fem->add_option("--levels", fa.levels, "Number of refinements");
  fem->add_option("--n0", fa.n0, "Coarsest size; level k uses n0 * 2^k");
  fem->add_option("--field", fa.field, "Manufactured solution");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorClass::usage);
  }

  Emitter em(g, out, err);
  try {
    if (*tri) return cmd_triangle(ta, g, em);
    if (*interp) return cmd_interp(ia, g, em);
    if (*constants) return cmd_constants(ca, g, em);
    if (*mesh) return cmd_mesh(ma, g, em);
    if (*fem) return cmd_fem(fa, g, em);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.error_class());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(ErrorClass::numerical);
  }
  return exit_code(ErrorClass::usage);
}

}  // namespace circumlab
