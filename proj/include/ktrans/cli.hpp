#pragma once

// Command-line front end.  Every command writes one JSON report with the
// fields command, verdict, certificate, residuals, seed and timing.  Exit
// codes: 0 definitive answer, 2 inconclusive, 1 usage or input error.
//
// "timing" holds deterministic work counters so reports are reproducible
// byte for byte; --wall-clock adds elapsed seconds.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ktrans/consistency.hpp"
#include "ktrans/convex.hpp"
#include "ktrans/engines.hpp"
#include "ktrans/error.hpp"
#include "ktrans/instances.hpp"
#include "ktrans/scene_io.hpp"
#include "ktrans/svg.hpp"

namespace ktrans::cli {

using ojson = nlohmann::ordered_json;

constexpr int exit_definitive = 0;
constexpr int exit_error = 1;
constexpr int exit_inconclusive = 2;

inline ojson to_json(const RVec& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline ojson to_json(const CVec& v, Field f) { return to_json(realify(v, f)); }

inline ojson to_json(const AffineFlat& fl) {
  ojson dirs = ojson::array();
  for (int c = 0; c < fl.k(); ++c) dirs.push_back(to_json(CVec(fl.dirs().col(c)), fl.field()));
  return ojson{{"field", field_tag(fl.field())}, {"base", to_json(fl.base(), fl.field())}, {"dirs", dirs}};
}

inline ojson to_json(const LpProblem& p) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < p.rows(); ++r) rows.push_back(to_json(RVec(p.A.row(r).transpose())));
  ojson nonneg = ojson::array();
  for (bool b : p.nonneg) nonneg.push_back(b);
  return ojson{{"A", rows}, {"b", to_json(p.b)}, {"nonneg", nonneg}};
}

inline ojson to_json(const DependencyTuple& t) {
  ojson comps = ojson::array();
  for (const auto& c : t.components) comps.push_back(to_json(c, t.field));
  return ojson{{"subfamily", t.subfamily}, {"components", comps}};
}

inline RVec rvec_from(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw Error(Errc::parse_error, where + ": expected an array of numbers");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(Errc::parse_error, where + ": expected a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline std::string read_text(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_input, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_input, "cannot write " + path);
  f << text;
}

inline Field parse_field_flag(const std::string& s) {
  if (s == "R") return Field::real;
  if (s == "C") return Field::complex;
  throw Error(Errc::invalid_input, "field must be R or C");
}

/// The scene's assignment, or P = {0} for k = 0.
inline PointAssignment scene_assignment(const Scene& sc) {
  if (sc.assignment) return *sc.assignment;
  if (sc.k != 0) throw Error(Errc::invalid_input, "scene has no assignment (only k = 0 scenes default to P = {0})");
  PointAssignment a;
  a.field = sc.field;
  a.k = 0;
  a.points = {CVec(0)};
  a.phi.assign(sc.sets.size(), 0);
  return a;
}

inline ojson base_report(const std::string& command, std::optional<std::uint64_t> seed) {
  ojson r;
  r["command"] = command;
  r["verdict"] = nullptr;
  r["certificate"] = nullptr;
  r["residuals"] = ojson::object();
  r["seed"] = seed ? ojson(*seed) : ojson(nullptr);
  r["timing"] = ojson::object();
  return r;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// ---------------------------------------------------------------------------
// Commands.

inline int cmd_bound(int k, int d, const std::string& field, ojson& rep) {
  rep["bound"] = subfamily_bound(k, d, parse_field_flag(field));
  rep["verdict"] = "bound";
  return exit_definitive;
}

inline int cmd_gen(const std::string& kind, std::uint64_t seed, int d, int k, int n, const std::string& field,
                   int vertices, double spread, const std::string& mode, bool on_flat, const std::string& out_path,
                   Context& ctx, ojson& rep) {
  GenSpec g;
  g.seed = seed;
  g.d = d;
  g.k = k;
  g.n = n;
  g.vertices = vertices;
  g.spread = spread;
  g.field = parse_field_flag(field);
  Scene sc;
  if (kind == "planted") {
    sc = gen_planted(g);
  } else if (kind == "singletons") {
    sc = gen_singletons(g, on_flat);
  } else if (kind == "disjoint2d") {
    DisjointMode m = DisjointMode::random;
    if (mode == "planted") m = DisjointMode::planted;
    else if (mode == "triangle") m = DisjointMode::triangle_corners;
    else if (mode != "random") throw Error(Errc::invalid_input, "mode must be random, planted or triangle");
    sc = gen_disjoint_2d(g, m);
  } else {
    throw Error(Errc::invalid_input, "kind must be planted, singletons or disjoint2d");
  }
  const std::string text = emit_scene(sc);
  if (out_path.empty()) {
    ctx.out << text;
    return -1;  // the scene itself is the output
  }
  write_text(out_path, text);
  rep["verdict"] = "generated";
  rep["certificate"] = ojson{{"label", sc.label ? label_name(sc.label->value) : "unknown"},
                             {"provenance", sc.label ? sc.label->provenance : ""}};
  rep["output"] = out_path;
  rep["timing"]["sets"] = sc.sets.size();
  return exit_definitive;
}

inline int cmd_check_consistency(const Scene& sc, const ConsistencyBudget& budget, ojson& rep) {
  if (sc.sets.empty()) throw Error(Errc::invalid_input, "scene has no sets");
  const PointAssignment a = scene_assignment(sc);
  const ConsistencyVerdict v = check_dependency_consistency(sc.sets, a, budget);
  rep["timing"]["subfamilies"] = v.subfamilies_checked;
  rep["timing"]["tuples"] = v.samples_used;
  rep["residuals"]["max_merit"] = std::isfinite(v.max_merit) ? ojson(v.max_merit) : ojson(nullptr);
  rep["budget"] = ojson{{"samples", budget.samples}, {"restarts", budget.restarts}, {"local_steps", budget.local_steps},
                        {"pruned", budget.prune}};
  if (v.consistent()) {
    rep["verdict"] = "consistent-up-to-resolution";
    return exit_inconclusive;
  }
  rep["verdict"] = "inconsistent";
  rep["certificate"] = ojson{{"kind", "farkas"},
                             {"tuple", to_json(v.tuple)},
                             {"farkas", to_json(v.farkas)},
                             {"farkas_value", v.farkas.dot(v.problem.b)},
                             {"problem", to_json(v.problem)}};
  return exit_definitive;
}

inline int cmd_check_separation(const Scene& sc, ojson& rep) {
  if (sc.sets.empty()) throw Error(Errc::invalid_input, "scene has no sets");
  const SeparationResult r = check_separation_consistency(sc.sets, scene_assignment(sc));
  rep["verdict"] = r.ok ? "ok" : "counterexample";
  if (!r.ok) rep["certificate"] = ojson{{"kind", "separation"}, {"first", r.first}, {"second", r.second}};
  return exit_definitive;
}

inline int cmd_find_transversal(const Scene& sc, int k, const std::string& engine, const EngineOptions& opt, ojson& rep) {
  if (sc.sets.empty()) throw Error(Errc::invalid_input, "scene has no sets");
  EngineReport r;
  if (engine == "stiefel") r = find_transversal_stiefel(sc.sets, k, opt);
  else if (engine == "altfit") r = alternating_flat_fit(sc.sets, k, opt);
  else throw Error(Errc::invalid_input, "engine must be stiefel or altfit");
  rep["engine"] = engine;
  rep["k"] = k;
  rep["timing"]["iterations"] = r.iterations;
  rep["timing"]["restarts"] = r.restarts.size();
  ojson log = ojson::array();
  for (const auto& l : r.restarts) log.push_back(ojson{{"seed", l.seed}, {"objective", l.objective}, {"iterations", l.iterations}});
  rep["restart_log"] = log;
  rep["residuals"]["best_objective"] = std::isfinite(r.best_objective) ? ojson(r.best_objective) : ojson(nullptr);
  if (!r.found) {
    rep["verdict"] = "not-found";
    return exit_inconclusive;
  }
  const VerifyResult vr = verify_transversal(*r.flat, sc.sets, opt.stab_tolerance);
  ojson dist = ojson::array();
  for (const auto& c : vr.certificates) dist.push_back(c.distance);
  rep["verdict"] = "found";
  rep["flat"] = to_json(*r.flat);
  rep["residuals"]["max_distance"] = r.residual;
  rep["residuals"]["distances"] = dist;
  ojson certs = ojson::array();
  for (const auto& c : vr.certificates) certs.push_back(ojson{{"point", to_json(c.point, sc.field)}, {"weights", to_json(c.coefficients)}});
  rep["certificate"] = ojson{{"kind", "stabbing"}, {"tolerance", opt.stab_tolerance}, {"points", certs}};
  return exit_definitive;
}

/// Re-validates a flat, or a report carrying a flat or a Farkas certificate.
inline int cmd_verify(const Scene& sc, const std::string& text, double tolerance, ojson& rep) {
  const nlohmann::json j = detail::parse_json(text);
  const bool is_farkas = j.is_object() && j.contains("certificate") && j["certificate"].is_object() &&
                         j["certificate"].value("kind", "") == "farkas";
  if (is_farkas) {
    const auto& c = j["certificate"];
    DependencyTuple t;
    t.field = sc.field;
    for (const auto& s : c.at("tuple").at("subfamily")) t.subfamily.push_back(s.get<std::size_t>());
    for (const auto& comp : c.at("tuple").at("components"))
      t.components.push_back(complexify(rvec_from(comp, "tuple.components"), sc.field));
    const PointAssignment a = scene_assignment(sc);
    for (auto i : t.subfamily)
      if (i >= sc.sets.size()) throw Error(Errc::invalid_input, "certificate subfamily index out of range");
    const double member = dependency_membership_residual(t, a);
    const LpProblem lp = detail::dependency_lp(t, sc.sets, t.significant_support());
    const RVec y = rvec_from(c.at("farkas"), "farkas");
    const bool ok = in_dependency_space(t, a) && y.size() == lp.rows() && validate_farkas(lp, y);
    rep["verdict"] = ok ? "valid" : "invalid";
    rep["certificate"] = ojson{{"kind", "farkas"}};
    rep["residuals"]["dependency_membership"] = member;
    if (y.size() == lp.rows()) rep["residuals"]["farkas_value"] = y.dot(lp.b);
    return exit_definitive;
  }
  const AffineFlat fl = parse_flat(text, sc.field, sc.d);
  const VerifyResult vr = verify_transversal(fl, sc.sets, tolerance);
  ojson dist = ojson::array();
  for (const auto& c : vr.certificates) dist.push_back(c.distance);
  rep["verdict"] = vr.ok ? "valid" : "invalid";
  rep["certificate"] = ojson{{"kind", "stabbing"}, {"tolerance", tolerance}};
  rep["residuals"]["max_distance"] = vr.residual;
  rep["residuals"]["distances"] = dist;
  return exit_definitive;
}

inline int cmd_witness(const Scene& sc, const AffineFlat& fl, ojson& rep) {
  const TransversalWitness w = witness_from_transversal(sc.sets, fl);
  ojson pts = ojson::array(), coeffs = ojson::array(), ppts = ojson::array();
  for (const auto& q : w.points) pts.push_back(to_json(q, sc.field));
  for (const auto& c : w.coefficients) coeffs.push_back(to_json(c));
  for (const auto& p : w.assignment.points) ppts.push_back(to_json(p, sc.field));
  double worst = 0.0;
  for (const auto& q : w.points) worst = std::max(worst, fl.distance(q));
  rep["verdict"] = validate_witness(sc.sets, w) ? "witness" : "invalid-witness";
  rep["certificate"] = ojson{{"kind", "witness"},
                             {"points", pts},
                             {"weights", coeffs},
                             {"assignment", ojson{{"points", ppts}, {"phi", w.assignment.phi}}}};
  rep["residuals"]["max_flat_distance"] = worst;
  return exit_definitive;
}

inline int cmd_hadwiger(const Scene& sc, bool find_order, const std::vector<std::size_t>& order, ojson& rep) {
  if (find_order) {
    const auto o = find_hadwiger_order(sc.sets);
    rep["verdict"] = o ? "ordering" : "no-order";
    if (o) rep["certificate"] = ojson{{"kind", "ordering"}, {"order", *o}};
    return exit_definitive;
  }
  const HadwigerCheck h = order.empty() ? hadwiger_order_check(sc.sets) : hadwiger_order_check(sc.sets, order);
  rep["verdict"] = h.ok ? "ok" : "bad-triple";
  if (!h.ok) rep["certificate"] = ojson{{"kind", "triple"}, {"triple", h.triple}};
  return exit_definitive;
}

inline RMat parse_projection(const std::string& s) {
  // rows separated by ';', entries by ','
  std::vector<std::vector<double>> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    rows.emplace_back();
    std::stringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) {
      try {
        rows.back().push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(Errc::invalid_input, "projection entries must be numbers");
      }
    }
  }
  if (rows.size() != 2 || rows[0].size() != rows[1].size() || rows[0].empty())
    throw Error(Errc::invalid_input, "projection must have two rows of equal length");
  RMat m(2, static_cast<Eigen::Index>(rows[0].size()));
  for (int r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < rows[0].size(); ++c) m(r, static_cast<Eigen::Index>(c)) = rows[static_cast<std::size_t>(r)][c];
  return m;
}

inline int cmd_plot(const Scene& sc, const std::optional<AffineFlat>& fl, bool witness, const std::string& projection,
                    const std::string& out_path, ojson& rep) {
  SvgOptions opt;
  opt.flat = fl;
  if (witness && fl) opt.witness = witness_from_transversal(sc.sets, *fl).points;
  if (!projection.empty()) opt.projection = parse_projection(projection);
  const std::string svg = emit_svg(sc, opt);
  write_text(out_path, svg);
  rep["verdict"] = "written";
  rep["output"] = out_path;
  rep["timing"]["bytes"] = svg.size();
  return exit_definitive;
}

// ---------------------------------------------------------------------------

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Context ctx{in, out, err};
  CLI::App app{"k-transversal toolkit: dependency-consistency checks and transversal search", "ktrans"};
  app.require_subcommand(1);
  bool wall_clock = false;
  app.add_flag("--wall-clock", wall_clock, "add elapsed seconds to the report");

  std::uint64_t seed = 0;
  int k = 0, d = 0, n = 0, vertices = 4, restarts = 0;
  std::optional<int> k_override;
  double spread = 1.0, tol_value = tol::stab;
  std::string field = "R", kind, mode = "random", out_path, scene_path, flat_path, engine = "stiefel", projection;
  std::size_t samples = 4096;
  bool on_flat = false, full = false, find_order = false, witness = false;
  std::vector<std::size_t> order;

  auto* gen = app.add_subcommand("gen", "generate a seeded scene");
  gen->add_option("--kind", kind, "planted | singletons | disjoint2d")->required()->check(CLI::IsMember({"planted", "singletons", "disjoint2d"}));
  gen->add_option("--seed", seed)->required();
  gen->add_option("--d", d)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--field", field)->check(CLI::IsMember({"R", "C"}));
  gen->add_option("--vertices", vertices, "vertices per set");
  gen->add_option("--spread", spread);
  gen->add_option("--mode", mode, "disjoint2d layout: random | planted | triangle");
  gen->add_flag("--on-flat", on_flat, "singletons lying exactly on a k-flat");
  gen->add_option("--out", out_path);

  auto* cc = app.add_subcommand("check-consistency", "search for a violated dependency tuple");
  cc->add_option("scene", scene_path)->required();
  cc->add_option("--seed", seed)->required();
  cc->add_option("--samples", samples);
  std::size_t cc_restarts = 32;
  cc->add_option("--restarts", cc_restarts);
  cc->add_flag("--full", full, "enumerate every subfamily size instead of the largest only");

  auto* cs = app.add_subcommand("check-separation", "hull-disjointness consistency (hyperplanes, R only)");
  cs->add_option("scene", scene_path)->required();

  auto* ft = app.add_subcommand("find-transversal", "search for a k-transversal");
  ft->add_option("scene", scene_path)->required();
  ft->add_option("--engine", engine)->check(CLI::IsMember({"stiefel", "altfit"}));
  ft->add_option("--seed", seed)->required();
  ft->add_option("--restarts", restarts);
  ft->add_option("--tol", tol_value, "stabbing tolerance of a reported flat");
  ft->add_option("--k", k_override, "override the scene's k");

  auto* vf = app.add_subcommand("verify", "re-validate a flat or a report offline");
  vf->add_option("scene", scene_path)->required();
  vf->add_option("--flat", flat_path, "flat file or report")->required();
  vf->add_option("--tol", tol_value);

  auto* wt = app.add_subcommand("witness", "points and assignment from a known transversal");
  wt->add_option("scene", scene_path)->required();
  wt->add_option("--flat", flat_path)->required();

  auto* hw = app.add_subcommand("hadwiger", "ordering condition for disjoint planar sets");
  hw->add_option("scene", scene_path)->required();
  hw->add_flag("--find-order", find_order);
  hw->add_option("--order", order, "ordering to check (default: scene order)")->delimiter(',');

  auto* bd = app.add_subcommand("bound", "subfamily size bound");
  bd->add_option("--k", k)->required();
  bd->add_option("--d", d)->required();
  bd->add_option("--field", field)->required()->check(CLI::IsMember({"R", "C"}));

  auto* pl = app.add_subcommand("plot", "SVG figure of a scene");
  pl->add_option("scene", scene_path)->required();
  pl->add_option("--flat", flat_path);
  pl->add_flag("--witness", witness, "draw witness points of the flat");
  pl->add_option("--projection", projection, "2 x realdim matrix, rows ';'-separated");
  pl->add_option("--out", out_path)->required();

  std::vector<const char*> argv{"ktrans"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_definitive;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return exit_error;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto* seed_opt = sub->get_option_no_throw("--seed");
  const bool seeded = seed_opt != nullptr && seed_opt->count() > 0;
  ojson rep = base_report(name, seeded ? std::optional<std::uint64_t>(seed) : std::nullopt);
  const auto t0 = std::chrono::steady_clock::now();
  int code = exit_error;
  try {
    auto load_scene = [&] { return parse_scene(read_text(scene_path, in)); };
    if (name == "bound") {
      code = cmd_bound(k, d, field, rep);
    } else if (name == "gen") {
      code = cmd_gen(kind, seed, d, k, n, field, vertices, spread, mode, on_flat, out_path, ctx, rep);
      if (code < 0) return exit_definitive;
    } else if (name == "check-consistency") {
      ConsistencyBudget b;
      b.samples = samples;
      b.restarts = cc_restarts;
      b.seed = seed;
      b.prune = !full;
      code = cmd_check_consistency(load_scene(), b, rep);
    } else if (name == "check-separation") {
      code = cmd_check_separation(load_scene(), rep);
    } else if (name == "find-transversal") {
      const Scene sc = load_scene();
      EngineOptions opt;
      opt.seed = seed;
      if (restarts > 0) opt.restarts = static_cast<std::size_t>(restarts);
      opt.stab_tolerance = tol_value;
      code = cmd_find_transversal(sc, k_override.value_or(sc.k), engine, opt, rep);
    } else if (name == "verify") {
      const Scene sc = load_scene();
      code = cmd_verify(sc, read_text(flat_path, in), tol_value, rep);
    } else if (name == "witness") {
      const Scene sc = load_scene();
      code = cmd_witness(sc, parse_flat(read_text(flat_path, in), sc.field, sc.d), rep);
    } else if (name == "hadwiger") {
      code = cmd_hadwiger(load_scene(), find_order, order, rep);
    } else if (name == "plot") {
      const Scene sc = load_scene();
      std::optional<AffineFlat> fl;
      if (!flat_path.empty()) fl = parse_flat(read_text(flat_path, in), sc.field, sc.d);
      code = cmd_plot(sc, fl, witness, projection, out_path, rep);
    }
  } catch (const Error& e) {
    ojson fail = base_report(name, seeded ? std::optional<std::uint64_t>(seed) : std::nullopt);
    fail["verdict"] = "error";
    fail["error"] = ojson{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}};
    out << fail.dump(2) << "\n";
    err << e.what() << "\n";
    return exit_error;
  } catch (const std::exception& e) {
    ojson fail = base_report(name, seeded ? std::optional<std::uint64_t>(seed) : std::nullopt);
    fail["verdict"] = "error";
    fail["error"] = ojson{{"code", "Internal"}, {"message", e.what()}};
    out << fail.dump(2) << "\n";
    err << e.what() << "\n";
    return exit_error;
  }
  if (wall_clock)
    rep["timing"]["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out << rep.dump(2) << "\n";
  return code;
}

inline int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, in, out, err);
}

}  // namespace ktrans::cli
