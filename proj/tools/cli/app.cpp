#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dkit/commutator.hpp"
#include "dkit/discrepancy.hpp"
#include "dkit/errors.hpp"
#include "dkit/fuzz.hpp"
#include "dkit/grid_oracle.hpp"
#include "dkit/matcore.hpp"
#include "dkit/registry.hpp"
#include "dkit/xdecomp.hpp"
#include "matrix_io.hpp"
#include "report.hpp"

namespace dkit::cli {

namespace {

enum Exit { kOk = 0, kViolation = 1, kInputError = 2, kNumericalFailure = 3 };

struct Context {
  Json report;
  Tolerance tol;
  AlphaSolverConfig cfg;

  ComplexMatrix load(const std::string& role, const std::string& path) {
    ComplexMatrix m = read_matrix_file(path);
    Json in;
    in["role"] = role;
    in["path"] = path;
    in["rows"] = m.rows();
    in["cols"] = m.cols();
    in["digest"] = hex_digest(matrix_digest(m));
    report["inputs"].push_back(std::move(in));
    return m;
  }

  void payload(Json p) { report["payload"] = std::move(p); }
  void status(const std::string& s) { report["status"] = s; }
};

std::size_t check_k(std::size_t k, const ComplexMatrix& a) {
  if (k < 1 || k > static_cast<std::size_t>(std::min(a.rows(), a.cols()))) {
    throw DomainError("--k must lie in 1.." + std::to_string(std::min(a.rows(), a.cols())));
  }
  return k;
}

Json diagnostics_json(const std::vector<SolveDiagnostics>& ds) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Json d;
    d["k"] = i + 1;
    d["path"] = to_string(ds[i].path);
    d["iterations"] = ds[i].iterations;
    d["gap"] = ds[i].gap;
    d["stationarity_residual"] = ds[i].stationarity_residual;
    arr.push_back(std::move(d));
  }
  return arr;
}

std::vector<std::string> sdp_listing(std::size_t n, std::size_t k, bool real) {
  const std::string N = std::to_string(n);
  const std::string K = std::to_string(k);
  std::vector<std::string> l = {
      "SDP formulation for the Ky-Fan norm, discrepancy form (n = " + N + ", k = " + K + ")",
      "variables:",
      std::string("  Z     ") + (real ? "real symmetric" : "complex Hermitian") + " " + std::to_string(2 * n) +
          " x " + std::to_string(2 * n),
      "  s     real scalar",
      std::string("  alpha ") + (real ? "real" : "complex") + " scalar",
      "  t     real scalar, t >= 0",
      "minimize t",
      "subject to:",
      "  [block 1]  Z >= 0  (positive semidefinite, " + std::to_string(2 * n) + " x " + std::to_string(2 * n) + ")",
      "  [block 2]  Z + s I_" + std::to_string(2 * n) + " - [[0, A - alpha I_" + N + "], [A^* - conj(alpha) I_" + N +
          ", 0]] >= 0",
      "  [scalar]   t >= Re(tr(Z)) + " + K + " s",
      "optimal value: t* = delta_1(A) + ... + delta_" + K + "(A) = min_alpha ||A - alpha I||_(" + K + ")",
  };
  if (k == n) {
    l.push_back("trace form (k = n): max (1/2) Re tr([[0, A], [A^*, 0]] M) over M = [[I, K], [K^*, I]] >= 0, tr(K) = 0");
  }
  return l;
}

int cmd_delta(Context& c, const std::string& file, std::optional<std::size_t> k, bool force_general, bool emit_sdp) {
  const ComplexMatrix a = c.load("A", file);
  if (!is_square(a) || a.rows() == 0) throw DomainError("delta: matrix must be square and nonempty");
  const std::size_t n = static_cast<std::size_t>(a.rows());
  if (k) check_k(*k, a);
  const DiscrepancyResult r =
      discrepancy_values(a, c.cfg, force_general ? DispatchPolicy::force_general : DispatchPolicy::automatic);
  Json p;
  p["n"] = n;
  p["dispatch"] = force_general ? "force-general" : "automatic";
  p["values"] = to_json(r.values);
  p["norms"] = to_json(r.partial_norms);
  p["alphas"] = to_json(r.alphas);
  p["diagnostics"] = diagnostics_json(r.diagnostics);
  if (k) {
    Json s;
    s["k"] = *k;
    s["value"] = r.values[*k - 1];
    s["norm"] = r.partial_norms[*k - 1];
    s["alpha"] = to_json(r.alphas[*k - 1]);
    p["selected"] = std::move(s);
  }
  if (emit_sdp) {
    const bool real = a.imag().isZero(0.0);
    Json listing = Json::array();
    for (std::size_t j = k.value_or(1); j <= k.value_or(n); ++j) {
      Json b;
      b["k"] = j;
      b["lines"] = sdp_listing(n, j, real);
      b["value"] = r.partial_norms[j - 1];
      listing.push_back(std::move(b));
    }
    p["sdp"] = std::move(listing);
  }
  c.payload(std::move(p));
  c.status("ok");
  return kOk;
}

int cmd_kyfan(Context& c, const std::string& file, std::size_t k) {
  const ComplexMatrix a = c.load("A", file);
  check_k(k, a);
  Json p;
  p["k"] = k;
  p["value"] = ky_fan_norm(a, k);
  p["singular_values"] = to_json(singular_values(a));
  c.payload(std::move(p));
  c.status("ok");
  return kOk;
}

Json part_json(const InequalityPart& part) {
  Json j;
  j["label"] = part.label;
  j["kind"] = to_string(part.kind);
  j["lhs"] = to_json(part.lhs);
  j["rhs"] = to_json(part.rhs);
  j["margins"] = to_json(part.margins);
  j["min_margin"] = part.min_margin;
  j["threshold"] = part.threshold;
  j["holds"] = part.holds;
  return j;
}

std::vector<InequalityId> resolve_ids(const std::string& rid) {
  std::string upper = rid;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "ALL") return proven_inequalities();
  const auto id = parse_inequality_id(upper);
  if (!id) throw DomainError("unknown registry entry '" + rid + "' (expected R1..R26 or all)");
  return {*id};
}

int cmd_check_files(Context& c, const std::vector<InequalityId>& ids, const std::map<std::string, std::string>& files) {
  InequalityInputs in;
  for (const auto& [role, path] : files) in.matrices[role] = c.load(role, path);
  const bool single = ids.size() == 1;
  Json entries = Json::array();
  bool violated = false;
  for (InequalityId id : ids) {
    Json e;
    e["id"] = to_string(id);
    e["claim"] = describe(id);
    try {
      const InequalityReport r = evaluate_inequality(id, in, c.tol, c.cfg);
      e["status"] = r.status;
      e["holds"] = r.holds;
      e["min_margin"] = r.min_margin;
      Json parts = Json::array();
      for (const InequalityPart& part : r.parts) parts.push_back(part_json(part));
      e["parts"] = std::move(parts);
      if (r.witness) e["witness"] = hex_digest(*r.witness);
      violated = violated || !r.holds;
    } catch (const DomainError& ex) {
      if (single) throw;
      e["status"] = "skipped";
      e["reason"] = ex.what();
    }
    entries.push_back(std::move(e));
  }
  Json p;
  p["mode"] = "files";
  p["entries"] = std::move(entries);
  c.payload(std::move(p));
  c.status(violated ? "violated" : "holds");
  return violated ? kViolation : kOk;
}

int cmd_check_random(Context& c, const std::vector<InequalityId>& ids, std::size_t n, std::size_t trials,
                     std::uint64_t seed, unsigned jobs) {
  c.report["generator"] = std::string(Rng::kName);
  c.report["seed"] = seed;
  Json entries = Json::array();
  bool violated = false;
  bool failed = false;
  for (InequalityId id : ids) {
    Json e;
    e["id"] = to_string(id);
    e["claim"] = describe(id);
    if (!is_applicable(id, n)) {
      if (ids.size() == 1) throw DomainError(to_string(id) + " has no instances of size " + std::to_string(n));
      e["status"] = "skipped";
      e["reason"] = "not applicable at n = " + std::to_string(n);
      entries.push_back(std::move(e));
      continue;
    }
    const RegistrySweep s = sweep_inequality(id, n, trials, seed, c.tol, c.cfg, jobs);
    e["status"] = s.status;
    e["trials"] = s.trials;
    e["violations"] = s.violations;
    e["worst_margin"] = s.worst_margin;
    e["worst_threshold"] = s.worst_threshold;
    e["worst_trial"] = s.worst_trial;
    e["worst_seed"] = sweep_trial_seed(id, seed, s.worst_trial);
    e["worst_part"] = s.worst_part;
    e["failed_trials"] = s.failed_trials;
    violated = violated || s.violations > 0;
    failed = failed || !s.failed_trials.empty();
    entries.push_back(std::move(e));
  }
  Json p;
  p["mode"] = "random";
  p["n"] = n;
  p["trials"] = trials;
  p["entries"] = std::move(entries);
  c.payload(std::move(p));
  if (violated) {
    c.status("violated");
    return kViolation;
  }
  if (failed) {
    c.status("numerical failure");
    return kNumericalFailure;
  }
  c.status("holds");
  return kOk;
}

int cmd_fuzz(Context& c, FuzzOptions o, const std::string& cls) {
  const auto mc = parse_fuzz_class(cls);
  if (!mc) throw DomainError("unknown fuzz class '" + cls + "'");
  o.matrix_class = *mc;
  o.tol = c.tol;
  o.solver = c.cfg;
  const FuzzReport r = fuzz_conjecture(o);
  c.report["generator"] = r.generator;
  c.report["seed"] = r.master_seed;
  Json p;
  p["class"] = to_string(r.matrix_class);
  p["trials"] = r.trials;
  p["n_min"] = r.n_min;
  p["n_max"] = r.n_max;
  p["violations"] = r.violations;
  p["worst_margin"] = r.worst_margin;
  p["worst_threshold"] = r.worst_threshold;
  p["worst_trial"] = r.worst_trial;
  p["worst_n"] = r.worst_n;
  p["worst_seed"] = r.worst_seed;
  if (r.witness_a) p["witness_a"] = to_json(*r.witness_a);
  if (r.witness_b) p["witness_b"] = to_json(*r.witness_b);
  p["failed_trials"] = r.failed_trials;
  c.payload(std::move(p));
  c.status(r.status);
  if (r.violations > 0) return kViolation;
  return r.failed_trials.empty() ? kOk : kNumericalFailure;
}

double max_abs_diff(const SpectrumVector& x, const SpectrumVector& y) {
  const std::size_t n = std::max(x.size(), y.size());
  const SpectrumVector a = x.padded(n), b = y.padded(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

int cmd_maximize(Context& c, const std::string& fa, const std::string& fb) {
  const ComplexMatrix a = c.load("A", fa);
  const ComplexMatrix b = c.load("B", fb);
  const NoncommutingWitness w = maximal_noncommuting_unitary(a, b);
  const double err = max_abs_diff(w.achieved, w.bound);
  const double thr = c.tol.threshold(std::max(1.0, w.bound.sum()));
  Json p;
  p["u"] = to_json(w.u);
  p["achieved"] = to_json(w.achieved);
  p["bound"] = to_json(w.bound);
  p["max_deviation"] = err;
  p["threshold"] = thr;
  c.payload(std::move(p));
  const bool ok = err <= thr;
  c.status(ok ? "attained" : "not attained");
  return ok ? kOk : kViolation;
}

int cmd_orbit(Context& c, const std::string& fa, std::size_t k) {
  const ComplexMatrix a = c.load("A", fa);
  check_k(k, a);
  const OrbitDiameter d = unitary_orbit_diameter_hermitian(a, k);
  const DiscrepancyResult r = discrepancy_values_hermitian(a);
  const double target = 2.0 * r.partial_norms[k - 1];
  const double thr = c.tol.threshold(std::max(1.0, target));
  Json p;
  p["k"] = k;
  p["diameter"] = d.value;
  p["twice_discrepancy_norm"] = target;
  p["deviation"] = std::abs(d.value - target);
  p["threshold"] = thr;
  p["witness"] = to_json(d.witness);
  c.payload(std::move(p));
  const bool ok = std::abs(d.value - target) <= thr;
  c.status(ok ? "attained" : "not attained");
  return ok ? kOk : kViolation;
}

int cmd_xdecomp(Context& c, const std::string& file) {
  const ComplexMatrix a = c.load("A", file);
  const XDecomposition d = x_decomposition(a);
  const XDecompositionCheck chk = check_x_decomposition(a, d);
  Json params;
  params["a"] = to_json(d.params.a);
  params["b"] = to_json(d.params.b);
  if (d.params.center) params["center"] = to_json(*d.params.center);
  Json v;
  v["unitarity_u"] = chk.unitarity_u;
  v["unitarity_v"] = chk.unitarity_v;
  v["exchange_residual"] = chk.exchange_residual;
  v["pattern_defect"] = chk.pattern_defect;
  v["centrosymmetry"] = chk.centrosymmetry;
  v["reconstruction"] = chk.reconstruction;
  v["diagonal_modulus"] = chk.diagonal_modulus;
  v["anti_diagonal_modulus"] = chk.anti_diagonal_modulus;
  v["frame_objective"] = chk.frame_objective;
  v["frames_feasible"] = chk.frames_feasible;
  Json p;
  p["u"] = to_json(d.u);
  p["x"] = to_json(d.x);
  p["v"] = to_json(d.v);
  p["params"] = std::move(params);
  p["frame_order"] = d.frame_order;
  p["verification"] = std::move(v);
  c.payload(std::move(p));
  c.status(chk.ok ? "verified" : "failed");
  return chk.ok ? kOk : kViolation;
}

int cmd_oracle(Context& c, const std::string& file, std::optional<std::size_t> k, int resolution) {
  const ComplexMatrix a = c.load("A", file);
  if (k) check_k(*k, a);
  std::vector<OracleResult> rs;
  if (k) {
    rs.push_back(grid_oracle_discrepancy_norm(a, *k, resolution));
  } else {
    rs = grid_oracle_discrepancy_norms(a, resolution);
  }
  Json arr = Json::array();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    Json e;
    e["k"] = k ? *k : i + 1;
    e["value"] = rs[i].value;
    e["alpha"] = to_json(rs[i].alpha);
    e["spacing"] = rs[i].spacing;
    e["error_bound"] = rs[i].error_bound;
    arr.push_back(std::move(e));
  }
  Json p;
  p["resolution"] = resolution;
  p["results"] = std::move(arr);
  c.payload(std::move(p));
  c.status("ok");
  return kOk;
}

int fail(Context& c, std::ostream& out, std::ostream& err, int code, const std::string& status,
         const std::string& message) {
  err << "dkit: " << message << "\n";
  c.report["status"] = status;
  c.report["error"] = message;
  out << dump(c.report);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrepancy values, majorization checks and commutator experiments", "dkit"};
  app.fallthrough();
  app.require_subcommand(1);
  double atol = 1e-9, rtol = 1e-8;
  app.add_option("--atol", atol, "Absolute tolerance for every checker")->capture_default_str();
  app.add_option("--rtol", rtol, "Relative tolerance for every checker")->capture_default_str();

  std::string file, rid = "all", fa, fb, fx, cls = "general";
  std::size_t k = 0, n = 4, trials = 20;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int resolution = 512;
  bool force_general = false, emit_sdp = false;
  FuzzOptions fo;

  auto* delta = app.add_subcommand("delta", "Discrepancy values and norms");
  delta->add_option("file", file, "Matrix file")->required();
  auto* delta_k = delta->add_option("--k", k, "Report a single k");
  delta->add_flag("--force-general", force_general, "Skip the Hermitian/normal routes");
  delta->add_flag("--emit-sdp", emit_sdp, "Attach the SDP formulation listing");

  auto* kyfan = app.add_subcommand("kyfan", "Ky-Fan norm");
  kyfan->add_option("file", file, "Matrix file")->required();
  kyfan->add_option("--k", k, "Number of singular values")->required();

  auto* check = app.add_subcommand("check", "Verify registry inequalities");
  check->add_option("rid", rid, "R1..R26 or all")->required();
  check->add_option("--a", fa, "Matrix A");
  check->add_option("--b", fb, "Matrix B");
  check->add_option("--x", fx, "Matrix X");
  check->add_option("--n", n, "Size of random instances")->capture_default_str();
  check->add_option("--trials", trials, "Random instances per entry")->capture_default_str();
  check->add_option("--seed", seed, "Master seed")->capture_default_str();
  check->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

  auto* fuzz = app.add_subcommand("fuzz", "Counterexample search");
  fuzz->require_subcommand(1);
  auto* conj = fuzz->add_subcommand("conjecture", "sigma([A,B]) <_w 2 delta(A) delta(B)");
  conj->add_option("--n-min", fo.n_min)->required();
  conj->add_option("--n-max", fo.n_max)->required();
  conj->add_option("--trials", fo.trials)->required();
  conj->add_option("--seed", fo.master_seed)->required();
  conj->add_option("--class", cls, "general, hermitian_vs_general or normal_line")->capture_default_str();
  conj->add_option("--jobs", fo.jobs)->capture_default_str();

  auto* maximize = app.add_subcommand("maximize", "Extremal constructions");
  maximize->require_subcommand(1);
  auto* comm = maximize->add_subcommand("commutator", "Unitary maximizing sigma([A, U B U^*])");
  comm->add_option("--a", fa, "Hermitian A")->required();
  comm->add_option("--b", fb, "Hermitian B")->required();

  auto* orbit = app.add_subcommand("orbit-diameter", "Unitary orbit diameter of a Hermitian matrix");
  orbit->add_option("--a", fa, "Hermitian A")->required();
  orbit->add_option("--k", k)->required();

  auto* xdec = app.add_subcommand("xdecomp", "X decomposition of a Hermitian matrix");
  xdec->add_option("file", file, "Matrix file")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference values");
  oracle->require_subcommand(1);
  auto* odelta = oracle->add_subcommand("delta", "Grid minimization of ||A - alpha I||_(k)");
  odelta->add_option("file", file, "Matrix file")->required();
  auto* oracle_k = odelta->add_option("--k", k);
  odelta->add_option("--resolution", resolution)->capture_default_str();

  Context c;
  c.report["schema"] = kSchema;
  c.report["command"] = args;
  c.report["inputs"] = Json::array();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(c, out, err, kInputError, "input error", e.what());
  }

  c.tol.abs = atol;
  c.tol.rel = rtol;
  c.report["tolerance"] = Json{{"atol", atol}, {"rtol", rtol}};

  int code = kOk;
  try {
    if (!(atol >= 0.0) || !(rtol >= 0.0)) throw DomainError("tolerances must be non-negative");
    if (*delta) {
      code = cmd_delta(c, file, *delta_k ? std::optional(k) : std::nullopt, force_general, emit_sdp);
    } else if (*kyfan) {
      code = cmd_kyfan(c, file, k);
    } else if (*check) {
      const auto ids = resolve_ids(rid);
      std::map<std::string, std::string> files;
      if (!fa.empty()) files["A"] = fa;
      if (!fb.empty()) files["B"] = fb;
      if (!fx.empty()) files["X"] = fx;
      code = files.empty() ? cmd_check_random(c, ids, n, trials, seed, jobs) : cmd_check_files(c, ids, files);
    } else if (*conj) {
      code = cmd_fuzz(c, fo, cls);
    } else if (*comm) {
      code = cmd_maximize(c, fa, fb);
    } else if (*orbit) {
      code = cmd_orbit(c, fa, k);
    } else if (*xdec) {
      code = cmd_xdecomp(c, file);
    } else if (*odelta) {
      code = cmd_oracle(c, file, *oracle_k ? std::optional(k) : std::nullopt, resolution);
    }
  } catch (const InputError& e) {
    return fail(c, out, err, kInputError, "input error", e.what());
  } catch (const DomainError& e) {
    return fail(c, out, err, kInputError, "input error", e.what());
  } catch (const NumericalFailure& e) {
    return fail(c, out, err, kNumericalFailure, "numerical failure", e.what());
  }
  out << dump(c.report);
  return code;
}

}  // namespace dkit::cli
