#include "dkit/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"
#include "dkit/registry.hpp"
#include "dkit/rng.hpp"

namespace dkit {

std::string to_string(FuzzClass c) {
  switch (c) {
    case FuzzClass::general: return "general";
    case FuzzClass::hermitian_vs_general: return "hermitian_vs_general";
    case FuzzClass::normal_line: return "normal_line";
  }
  return "unknown";
}

std::optional<FuzzClass> parse_fuzz_class(std::string_view name) {
  if (name == "general") return FuzzClass::general;
  if (name == "hermitian_vs_general") return FuzzClass::hermitian_vs_general;
  if (name == "normal_line") return FuzzClass::normal_line;
  return std::nullopt;
}

namespace {

void validate(const FuzzOptions& o) {
  if (o.n_min < 2 || o.n_min > o.n_max || o.n_max > 12) {
    throw DomainError("fuzz: need 2 <= n_min <= n_max <= 12");
  }
  if (o.trials < 1) throw DomainError("fuzz: trials must be >= 1");
  if (o.jobs < 1) throw DomainError("fuzz: jobs must be >= 1");
  o.solver.validate();
}

struct TrialOutcome {
  bool failed = false;
  bool holds = true;
  double margin = 0.0;
  double threshold = 0.0;
  std::size_t n = 0;
};

TrialOutcome run_trial(const FuzzOptions& o, std::size_t trial) {
  TrialOutcome out;
  try {
    FuzzInstance inst = fuzz_instance(o, trial);
    out.n = inst.n;
    InequalityInputs in;
    in.matrices["A"] = std::move(inst.a);
    in.matrices["B"] = std::move(inst.b);
    const InequalityId id = o.matrix_class == FuzzClass::general ? InequalityId::R26 : InequalityId::R17;
    const InequalityReport r = evaluate_inequality(id, in, o.tol, o.solver);
    out.holds = r.holds;
    out.margin = r.parts.front().min_margin;
    out.threshold = r.parts.front().threshold;
  } catch (const NumericalFailure&) {
    out.failed = true;
  }
  return out;
}

}  // namespace

FuzzInstance fuzz_instance(const FuzzOptions& o, std::size_t trial) {
  Rng rng(derive_seed(o.master_seed, trial));
  FuzzInstance inst;
  inst.n = rng.uniform_index(o.n_min, o.n_max);
  const std::size_t n = inst.n;
  switch (o.matrix_class) {
    case FuzzClass::general:
      inst.a = random_ginibre(n, n, rng);
      break;
    case FuzzClass::hermitian_vs_general:
      inst.a = random_hermitian(n, rng);
      break;
    case FuzzClass::normal_line: {
      const ComplexMatrix q = random_unitary(n, rng);
      const Complex offset = rng.complex_normal();
      const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
      ComplexVector d(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = offset + dir * rng.normal();
      inst.a = q * d.asDiagonal() * q.adjoint();
      break;
    }
  }
  inst.b = random_ginibre(n, n, rng);
  return inst;
}

FuzzReport fuzz_conjecture(const FuzzOptions& o) {
  validate(o);
  std::vector<TrialOutcome> outcomes(o.trials);
  const unsigned jobs = static_cast<unsigned>(std::min<std::size_t>(o.jobs, o.trials));
  if (jobs <= 1) {
    for (std::size_t t = 0; t < o.trials; ++t) outcomes[t] = run_trial(o, t);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t t = w; t < o.trials; t += jobs) outcomes[t] = run_trial(o, t);
      });
    }
    for (std::thread& th : workers) th.join();
  }

  FuzzReport rep;
  rep.trials = o.trials;
  rep.n_min = o.n_min;
  rep.n_max = o.n_max;
  rep.master_seed = o.master_seed;
  rep.generator = std::string(Rng::kName);
  rep.matrix_class = o.matrix_class;
  double worst_slack = INFINITY;
  bool any = false;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const TrialOutcome& r = outcomes[t];
    if (r.failed) {
      rep.failed_trials.push_back(t);
      continue;
    }
    if (!r.holds) ++rep.violations;
    const double slack = r.margin + r.threshold;
    if (!any || slack < worst_slack) {
      any = true;
      worst_slack = slack;
      rep.worst_margin = r.margin;
      rep.worst_threshold = r.threshold;
      rep.worst_trial = t;
      rep.worst_n = r.n;
    }
  }
  if (any) {
    rep.worst_seed = derive_seed(o.master_seed, rep.worst_trial);
    if (rep.worst_n <= 8) {
      FuzzInstance inst = fuzz_instance(o, rep.worst_trial);
      rep.witness_a = std::move(inst.a);
      rep.witness_b = std::move(inst.b);
    }
  }
  rep.status = rep.violations == 0 ? "no counterexample found" : "counterexample found";
  return rep;
}

}  // namespace dkit
