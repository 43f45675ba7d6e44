#include "barypoly/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "barypoly/analysis.hpp"
#include "barypoly/geometry.hpp"
#include "barypoly/stationary.hpp"

namespace barypoly {
namespace {

constexpr double kFixedPointTolerance = 1e-14;
constexpr double kStepTolerance = 1e-12;
constexpr double kDualTarget = 1e-8;
constexpr double kLimitTolerance = 1e-6;

std::string describe(int p, std::optional<std::size_t> seed, std::optional<std::size_t> step) {
  std::string out = "p=" + std::to_string(p);
  if (seed) out += " seed=" + std::to_string(*seed);
  if (step) out += " step=" + std::to_string(*step);
  return out;
}

class Suite {
 public:
  explicit Suite(const std::optional<std::string>& only) : only_(only) {
    if (only_ && std::find(check_names().begin(), check_names().end(), *only_) ==
                     check_names().end()) {
      throw std::invalid_argument("unknown check '" + *only_ + "'");
    }
  }

  bool wants(const std::string& name) const { return !only_ || *only_ == name; }

  // One case of a check; worst keeps the largest witness seen.
  void add(const std::string& name, bool ok, double witness, const std::string& where) {
    CheckResult& r = slot(name);
    if (r.cases == 0 || witness > r.worst) r.worst = witness;
    ++r.cases;
    if (!ok) {
      if (r.failures == 0) r.first_failure = where;
      ++r.failures;
      r.passed = false;
    }
  }

  void add(const std::string& name, const CheckOutcome& outcome, int p, std::size_t seed) {
    add(name, outcome.passed, outcome.worst, describe(p, seed, outcome.first_violation));
  }

  VerificationReport finish() && {
    VerificationReport report;
    for (const auto& name : check_names()) {
      auto it = results_.find(name);
      if (it != results_.end()) report.checks.push_back(std::move(it->second));
    }
    return report;
  }

 private:
  CheckResult& slot(const std::string& name) {
    CheckResult& r = results_[name];
    r.name = name;
    return r;
  }

  std::optional<std::string> only_;
  std::map<std::string, CheckResult> results_;
};

void check_stationary(Suite& suite, int p) {
  if (suite.wants("stationary")) {
    const double alpha = solve_alpha(p);
    const double residual = std::abs(theta(p, alpha));
    suite.add("stationary", alpha > 0.0 && alpha < 1.0 && residual <= 1e-14, residual,
              describe(p, std::nullopt, std::nullopt));
  }
  if (suite.wants("theorem1")) {
    const StationaryCertificate cert = certificate(p);
    const bool ok = cert.alpha < 1.0 - 1.0 / p && cert.lambda_repulsive < -1.0;
    suite.add("theorem1", ok, cert.lambda_repulsive, describe(p, std::nullopt, std::nullopt));
  }
  if (suite.wants("spectral")) {
    const SpectralReport r = spectral_check(p);
    suite.add("spectral", r.passed(), std::max(r.ones_residual, r.sum_zero_residual),
              describe(p, std::nullopt, std::nullopt));
  }
  if (suite.wants("fixed_point")) {
    const ConjugateTuple u = stationary_conjugate(p);
    const ConjugateTuple next = conjugate_step(u);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, std::abs(next[k] - u[k]));
    suite.add("fixed_point", worst <= kFixedPointTolerance, worst,
              describe(p, std::nullopt, std::nullopt));
  }
}

// Rebuilds the record with state 1 nudged, as if the stored run had been
// altered after the fact.
void perturb(TrajectoryRecord& traj) {
  if (traj.size() < 2) return;
  std::vector<ComplementPair> pairs(traj.states[1].pairs().begin(), traj.states[1].pairs().end());
  ComplementPair& x = pairs.front();
  x = x.value > ExtendedReal(0.5)
          ? ComplementPair{x.value, x.complement * ExtendedReal(1.0 + 1e-6)}
          : ComplementPair{x.value * ExtendedReal(1.0 + 1e-6), x.complement};
  traj.states[1] = ConjugateTuple(std::move(pairs));
  traj.spread[1] = spread(traj.states[1]);
}

void check_trajectory(Suite& suite, const WeightTuple& t, std::size_t steps, std::size_t seed,
                      bool inject) {
  const int p = t.p();
  const double alpha = solve_alpha(p);
  TrajectoryRecord traj = run_trajectory(t.conjugate(), steps, alpha);
  if (inject) perturb(traj);

  if (suite.wants("step_relation")) {
    suite.add("step_relation", check_step_relation(traj.states, kStepTolerance), p, seed);
  }
  if (suite.wants("lemma_a")) suite.add("lemma_a", check_sortedness(traj), p, seed);
  if (suite.wants("lemma_b")) suite.add("lemma_b", check_ratio_monotonicity(traj), p, seed);
  if (suite.wants("lemma_c")) suite.add("lemma_c", check_spread_halving(traj), p, seed);
  if (suite.wants("lemma_c_certificate")) {
    suite.add("lemma_c_certificate", check_lemma_c_certificates(traj), p, seed);
  }
  if (suite.wants("lemma_d")) suite.add("lemma_d", check_spread_decay(traj), p, seed);
  if (suite.wants("t_ratio_transfer")) {
    suite.add("t_ratio_transfer", check_t_ratio_transfer(traj), p, seed);
  }

  if (suite.wants("theorem2")) {
    const DualSequenceRecord dual = dual_sequence(regular_polygon(static_cast<std::size_t>(p)), t, steps);
    const auto& d = dual.distances_to_centroid;
    // Both parities must have closed in: take the larger of the last two.
    double tail = d.back();
    if (d.size() >= 2) tail = std::max(tail, d[d.size() - 2]);
    const bool ok = tail < kDualTarget && dual.fitted_rate && *dual.fitted_rate < 0.0;
    suite.add("theorem2", ok, tail, describe(p, seed, d.size() - 1));
  }

  const AlternationReport alternation = detect_alternation(traj);
  if (suite.wants("theorem3")) {
    const bool ok = alternation.m0 && alternation.violations == 0;
    suite.add("theorem3", ok, static_cast<double>(alternation.violations),
              describe(p, seed, alternation.m0));
  }
  if (suite.wants("theorem4")) {
    const ParityLimit limit = even_odd_limits(traj, kLimitTolerance);
    const bool ok = alternation.m0 && limit != ParityLimit::kUndecided &&
                    limit == expected_parity_limit(traj.phase[*alternation.m0], *alternation.m0);
    suite.add("theorem4", ok, static_cast<double>(traj.size() - 1),
              describe(p, seed, traj.size() - 1));
  }
  if (suite.wants("theorem4_domination")) {
    const DominationReport dom = check_comparison_domination(traj);
    suite.add("theorem4_domination", dom.holds, static_cast<double>(dom.checked),
              describe(p, seed, dom.first_violation ? dom.first_violation : dom.start));
  }
}

}  // namespace

double uniform_open_unit(std::mt19937_64& rng) {
  for (;;) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (x > 0.0) return x;
  }
}

std::vector<double> random_unit_tuple(std::mt19937_64& rng, int p) {
  std::vector<double> out(static_cast<std::size_t>(p));
  for (double& x : out) x = uniform_open_unit(rng);
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = passed();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["cases"] = c.cases;
    entry["failures"] = c.failures;
    entry["worst"] = c.worst;
    if (!c.first_failure.empty()) entry["first_failure"] = c.first_failure;
    doc["checks"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "stationary", "theorem1",         "spectral",   "fixed_point",
      "step_relation", "lemma_a",       "lemma_b",    "lemma_c",
      "lemma_c_certificate", "lemma_d", "t_ratio_transfer", "theorem2",
      "theorem3",   "theorem4",         "theorem4_domination"};
  return names;
}

VerificationReport run_sweep(const SweepOptions& options) {
  if (options.p_min < 3 || options.p_max < options.p_min) {
    throw std::invalid_argument("run_sweep: need 3 <= p_min <= p_max");
  }
  Suite suite(options.only_check);
  std::mt19937_64 rng(options.seed);
  for (int p = options.p_min; p <= options.p_max; ++p) {
    check_stationary(suite, p);
    for (std::size_t s = 0; s < options.seeds; ++s) {
      const WeightTuple t(random_unit_tuple(rng, p));
      check_trajectory(suite, t, options.steps, s, options.inject_perturbation);
    }
  }
  return std::move(suite).finish();
}

VerificationReport verify_weights(const WeightTuple& t, std::size_t steps,
                                  const std::optional<std::string>& only_check,
                                  bool inject_perturbation) {
  if (t.p() < 3) throw std::invalid_argument("verify_weights: p must be at least 3");
  Suite suite(only_check);
  check_stationary(suite, t.p());
  check_trajectory(suite, t, steps, 0, inject_perturbation);
  return std::move(suite).finish();
}

}  // namespace barypoly
