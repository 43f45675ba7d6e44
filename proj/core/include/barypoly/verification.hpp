#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "barypoly/dynamics.hpp"

namespace barypoly {

// Uniform doubles in (0, 1) from the top 53 bits of each draw; zero is
// redrawn. Deterministic for a given engine state.
double uniform_open_unit(std::mt19937_64& rng);
std::vector<double> random_unit_tuple(std::mt19937_64& rng, int p);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  // e.g. "p=5 seed=17 step=12"
  double worst = 0.0;         // check-specific witness, see check_names()
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  std::string to_json() const;
};

// Names accepted by SweepOptions::only_check, in report order.
const std::vector<std::string>& check_names();

struct SweepOptions {
  int p_min = 3;
  int p_max = 8;
  std::size_t seeds = 100;  // random initial states per p
  std::size_t steps = 200;
  std::uint64_t seed = 1;
  std::optional<std::string> only_check;
  // Corrupts one recorded state per trajectory; the suite must then fail.
  bool inject_perturbation = false;
};

// Runs every check (or only_check) over random initial states. Throws
// std::invalid_argument for an unknown check name or p_min < 3.
VerificationReport run_sweep(const SweepOptions& options);

// Same checks on a single initial weight tuple.
VerificationReport verify_weights(const WeightTuple& t, std::size_t steps,
                                  const std::optional<std::string>& only_check = std::nullopt,
                                  bool inject_perturbation = false);

}  // namespace barypoly
