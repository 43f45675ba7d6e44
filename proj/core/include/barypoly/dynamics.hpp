#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "barypoly/complement_pair.hpp"

namespace barypoly {

class WeightTuple;
class ConjugateTuple;

// Raised when a step would leave the representable part of (0, 1)^p.
class SaturationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// p >= 2 coordinates strictly inside (0, 1), each stored with its complement.
class UnitTuple {
 public:
  std::size_t size() const { return pairs_.size(); }
  int p() const { return static_cast<int>(pairs_.size()); }

  // Coordinate k as binary64 (may round to 0 or 1 deep in a trajectory).
  double operator[](std::size_t k) const { return pairs_[k].to_double(); }
  const ComplementPair& pair(std::size_t k) const { return pairs_[k]; }
  std::span<const ComplementPair> pairs() const { return pairs_; }
  std::vector<double> values() const;
  // 1 - coordinate k as binary64, accurate even when the coordinate rounds to 1.
  double complement(std::size_t k) const { return pairs_[k].complement.to_double(); }

 protected:
  UnitTuple(std::vector<double> values, const char* what);
  UnitTuple(std::vector<ComplementPair> pairs, const char* what);

  std::vector<ComplementPair> pairs_;
};

// Weights t of one barypolygonal sequence; the state of the derived system.
class WeightTuple : public UnitTuple {
 public:
  explicit WeightTuple(std::vector<double> weights);
  explicit WeightTuple(std::vector<ComplementPair> pairs);

  // u = 1 - t, exact.
  ConjugateTuple conjugate() const;
};

// u = 1 - t; the state of the conjugate system.
class ConjugateTuple : public UnitTuple {
 public:
  explicit ConjugateTuple(std::vector<double> values);
  explicit ConjugateTuple(std::vector<ComplementPair> pairs);

  WeightTuple conjugate() const;
  // u_1 <= ... <= u_p.
  bool sorted() const { return sorted_; }

 private:
  bool sorted_ = false;
};

// t'_k = prod_{i != k} (1 - t_i). Throws SaturationError.
WeightTuple derived_step(const WeightTuple& t);
// u'_k = 1 - prod_{i != k} u_i. Throws SaturationError.
ConjugateTuple conjugate_step(const ConjugateTuple& u);
// As conjugate_step, returning nullopt instead of throwing on saturation.
std::optional<ConjugateTuple> try_conjugate_step(const ConjugateTuple& u);

enum class Phase { kBelow, kAbove, kMixed };
const char* to_string(Phase phase);

// Distance below which a coordinate counts as sitting on alpha.
inline constexpr double kPhaseBoundaryTolerance = 1e-15;

// kBelow iff every u_k < alpha, kAbove iff every u_k > alpha, else kMixed
// (including any u_k within kPhaseBoundaryTolerance of alpha).
Phase classify_phase(const ConjugateTuple& u, double alpha);

// max_k u_k / min_k u_k - 1, i.e. u_p / u_1 - 1 for a sorted tuple.
double spread(const ConjugateTuple& u);

struct TrajectoryRecord {
  ConjugateTuple initial;
  // states[0][j] is initial[permutation[j]].
  std::vector<std::size_t> permutation;
  double alpha = 0.0;
  std::vector<ConjugateTuple> states;
  // log_products[m][k] = sum_{i != k} ln u_i^(m), the log of t_k^(m+1).
  std::vector<std::vector<double>> log_products;
  std::vector<double> spread;
  std::vector<Phase> phase;
  // Index of the first state that could not be represented, if reached.
  std::optional<std::size_t> saturation_step;

  std::size_t size() const { return states.size(); }
  int p() const { return initial.p(); }
};

// Sorts u0 ascending (stable), then iterates the conjugate system for up to
// max_steps steps, stopping early at saturation. Records max_steps + 1
// states when no saturation occurs.
TrajectoryRecord run_trajectory(const ConjugateTuple& u0, std::size_t max_steps,
                                double alpha);

// f_p(x) = 1 - x^(p-1) and its inverse on [0, 1], on complement pairs.
ComplementPair comparison_map(const ComplementPair& x, int p);
ComplementPair comparison_map_inverse(const ComplementPair& y, int p);

// tau_0 .. tau_steps with tau_{m+1} = 1 - tau_m^(p-1).
std::vector<ComplementPair> comparison_sequence(const ComplementPair& tau0, int p,
                                                std::size_t steps);
std::vector<double> comparison_sequence(double tau0, int p, std::size_t steps);

}  // namespace barypoly
