#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "barypoly/dynamics.hpp"

namespace barypoly {

// i-th elementary symmetric polynomial of the values, read off the
// coefficients of prod_r (X - v_r) expanded one factor at a time.
// Throws std::invalid_argument unless 0 <= i <= values.size().
double elementary_symmetric(std::span<const double> values, std::size_t i);
// e_0 .. e_n.
std::vector<double> elementary_symmetric_all(std::span<const double> values);

// Two-step affine relation u_k^(m+2) = K u_k^(m) + C for k in {1, p}.
struct LemmaCCertificate {
  std::size_t m = 0;
  ExtendedReal pi;  // prod_k u_k^(m)
  ExtendedReal K;   // prod_{1<r<p} (u_r^(m) - pi)
  ExtendedReal C;
  ExtendedReal ratio_bound;  // K u_1 / C; far below binary64 range deep in a run
  double contraction = 0.0;  // 1 - C / (K u_1 + C)
  double identity_error_first = 0.0;  // relative, k = 1
  double identity_error_last = 0.0;   // relative, k = p

  static constexpr double kIdentityTolerance = 1e-10;
  // K, C > 0, ratio_bound < 1 + slack, contraction < 1/2 + slack, and both
  // identities within kIdentityTolerance.
  bool valid(double slack = 0.0) const;
};

// Certificate for states m and m + 2 of a trajectory. Throws
// std::invalid_argument for p < 3, missing states, unsorted states or a
// regular state (u_1 = u_p).
LemmaCCertificate lemma_c_certificate(const TrajectoryRecord& traj, std::size_t m);
// Same for a single sorted state; the next two states are computed here.
LemmaCCertificate lemma_c_certificate(const ConjugateTuple& state);

// C_m evaluated in binary64 from the symmetric-polynomial form
// (e_{p-2}(u_2..u_{p-1}) - prod_r (u_r - pi)) u_1 u_p / pi, and from the
// alternating sum u_1 u_p sum_j (-1)^j e_{p-3-j}(u_2..u_{p-1}) pi^j.
// Cross-checks only; both cancel badly once pi << u_r.
double c_coefficient_symmetric_form(std::span<const double> sorted_state);
double c_coefficient_alternating_sum(std::span<const double> sorted_state);

// Result of a check over a trajectory.
struct CheckOutcome {
  bool passed = true;
  std::optional<std::size_t> first_violation;  // step index
  double worst = 0.0;  // largest violation measure seen (<= 0 when passing)
  std::size_t evaluated = 0;

  void record(std::size_t m, double excess);
};

inline constexpr double kSortSlack = 1e-14;
inline constexpr double kLemmaSlack = 1e-12;

// Every recorded state ascending, within kSortSlack relative.
CheckOutcome check_sortedness(const TrajectoryRecord& traj, double slack = kSortSlack);

// For k < l and each m: 1 <= u_l/u_k at m + 2 and u_l/u_k at m + 2 is at
// most its value at m, both up to kLemmaSlack.
CheckOutcome check_ratio_monotonicity(const TrajectoryRecord& traj);
CheckOutcome check_ratio_monotonicity(std::span<const ConjugateTuple> states);

// spread[m + 2] < spread[m] / 2 whenever spread[m] > 1e-12.
CheckOutcome check_spread_halving(const TrajectoryRecord& traj);

// spread[2q] <= 2^-q spread[0].
CheckOutcome check_spread_decay(const TrajectoryRecord& traj);

// lemma_c_certificate(traj, m).valid(kLemmaSlack) at every m with
// spread[m] > 1e-12. Deep in a run the gap 1 - K u_1 / C drops below 2^-53.
CheckOutcome check_lemma_c_certificates(const TrajectoryRecord& traj);

// t_l/t_k at step 2q + 1 equals u_k/u_l at step 2q, within 1e-12 relative.
CheckOutcome check_t_ratio_transfer(const TrajectoryRecord& traj);

// states[m + 1] == conjugate_step(states[m]) within tol, on whichever half
// of each coordinate is the more precise one.
CheckOutcome check_step_relation(std::span<const ConjugateTuple> states, double tol);

struct AlternationReport {
  std::optional<std::size_t> m0;  // nullopt when every state is MIXED
  std::vector<Phase> pattern;     // phases from m0 onwards
  std::size_t violations = 0;
};

AlternationReport detect_alternation(const TrajectoryRecord& traj);

enum class ParityLimit { kEvenToZeroOddToOne, kEvenToOneOddToZero, kUndecided };
const char* to_string(ParityLimit limit);

// Decides from the last recorded even and odd states which parity has every
// u_k < tol and which has every 1 - u_k < tol. Throws std::invalid_argument
// unless 0 < tol < 0.5.
ParityLimit even_odd_limits(const TrajectoryRecord& traj, double tol);

// The parity assignment implied by the phase at m0: a BELOW state at an
// even m0 heads to 0 along even steps.
ParityLimit expected_parity_limit(Phase phase_at_m0, std::size_t m0);

struct DominationReport {
  bool holds = false;
  std::optional<std::size_t> start;  // first BELOW step at or after m0
  ComplementPair tau0;
  std::size_t checked = 0;
  std::optional<std::size_t> first_violation;
};

// Starting at the first BELOW step s >= m0, sets tau_s = u_p^(s) when
// u_1^(s+1) > f(u_p^(s)) and tau_s = f^{-1}(u_1^(s+1)) otherwise, then checks
// u_p <= tau on steps s + 2q and tau <= u_1 on steps s + 2q + 1 (relative
// slack kLemmaSlack). holds is false if no such s exists.
DominationReport check_comparison_domination(const TrajectoryRecord& traj);

struct SpectralReport {
  int p = 0;
  double beta = 0.0;
  double ones_residual = 0.0;      // max |A 1 - (1 - p) beta 1|
  double sum_zero_residual = 0.0;  // max over w of |A w - beta w|
  std::optional<double> det_at_beta;        // p <= 8 only
  std::optional<double> det_at_repulsive;   // p <= 8 only
  double repulsive_magnitude = 0.0;

  static constexpr double kActionTolerance = 1e-13;
  static constexpr double kDeterminantTolerance = 1e-9;
  bool passed() const;
};

// Linearised update at the stationary point: zero diagonal, -beta elsewhere.
std::vector<std::vector<double>> linearized_matrix(int p);

// Throws std::invalid_argument for p < 3.
SpectralReport spectral_check(int p);

struct MetricValue {
  double value = 0.0;
  std::size_t horizon_used = 0;
};

// max over k and n <= horizon of |t1_k^(n) - t2_k^(n)| along the derived
// system. A truncation of the supremum over all n, so a lower bound; stops
// early (horizon_used < horizon) if either orbit saturates.
MetricValue sequence_metric(const WeightTuple& t1, const WeightTuple& t2,
                            std::size_t horizon);

}  // namespace barypoly
