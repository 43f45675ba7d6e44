#include "barypoly/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "barypoly/stationary.hpp"

namespace barypoly {
namespace {

const ExtendedReal kHalf(0.5);

// b / a - 1 for 0 < a <= b, computed from the complements when both are
// close to 1.
ExtendedReal ratio_excess(const ComplementPair& a, const ComplementPair& b) {
  if (a.value > kHalf && b.value > kHalf) return (a.complement - b.complement) / a.value;
  return (b.value - a.value) / a.value;
}

// Relative difference on the half of `expected` that carries the digits.
double pair_difference(const ComplementPair& expected, const ComplementPair& actual) {
  if (expected.value > kHalf) {
    return relative_difference(expected.complement, actual.complement);
  }
  return relative_difference(expected.value, actual.value);
}

void require_states(const TrajectoryRecord& traj, std::size_t m, std::size_t ahead,
                    const char* what) {
  if (m + ahead >= traj.size()) {
    throw std::invalid_argument(std::string(what) + ": step " + std::to_string(m + ahead) +
                                " not recorded");
  }
}

LemmaCCertificate certify(const ConjugateTuple& u0, const ConjugateTuple& u1,
                          const ConjugateTuple& u2, std::size_t m) {
  const std::size_t p = u0.size();
  if (p < 3) throw std::invalid_argument("lemma_c_certificate: p must be at least 3");
  if (!u0.sorted()) throw std::invalid_argument("lemma_c_certificate: state is not sorted");
  if (compare(u0.pair(0), u0.pair(p - 1)) >= 0) {
    throw std::invalid_argument("lemma_c_certificate: state is regular (u_1 = u_p)");
  }

  // With u' the next state, u_r - pi = u_r u'_r, and the middle factors of
  // u_1'' = 1 - u'_p prod_mid u'_r give C = 1 - prod_mid u'_r.
  LemmaCCertificate cert;
  cert.m = m;
  cert.pi = product(u0.pairs()).value;
  cert.K = ExtendedReal(1.0);
  std::vector<ComplementPair> middle_next;
  for (std::size_t r = 1; r + 1 < p; ++r) {
    cert.K *= u0.pair(r).value * u1.pair(r).value;
    middle_next.push_back(u1.pair(r));
  }
  cert.C = product(middle_next).complement;

  const ExtendedReal& first = u0.pair(0).value;
  const ExtendedReal& last = u0.pair(p - 1).value;
  cert.ratio_bound = cert.K * first / cert.C;
  cert.contraction = (cert.ratio_bound / (ExtendedReal(1.0) + cert.ratio_bound)).to_double();
  cert.identity_error_first = relative_difference(u2.pair(0).value, cert.K * first + cert.C);
  cert.identity_error_last = relative_difference(u2.pair(p - 1).value, cert.K * last + cert.C);
  return cert;
}

}  // namespace

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
  // coeffs[j] is the coefficient of X^(n-j) in prod (X - v), i.e. (-1)^j e_j.
  std::vector<double> coeffs{1.0};
  coeffs.reserve(values.size() + 1);
  for (double v : values) {
    coeffs.push_back(0.0);
    for (std::size_t j = coeffs.size() - 1; j > 0; --j) coeffs[j] -= v * coeffs[j - 1];
  }
  for (std::size_t j = 1; j < coeffs.size(); j += 2) coeffs[j] = -coeffs[j];
  return coeffs;
}

double elementary_symmetric(std::span<const double> values, std::size_t i) {
  if (i > values.size()) {
    throw std::invalid_argument("elementary_symmetric: index " + std::to_string(i) +
                                " exceeds " + std::to_string(values.size()));
  }
  return elementary_symmetric_all(values)[i];
}

bool LemmaCCertificate::valid(double slack) const {
  return K.sign() > 0 && C.sign() > 0 && ratio_bound.sign() > 0 &&
         ratio_bound < ExtendedReal(1.0 + slack) && contraction < 0.5 + slack &&
         identity_error_first <= kIdentityTolerance &&
         identity_error_last <= kIdentityTolerance;
}

LemmaCCertificate lemma_c_certificate(const TrajectoryRecord& traj, std::size_t m) {
  require_states(traj, m, 2, "lemma_c_certificate");
  return certify(traj.states[m], traj.states[m + 1], traj.states[m + 2], m);
}

LemmaCCertificate lemma_c_certificate(const ConjugateTuple& state) {
  const ConjugateTuple next = conjugate_step(state);
  return certify(state, next, conjugate_step(next), 0);
}

double c_coefficient_symmetric_form(std::span<const double> u) {
  const std::size_t p = u.size();
  if (p < 3) throw std::invalid_argument("c_coefficient_symmetric_form: p must be at least 3");
  double pi = 1.0;
  for (double x : u) pi *= x;
  const auto middle = u.subspan(1, p - 2);
  double shifted = 1.0;
  for (double x : middle) shifted *= x - pi;
  return u.front() * u.back() * (elementary_symmetric(middle, p - 2) - shifted) / pi;
}

double c_coefficient_alternating_sum(std::span<const double> u) {
  const std::size_t p = u.size();
  if (p < 3) throw std::invalid_argument("c_coefficient_alternating_sum: p must be at least 3");
  double pi = 1.0;
  for (double x : u) pi *= x;
  const std::vector<double> e = elementary_symmetric_all(u.subspan(1, p - 2));
  double sum = 0.0;
  double pi_power = 1.0;
  for (std::size_t j = 0; j + 3 <= p; ++j) {
    const double term = e[p - 3 - j] * pi_power;
    sum += (j % 2 == 0) ? term : -term;
    pi_power *= pi;
  }
  return u.front() * u.back() * sum;
}

void CheckOutcome::record(std::size_t m, double excess) {
  ++evaluated;
  if (evaluated == 1 || excess > worst) worst = excess;
  if (excess > 0.0 && passed) {
    passed = false;
    first_violation = m;
  }
}

CheckOutcome check_sortedness(const TrajectoryRecord& traj, double slack) {
  CheckOutcome out;
  for (std::size_t m = 0; m < traj.size(); ++m) {
    const ConjugateTuple& u = traj.states[m];
    bool ok = true;
    for (std::size_t k = 1; k < u.size(); ++k) {
      ok = ok && less_equal_with_slack(u.pair(k - 1), u.pair(k), slack);
    }
    out.record(m, ok ? 0.0 : 1.0);
  }
  return out;
}

CheckOutcome check_ratio_monotonicity(std::span<const ConjugateTuple> states) {
  CheckOutcome out;
  for (std::size_t m = 0; m + 2 < states.size(); ++m) {
    const ConjugateTuple& before = states[m];
    const ConjugateTuple& after = states[m + 2];
    double excess = -kLemmaSlack;
    for (std::size_t k = 0; k < after.size(); ++k) {
      for (std::size_t l = k + 1; l < after.size(); ++l) {
        const double now = ratio_excess(after.pair(k), after.pair(l)).to_double();
        const double then = ratio_excess(before.pair(k), before.pair(l)).to_double();
        // Ratio at least 1, and no larger than two steps earlier.
        excess = std::max(excess, -now - kLemmaSlack);
        excess = std::max(excess, now - then - kLemmaSlack * std::max(1.0, 1.0 + then));
      }
    }
    out.record(m, excess);
  }
  return out;
}

CheckOutcome check_ratio_monotonicity(const TrajectoryRecord& traj) {
  return check_ratio_monotonicity(std::span<const ConjugateTuple>(traj.states));
}

CheckOutcome check_spread_halving(const TrajectoryRecord& traj) {
  CheckOutcome out;
  for (std::size_t m = 0; m + 2 < traj.size(); ++m) {
    const double s = traj.spread[m];
    if (!(s > kLemmaSlack)) continue;
    out.record(m, traj.spread[m + 2] - 0.5 * s - kLemmaSlack * std::max(1.0, s));
  }
  return out;
}

CheckOutcome check_spread_decay(const TrajectoryRecord& traj) {
  CheckOutcome out;
  const double s0 = traj.spread.front();
  double bound = s0;
  for (std::size_t m = 0; m < traj.size(); m += 2) {
    out.record(m, traj.spread[m] - bound - kLemmaSlack * std::max(1.0, bound));
    bound *= 0.5;
  }
  return out;
}

CheckOutcome check_lemma_c_certificates(const TrajectoryRecord& traj) {
  CheckOutcome out;
  if (traj.p() < 3) return out;
  for (std::size_t m = 0; m + 2 < traj.size(); ++m) {
    if (!(traj.spread[m] > kLemmaSlack) || !traj.states[m].sorted()) continue;
    const LemmaCCertificate cert = lemma_c_certificate(traj, m);
    out.record(m, cert.valid(kLemmaSlack) ? -1.0 : 1.0);
  }
  return out;
}

CheckOutcome check_t_ratio_transfer(const TrajectoryRecord& traj) {
  CheckOutcome out;
  for (std::size_t m = 0; m + 1 < traj.size(); m += 2) {
    const ConjugateTuple& u = traj.states[m];
    const ConjugateTuple& next = traj.states[m + 1];
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t l = k + 1; l < u.size(); ++l) {
        const ExtendedReal t_ratio = next.pair(l).complement / next.pair(k).complement;
        const ExtendedReal u_ratio = u.pair(k).value / u.pair(l).value;
        worst = std::max(worst, relative_difference(t_ratio, u_ratio));
      }
    }
    out.record(m, worst - kLemmaSlack);
  }
  return out;
}

CheckOutcome check_step_relation(std::span<const ConjugateTuple> states, double tol) {
  CheckOutcome out;
  for (std::size_t m = 0; m + 1 < states.size(); ++m) {
    const auto expected = try_conjugate_step(states[m]);
    if (!expected || expected->size() != states[m + 1].size()) {
      out.record(m, 1.0);
      continue;
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < expected->size(); ++k) {
      worst = std::max(worst, pair_difference(expected->pair(k), states[m + 1].pair(k)));
    }
    out.record(m, worst - tol);
  }
  return out;
}

AlternationReport detect_alternation(const TrajectoryRecord& traj) {
  AlternationReport report;
  for (std::size_t m = 0; m < traj.phase.size(); ++m) {
    if (traj.phase[m] != Phase::kMixed) {
      report.m0 = m;
      break;
    }
  }
  if (!report.m0) return report;
  report.pattern.assign(traj.phase.begin() + static_cast<std::ptrdiff_t>(*report.m0),
                        traj.phase.end());
  for (std::size_t j = 1; j < report.pattern.size(); ++j) {
    const Phase prev = report.pattern[j - 1];
    const Phase here = report.pattern[j];
    const bool flips = (prev == Phase::kBelow && here == Phase::kAbove) ||
                       (prev == Phase::kAbove && here == Phase::kBelow);
    if (!flips) ++report.violations;
  }
  return report;
}

const char* to_string(ParityLimit limit) {
  switch (limit) {
    case ParityLimit::kEvenToZeroOddToOne:
      return "EVEN_TO_ZERO_ODD_TO_ONE";
    case ParityLimit::kEvenToOneOddToZero:
      return "EVEN_TO_ONE_ODD_TO_ZERO";
    case ParityLimit::kUndecided:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

ParityLimit even_odd_limits(const TrajectoryRecord& traj, double tol) {
  if (!(tol > 0.0 && tol < 0.5)) {
    throw std::invalid_argument("even_odd_limits: tol must lie in (0, 0.5)");
  }
  if (traj.size() < 2) return ParityLimit::kUndecided;
  const std::size_t last = traj.size() - 1;
  const std::size_t last_even = last % 2 == 0 ? last : last - 1;
  const std::size_t last_odd = last % 2 == 1 ? last : last - 1;
  const ExtendedReal bound(tol);

  auto near_zero = [&](const ConjugateTuple& u) {
    return std::all_of(u.pairs().begin(), u.pairs().end(),
                       [&](const ComplementPair& x) { return x.value < bound; });
  };
  auto near_one = [&](const ConjugateTuple& u) {
    return std::all_of(u.pairs().begin(), u.pairs().end(),
                       [&](const ComplementPair& x) { return x.complement < bound; });
  };
  const ConjugateTuple& even = traj.states[last_even];
  const ConjugateTuple& odd = traj.states[last_odd];
  if (near_zero(even) && near_one(odd)) return ParityLimit::kEvenToZeroOddToOne;
  if (near_one(even) && near_zero(odd)) return ParityLimit::kEvenToOneOddToZero;
  return ParityLimit::kUndecided;
}

ParityLimit expected_parity_limit(Phase phase_at_m0, std::size_t m0) {
  if (phase_at_m0 == Phase::kMixed) return ParityLimit::kUndecided;
  const bool below_on_even = (phase_at_m0 == Phase::kBelow) == (m0 % 2 == 0);
  return below_on_even ? ParityLimit::kEvenToZeroOddToOne : ParityLimit::kEvenToOneOddToZero;
}

DominationReport check_comparison_domination(const TrajectoryRecord& traj) {
  DominationReport report;
  const int p = traj.p();
  if (p < 3) return report;
  const AlternationReport alternation = detect_alternation(traj);
  if (!alternation.m0) return report;
  for (std::size_t m = *alternation.m0; m + 1 < traj.size(); ++m) {
    if (traj.phase[m] == Phase::kBelow) {
      report.start = m;
      break;
    }
  }
  if (!report.start) return report;

  const std::size_t s = *report.start;
  const std::size_t last = static_cast<std::size_t>(p) - 1;
  const ComplementPair& top = traj.states[s].pair(last);
  const ComplementPair& next_bottom = traj.states[s + 1].pair(0);
  report.tau0 = compare(next_bottom, comparison_map(top, p)) > 0
                    ? top
                    : comparison_map_inverse(next_bottom, p);

  const auto tau = comparison_sequence(report.tau0, p, traj.size() - 1 - s);
  report.holds = true;
  for (std::size_t j = 0; s + j < traj.size(); ++j) {
    if (tau[j].saturated()) break;
    const ConjugateTuple& u = traj.states[s + j];
    const bool ok = j % 2 == 0 ? less_equal_with_slack(u.pair(last), tau[j], kLemmaSlack)
                               : less_equal_with_slack(tau[j], u.pair(0), kLemmaSlack);
    ++report.checked;
    if (!ok) {
      report.holds = false;
      report.first_violation = s + j;
      break;
    }
  }
  return report;
}

bool SpectralReport::passed() const {
  const bool dets = (!det_at_beta || std::abs(*det_at_beta) <= kDeterminantTolerance) &&
                    (!det_at_repulsive || std::abs(*det_at_repulsive) <= kDeterminantTolerance);
  return ones_residual <= kActionTolerance && sum_zero_residual <= kActionTolerance && dets &&
         repulsive_magnitude > 1.0;
}

std::vector<std::vector<double>> linearized_matrix(int p) {
  if (p < 3) throw std::invalid_argument("linearized_matrix: p must be at least 3");
  const double beta = certificate(p).beta;
  const auto n = static_cast<std::size_t>(p);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, -beta));
  for (std::size_t k = 0; k < n; ++k) a[k][k] = 0.0;
  return a;
}

SpectralReport spectral_check(int p) {
  if (p < 3) throw std::invalid_argument("spectral_check: p must be at least 3");
  const StationaryCertificate cert = certificate(p);
  SpectralReport report;
  report.p = p;
  report.beta = cert.beta;
  report.repulsive_magnitude = std::abs(cert.lambda_repulsive);

  const auto rows = linearized_matrix(p);
  Eigen::MatrixXd a(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p);
  report.ones_residual = (a * ones - cert.lambda_repulsive * ones).cwiseAbs().maxCoeff();
  for (int j = 1; j < p; ++j) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    w(0) = 1.0;
    w(j) = -1.0;
    report.sum_zero_residual = std::max(
        report.sum_zero_residual, (a * w - cert.lambda_contractive * w).cwiseAbs().maxCoeff());
  }

  if (p <= 8) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(p, p);
    report.det_at_beta = (cert.lambda_contractive * id - a).determinant();
    report.det_at_repulsive = (cert.lambda_repulsive * id - a).determinant();
  }
  return report;
}

MetricValue sequence_metric(const WeightTuple& t1, const WeightTuple& t2, std::size_t horizon) {
  if (t1.size() != t2.size()) {
    throw std::invalid_argument("sequence_metric: tuples differ in length");
  }
  MetricValue out;
  WeightTuple a = t1;
  WeightTuple b = t2;
  for (std::size_t n = 0;; ++n) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      const ComplementPair& x = a.pair(k);
      const ComplementPair& y = b.pair(k);
      const ExtendedReal gap = x.value > kHalf && y.value > kHalf ? y.complement - x.complement
                                                                 : x.value - y.value;
      out.value = std::max(out.value, std::abs(gap.to_double()));
    }
    out.horizon_used = n;
    if (n == horizon) break;
    try {
      WeightTuple next_a = derived_step(a);
      WeightTuple next_b = derived_step(b);
      a = std::move(next_a);
      b = std::move(next_b);
    } catch (const SaturationError&) {
      break;
    }
  }
  return out;
}

}  // namespace barypoly
