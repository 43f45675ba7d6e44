#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "barypoly/analysis.hpp"
#include "barypoly/stationary.hpp"
#include "barypoly/verification.hpp"
#include "oracles.hpp"

using namespace barypoly;

namespace {

std::vector<double> sorted_random(std::mt19937_64& rng, std::size_t p, double lo, double hi) {
  std::vector<double> u = oracle::uniform_tuple(rng, p, lo, hi);
  std::sort(u.begin(), u.end());
  return u;
}

TrajectoryRecord reference_seed_trajectory(std::size_t steps) {
  const WeightTuple t({0.3, 0.08, 0.06, 0.04, 0.01});
  return run_trajectory(t.conjugate(), steps, solve_alpha(5));
}

}  // namespace

TEST(ElementarySymmetric, HandExpansion) {
  const std::vector<double> v = {2, 3, 5};
  EXPECT_EQ(elementary_symmetric(v, 0), 1.0);
  EXPECT_EQ(elementary_symmetric(v, 1), 10.0);
  EXPECT_EQ(elementary_symmetric(v, 2), 31.0);
  EXPECT_EQ(elementary_symmetric(v, 3), 30.0);
  EXPECT_THROW(elementary_symmetric(v, 4), std::invalid_argument);
  EXPECT_EQ(elementary_symmetric(std::vector<double>{}, 0), 1.0);
}

TEST(ElementarySymmetric, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const std::vector<double> v = oracle::uniform_tuple(rng, n, -2.0, 2.0);
    std::vector<double> brute(n + 1, 0.0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) prod *= v[i];
      }
      brute[static_cast<std::size_t>(__builtin_popcount(mask))] += prod;
    }
    const auto all = elementary_symmetric_all(v);
    for (std::size_t i = 0; i <= n; ++i) EXPECT_NEAR(all[i], brute[i], 1e-12);
  }
}

TEST(LemmaCCertificate, HandEvaluatedK) {
  const LemmaCCertificate cert = lemma_c_certificate(ConjugateTuple({0.2, 0.3, 0.4, 0.5}));
  EXPECT_NEAR(cert.pi.to_double(), 0.012, 1e-17);
  EXPECT_NEAR(cert.K.to_double(), (0.3 - 0.012) * (0.4 - 0.012), 1e-16);
  EXPECT_NEAR(cert.K.to_double(), 0.111744, 1e-15);
  EXPECT_TRUE(cert.valid());
  EXPECT_LT(cert.contraction, 0.5);
}

TEST(LemmaCCertificate, ThreeCoordinateCase) {
  // p = 3: K = u_2 - pi and C = u_1 u_3.
  const LemmaCCertificate cert = lemma_c_certificate(ConjugateTuple({0.2, 0.5, 0.7}));
  EXPECT_NEAR(cert.K.to_double(), 0.5 - 0.07, 1e-16);
  EXPECT_NEAR(cert.C.to_double(), 0.14, 1e-16);
  EXPECT_TRUE(cert.valid());
}

TEST(LemmaCCertificate, IdentitiesAgainstNaiveTwoSteps) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const std::size_t p = 4 + i % 5;
    const std::vector<double> u = sorted_random(rng, p, 0.01, 0.99);
    // Two steps with plain doubles.
    std::vector<double> v = u;
    for (int s = 0; s < 2; ++s) {
      std::vector<double> next(p);
      for (std::size_t k = 0; k < p; ++k) {
        double prod = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
          if (j != k) prod *= v[j];
        }
        next[k] = 1.0 - prod;
      }
      v = next;
    }
    const LemmaCCertificate cert = lemma_c_certificate(ConjugateTuple(u));
    const double k = cert.K.to_double();
    const double c = cert.C.to_double();
    EXPECT_NEAR((k * u.front() + c) / v.front(), 1.0, 1e-10) << "case " << i;
    EXPECT_NEAR((k * u.back() + c) / v.back(), 1.0, 1e-10) << "case " << i;
    EXPECT_TRUE(cert.valid()) << "case " << i;
  }
}

TEST(LemmaCCertificate, StableFormAgreesWithSymmetricForms) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 300; ++i) {
    const std::size_t p = 3 + i % 6;
    const std::vector<double> u = sorted_random(rng, p, 0.3, 0.99);
    const double c = lemma_c_certificate(ConjugateTuple(u)).C.to_double();
    EXPECT_NEAR(c_coefficient_symmetric_form(u), c, 1e-9 * c) << "case " << i;
    if (p <= 6) EXPECT_NEAR(c_coefficient_alternating_sum(u), c, 1e-9 * c) << "case " << i;
  }
}

TEST(LemmaCCertificate, RejectsInvalidStates) {
  EXPECT_THROW(lemma_c_certificate(ConjugateTuple({0.4, 0.4, 0.4})), std::invalid_argument);
  EXPECT_THROW(lemma_c_certificate(ConjugateTuple({0.4, 0.6})), std::invalid_argument);
  EXPECT_THROW(lemma_c_certificate(ConjugateTuple({0.5, 0.4, 0.6})), std::invalid_argument);
  const TrajectoryRecord traj = reference_seed_trajectory(3);
  EXPECT_THROW(lemma_c_certificate(traj, 2), std::invalid_argument);
}

TEST(LemmaCCertificate, AlongReferenceSeedTrajectory) {
  const TrajectoryRecord traj = reference_seed_trajectory(200);
  const CheckOutcome out = check_lemma_c_certificates(traj);
  EXPECT_TRUE(out.passed);
  EXPECT_GT(out.evaluated, 10u);
  for (std::size_t m = 0; m + 2 < 12; ++m) {
    const LemmaCCertificate cert = lemma_c_certificate(traj, m);
    EXPECT_LT(cert.contraction, 0.5) << m;
    EXPECT_LE(cert.identity_error_first, 1e-10) << m;
    EXPECT_LE(cert.identity_error_last, 1e-10) << m;
  }
}

TEST(RatioMonotonicity, RegularTrajectoryIsTrivial) {
  const TrajectoryRecord traj =
      run_trajectory(ConjugateTuple(std::vector<double>(4, 0.3)), 20, solve_alpha(4));
  const CheckOutcome out = check_ratio_monotonicity(traj);
  EXPECT_TRUE(out.passed);
  for (double s : traj.spread) EXPECT_EQ(s, 0.0);
}

TEST(RatioMonotonicity, RandomSeedPasses) {
  std::mt19937_64 rng(16);
  const TrajectoryRecord traj =
      run_trajectory(ConjugateTuple(random_unit_tuple(rng, 5)), 200, solve_alpha(5));
  EXPECT_TRUE(check_ratio_monotonicity(traj).passed);
}

TEST(RatioMonotonicity, FlagsNonTrajectoryStates) {
  const std::vector<ConjugateTuple> states = {ConjugateTuple({0.2, 0.3, 0.4}),
                                              ConjugateTuple({0.5, 0.6, 0.7}),
                                              ConjugateTuple({0.1, 0.5, 0.9}),
                                              ConjugateTuple({0.5, 0.6, 0.7})};
  const CheckOutcome out = check_ratio_monotonicity(states);
  EXPECT_FALSE(out.passed);
  ASSERT_TRUE(out.first_violation.has_value());
  EXPECT_EQ(*out.first_violation, 0u);
}

TEST(TrajectoryChecks, ReferenceSeedPassesAll) {
  const TrajectoryRecord traj = reference_seed_trajectory(200);
  EXPECT_TRUE(check_sortedness(traj).passed);
  EXPECT_TRUE(check_spread_halving(traj).passed);
  EXPECT_TRUE(check_spread_decay(traj).passed);
  EXPECT_TRUE(check_t_ratio_transfer(traj).passed);
  EXPECT_TRUE(check_step_relation(traj.states, 1e-12).passed);
}

TEST(TrajectoryChecks, StepRelationFlagsTampering) {
  TrajectoryRecord traj = reference_seed_trajectory(10);
  std::vector<double> v = traj.states[3].values();
  v[0] *= 1.0 + 1e-9;
  traj.states[3] = ConjugateTuple(v);
  const CheckOutcome out = check_step_relation(traj.states, 1e-12);
  EXPECT_FALSE(out.passed);
  EXPECT_EQ(out.first_violation.value(), 2u);
}

TEST(DetectAlternation, BelowSeedStartsAtZero) {
  const double a = solve_alpha(4);
  const TrajectoryRecord traj = run_trajectory(ConjugateTuple({0.1, 0.2, 0.3, 0.4}), 30, a);
  const AlternationReport r = detect_alternation(traj);
  ASSERT_TRUE(r.m0.has_value());
  EXPECT_EQ(*r.m0, 0u);
  EXPECT_EQ(r.violations, 0u);
  ASSERT_GE(r.pattern.size(), 3u);
  EXPECT_EQ(r.pattern[0], Phase::kBelow);
  EXPECT_EQ(r.pattern[1], Phase::kAbove);
  EXPECT_EQ(r.pattern[2], Phase::kBelow);
}

TEST(DetectAlternation, StationarySeedNotFound) {
  const TrajectoryRecord traj = run_trajectory(stationary_conjugate(3), 10, solve_alpha(3));
  EXPECT_FALSE(detect_alternation(traj).m0.has_value());
}

TEST(DetectAlternation, ReferenceSeedFindsM0WithoutViolations) {
  const TrajectoryRecord traj = reference_seed_trajectory(200);
  const AlternationReport r = detect_alternation(traj);
  ASSERT_TRUE(r.m0.has_value());
  EXPECT_EQ(r.violations, 0u);
}

TEST(EvenOddLimits, Examples) {
  const double a = solve_alpha(4);
  const TrajectoryRecord below = run_trajectory(ConjugateTuple({0.1, 0.2, 0.3, 0.4}), 60, a);
  EXPECT_EQ(even_odd_limits(below, 1e-6), ParityLimit::kEvenToZeroOddToOne);
  EXPECT_EQ(expected_parity_limit(Phase::kBelow, 0), ParityLimit::kEvenToZeroOddToOne);
  EXPECT_EQ(expected_parity_limit(Phase::kBelow, 1), ParityLimit::kEvenToOneOddToZero);
  EXPECT_EQ(expected_parity_limit(Phase::kAbove, 0), ParityLimit::kEvenToOneOddToZero);

  const TrajectoryRecord above = run_trajectory(ConjugateTuple({0.8, 0.9, 0.95, 0.97}), 60, a);
  EXPECT_EQ(even_odd_limits(above, 1e-6), ParityLimit::kEvenToOneOddToZero);

  const TrajectoryRecord fixed = run_trajectory(stationary_conjugate(4), 10, a);
  EXPECT_EQ(even_odd_limits(fixed, 1e-6), ParityLimit::kUndecided);
  EXPECT_THROW(even_odd_limits(fixed, 0.5), std::invalid_argument);
  EXPECT_THROW(even_odd_limits(fixed, 0.0), std::invalid_argument);
}

TEST(ComparisonDomination, ReferenceSeedAndBelowSeed) {
  const DominationReport reference = check_comparison_domination(reference_seed_trajectory(200));
  EXPECT_TRUE(reference.holds);
  EXPECT_GT(reference.checked, 10u);

  const TrajectoryRecord below =
      run_trajectory(ConjugateTuple({0.1, 0.2, 0.3, 0.4}), 200, solve_alpha(4));
  const DominationReport r = check_comparison_domination(below);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.start.value(), 0u);
}

TEST(SpectralCheck, QuadraticCaseClosedForm) {
  const SpectralReport r = spectral_check(3);
  EXPECT_NEAR(r.beta, (std::sqrt(5.0) - 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(r.repulsive_magnitude, std::sqrt(5.0) - 1.0, 1e-14);
  EXPECT_TRUE(r.passed());
}

TEST(SpectralCheck, SumZeroVectorScaledByBeta) {
  const auto a = linearized_matrix(4);
  const double beta = certificate(4).beta;
  const std::vector<double> w = {1, -1, 0, 0};
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) row += a[i][j] * w[j];
    EXPECT_NEAR(row, beta * w[i], 1e-15);
  }
}

TEST(SpectralCheck, CharacteristicPolynomialAgainstLeibniz) {
  std::mt19937_64 rng(17);
  for (int p = 3; p <= 8; ++p) {
    const auto a = linearized_matrix(p);
    const double beta = certificate(p).beta;
    auto char_det = [&](double lambda) {
      oracle::Matrix m = a;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = (i == j ? lambda : 0.0) - a[i][j];
      }
      return oracle::leibniz_determinant(m);
    };
    EXPECT_NEAR(char_det(beta), 0.0, 1e-9) << p;
    EXPECT_NEAR(char_det((1 - p) * beta), 0.0, 1e-9) << p;
    for (int s = 0; s < 3; ++s) {
      const double lambda = oracle::uniform(rng, -2.0, 2.0);
      const double expected = std::pow(lambda - beta, p - 1) * (lambda + (p - 1) * beta);
      EXPECT_NEAR(char_det(lambda), expected, 1e-10) << p;
    }
    const SpectralReport r = spectral_check(p);
    ASSERT_TRUE(r.det_at_beta && r.det_at_repulsive);
    EXPECT_NEAR(*r.det_at_beta, char_det(beta), 1e-9);
    EXPECT_TRUE(r.passed()) << p;
  }
}

TEST(SpectralCheck, PassesUpTo32) {
  for (int p = 3; p <= 32; ++p) {
    const SpectralReport r = spectral_check(p);
    EXPECT_TRUE(r.passed()) << p;
    EXPECT_EQ(r.det_at_beta.has_value(), p <= 8);
  }
  EXPECT_THROW(spectral_check(2), std::invalid_argument);
}

TEST(SequenceMetric, Properties) {
  std::mt19937_64 rng(18);
  const WeightTuple s = stationary_point(4);
  const WeightTuple t({0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(sequence_metric(t, t, 20).value, 0.0);
  const double expected0 = std::max({std::abs(0.1 - s[0]), std::abs(0.2 - s[0]),
                                     std::abs(0.3 - s[0]), std::abs(0.4 - s[0])});
  EXPECT_NEAR(sequence_metric(t, s, 0).value, expected0, 1e-16);
  EXPECT_EQ(sequence_metric(t, s, 0).horizon_used, 0u);

  for (int i = 0; i < 100; ++i) {
    const WeightTuple a(oracle::uniform_tuple(rng, 4, 0.01, 0.99));
    const WeightTuple b(oracle::uniform_tuple(rng, 4, 0.01, 0.99));
    const WeightTuple c(oracle::uniform_tuple(rng, 4, 0.01, 0.99));
    const double ab = sequence_metric(a, b, 15).value;
    EXPECT_GE(ab, 0.0);
    EXPECT_EQ(ab, sequence_metric(b, a, 15).value);
    EXPECT_LE(ab, sequence_metric(a, c, 15).value + sequence_metric(c, b, 15).value + 1e-15);
    double prev = 0.0;
    for (std::size_t h = 0; h <= 15; h += 3) {
      const double here = sequence_metric(a, b, h).value;
      EXPECT_GE(here, prev);
      prev = here;
    }
  }
  EXPECT_THROW(sequence_metric(t, WeightTuple({0.1, 0.2, 0.3}), 2), std::invalid_argument);
}
