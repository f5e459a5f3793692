#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cyclordf/errors.hpp"
#include "cyclordf/sampling.hpp"
#include "fixtures.hpp"

using namespace cyclordf;
using cyclordf::testing::kPi;
using cyclordf::testing::sinusoidal_model;
using cyclordf::testing::sync_spec;

namespace {

constexpr double kGolden = 0.6180339887498949;

// Closed-form variance sequence a^2(i Ts + phi) of the sinusoidal profile.
double profile_variance(double period, double ts, double phase, int i) {
  return 5.0 + std::sin(2.0 * kPi * (i * ts + phase) / period) / 3.0;
}

}  // namespace

// =============================================================================
// Epsilon and classification
// =============================================================================

TEST(Epsilon, RationalPreconditions) {
  EXPECT_NO_THROW(EpsilonSpec::rational(0, 1));
  EXPECT_NO_THROW(EpsilonSpec::rational(2, 5));
  EXPECT_THROW(EpsilonSpec::rational(1, 1), Error);
  EXPECT_THROW(EpsilonSpec::rational(-1, 3), Error);
  EXPECT_THROW(EpsilonSpec::rational(2, 4), Error);
  EXPECT_THROW(EpsilonSpec::rational(0, 0), Error);
}

TEST(Epsilon, IrrationalPreconditions) {
  EXPECT_NO_THROW(EpsilonSpec::irrational(kGolden, "golden"));
  EXPECT_THROW(EpsilonSpec::irrational(1.0, "one"), Error);
  EXPECT_THROW(EpsilonSpec::irrational(-0.1, "neg"), Error);
  EXPECT_THROW(EpsilonSpec::irrational(std::nan(""), "nan"), Error);
}

TEST(Epsilon, Describe) {
  EXPECT_EQ(EpsilonSpec::rational(1, 2).describe(), "rational:1/2");
  EXPECT_DOUBLE_EQ(EpsilonSpec::rational(1, 2).value(), 0.5);
  EXPECT_EQ(EpsilonSpec::irrational(0.25, "").describe().rfind("irrational:", 0), 0u);
}

TEST(Classify, SynchronousPeriod) {
  auto c = classify(3, EpsilonSpec::rational(1, 2));
  EXPECT_EQ(c.kind, SamplingKind::Synchronous);
  EXPECT_EQ(c.period, 7);

  c = classify(4, EpsilonSpec::rational(0, 1));
  EXPECT_EQ(c.kind, SamplingKind::Synchronous);
  EXPECT_EQ(c.period, 4);

  c = classify(2, EpsilonSpec::rational(3, 7));
  EXPECT_EQ(c.period, 17);
}

TEST(Classify, TaggedIrrationalIsAsynchronous) {
  auto c = classify(4, EpsilonSpec::irrational(kGolden, "golden-ratio conjugate"));
  EXPECT_EQ(c.kind, SamplingKind::Asynchronous);
  EXPECT_EQ(c.period, 0);
}

TEST(Classify, DecomposeInterval) {
  auto [p, eps] = decompose_interval(4 * kPi, 1.0);
  EXPECT_EQ(p, 12);
  EXPECT_FALSE(eps.is_rational());
  EXPECT_NEAR(eps.value(), 4 * kPi - 12, 1e-12);

  auto [p2, eps2] = decompose_interval(2.0, 0.5);
  EXPECT_EQ(p2, 4);
  ASSERT_TRUE(eps2.is_rational());
  EXPECT_EQ(eps2.as_rational().u, 0);

  EXPECT_THROW(decompose_interval(1.0, 2.0), Error);
  EXPECT_THROW(decompose_interval(1.0, 0.0), Error);
}

TEST(Classify, MaxAutocorrLag) {
  // ceil((p + 1) lambda_c / Tc)
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(1.0, 1.0), 3), 4);
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(1.0, 0.25), 3), 1);
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(2.0, 4.0), 3), 8);
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(1.0, 0.5), 3), 2);
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(1.0, 0.5), 1), 1);
  EXPECT_EQ(max_autocorr_lag(sinusoidal_model(1.0, 2.5), 2), 8);
}

TEST(Classify, SamplePhase) {
  SamplingSpec s = sync_spec(4, 8, 0.1);
  EXPECT_NEAR(sample_phase(s, 1.0, 0), 0.1, 1e-15);
  EXPECT_NEAR(sample_phase(s, 1.0, 3), 0.85, 1e-15);
  EXPECT_NEAR(sample_phase(s, 1.0, 4), 0.1, 1e-12);
  EXPECT_NEAR(sample_phase(s, 1.0, 5), 0.35, 1e-12);

  const SamplingSpec cyc = sync_spec(4, 5);
  const double expect[] = {0.0, 0.25, 0.5, 0.75, 0.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(sample_phase(cyc, 1.0, i), expect[i], 1e-15);

  // Ts = Tc / 2, phi_s = Tc / 3 with Tc = 2: (Tc/2 + Tc/3) mod Tc = 5 Tc / 6.
  const SamplingSpec half = sync_spec(2, 2, 2.0 / 3.0);
  EXPECT_NEAR(sample_phase(half, 2.0, 1), 5.0 / 3.0, 1e-15);
  // With p = 1 every sample lands on phi_s.
  const SamplingSpec one = sync_spec(1, 2, 2.0 / 3.0);
  EXPECT_NEAR(sample_phase(one, 2.0, 1), 2.0 / 3.0, 1e-15);
}

// =============================================================================
// Equidistribution of sample phases
// =============================================================================

TEST(Equidistribution, GoldenRatioPasses) {
  SamplingSpec s;
  s.p = 3;
  s.epsilon = EpsilonSpec::irrational(kGolden, "golden");
  auto r = phase_equidistribution(s, 1.0, 10000, 20);
  EXPECT_TRUE(r.equidistributed);
  EXPECT_EQ(r.distinct_occupied_bins, 20);
  EXPECT_LT(r.max_deviation, 5.0 * r.standard_error);
}

TEST(Equidistribution, RationalFails) {
  SamplingSpec s;
  s.p = 3;
  s.epsilon = EpsilonSpec::rational(1, 2);
  auto r = phase_equidistribution(s, 1.0, 10000, 20);
  EXPECT_FALSE(r.equidistributed);
  EXPECT_LE(r.distinct_occupied_bins, 7);
}

// =============================================================================
// Covariance construction
// =============================================================================

TEST(Covariance, SynchronousDiagonal) {
  // Ts = Tc / 4, phi_s = 0
  auto m = sinusoidal_model(1.0, 0.5);
  auto c = build_covariance(m, sync_spec(4, 8));
  const double expect[] = {5.0, 5.333, 5.0, 4.667};
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(c(i, i), expect[i % 4], 1e-3) << i;
    EXPECT_NEAR(c(i, i), profile_variance(1.0, 0.25, 0.0, i), 1e-13) << i;
  }
}

TEST(Covariance, AsynchronousDiagonal) {
  // Tc = 4 pi, Ts = 1, phi_s = pi / 3
  const double period = 4 * kPi;
  auto m = sinusoidal_model(period, 2.0);
  auto [p, eps] = decompose_interval(period, 1.0);
  SamplingSpec s{p, eps, kPi / 3, 8};
  auto c = build_covariance(m, s);
  const double expect[] = {5.167, 5.285, 5.333, 5.300, 5.193, 5.039, 4.876, 4.743};
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(c(i, i), expect[i], 1e-3) << i;
    EXPECT_NEAR(c(i, i), profile_variance(period, 1.0, kPi / 3, i), 1e-12) << i;
  }
}

TEST(Covariance, OffDiagonalEntry) {
  auto m = sinusoidal_model(1.0, 0.8, KernelKind::Tent);
  SamplingSpec s{3, EpsilonSpec::rational(1, 2), 0.3, 6};
  auto c = build_covariance(m, s);
  const double ts = 1.0 / 3.5;
  const double a0 = profile_variance(1.0, ts, 0.3, 0), a1 = profile_variance(1.0, ts, 0.3, 1);
  EXPECT_NEAR(c(0, 1), std::sqrt(a0 * a1) * (1.0 - ts / 0.8), 1e-13);
  EXPECT_EQ(c(0, 1), c(1, 0));
}

TEST(Covariance, BandedSymmetricPsdOnRandomSpecs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick_p(1, 6), pick_l(1, 40), pick_v(2, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    CtSourceModel m = sinusoidal_model(0.5 + 2.0 * unit(rng), 0.1 + 2.0 * unit(rng),
                                       trial % 2 ? KernelKind::Tent : KernelKind::Parzen);
    m.profile.harmonics.push_back({2, 0.5 * unit(rng), 6.0 * unit(rng)});
    SamplingSpec s;
    s.p = pick_p(rng);
    if (trial % 3 == 0) {
      s.epsilon = EpsilonSpec::irrational(unit(rng) * 0.99, "random");
    } else {
      const auto v = pick_v(rng);
      s.epsilon = EpsilonSpec::rational(1, v);
    }
    s.phase = unit(rng) * m.profile.period;
    s.blocklength = pick_l(rng);
    auto c = build_covariance(m, s);
    const int band = max_autocorr_lag(m, s.p);
    EXPECT_EQ(c.bandwidth(), band);
    for (int i = 0; i < c.order(); ++i)
      for (int j = 0; j < c.order(); ++j) {
        EXPECT_EQ(c(i, j), c(j, i));
        if (std::abs(i - j) >= band) EXPECT_EQ(c(i, j), 0.0);
      }
    EXPECT_GE(symmetric_eigen(c.values()).values.minCoeff(), -1e-10 * c.max_diagonal());
    EXPECT_LE(c.max_diagonal(), m.profile.beta() + 1e-12);
  }
}

// Shifting the phase by one sample interval shifts the block by one index.
TEST(Covariance, PhaseShiftConsistency) {
  auto m = sinusoidal_model(1.0, 0.9);
  SamplingSpec s{3, EpsilonSpec::irrational(kGolden, "golden"), 0.2, 12};
  const double ts = s.interval(1.0);
  auto c = build_covariance(m, s);
  SamplingSpec shifted = s;
  shifted.phase = std::fmod(0.2 + ts, 1.0);
  auto d = build_covariance(m, shifted);
  for (int i = 0; i + 1 < 12; ++i)
    for (int j = 0; j + 1 < 12; ++j) EXPECT_NEAR(c(i + 1, j + 1), d(i, j), 1e-12);
}

// Synchronous sampling with period N: C(i + N, j + N) = C(i, j).
TEST(Covariance, SynchronousPeriodicity) {
  auto m = sinusoidal_model(1.0, 0.9);
  SamplingSpec s{3, EpsilonSpec::rational(1, 2), 0.1, 21};
  auto c = build_covariance(m, s);
  for (int i = 0; i + 7 < 21; ++i)
    for (int j = 0; j + 7 < 21; ++j) EXPECT_NEAR(c(i + 7, j + 7), c(i, j), 1e-12);
}

TEST(Covariance, ParallelRouteMatchesSerial) {
  auto m = sinusoidal_model(1.0, 0.9);
  SamplingSpec s{3, EpsilonSpec::irrational(kGolden, "golden"), 0.37, 200};
  auto a = build_covariance(m, s, 1);
  auto b = build_covariance(m, s, 4);
  EXPECT_TRUE(a.values() == b.values());
}

TEST(Covariance, RejectsBadInput) {
  auto m = sinusoidal_model();
  EXPECT_THROW(build_covariance(m, sync_spec(4, 0)), Error);
  EXPECT_THROW(build_covariance(m, sync_spec(0, 4)), Error);
  Matrix asym(2, 2);
  asym << 1.0, 0.5, 0.4, 1.0;
  EXPECT_THROW(CovarianceMatrix(asym, 2), Error);
  EXPECT_THROW(CovarianceMatrix(Matrix::Identity(2, 3), 1), Error);
}
