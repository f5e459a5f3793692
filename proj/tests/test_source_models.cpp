#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cyclordf/errors.hpp"
#include "cyclordf/linalg.hpp"
#include "cyclordf/source_models.hpp"
#include "fixtures.hpp"

using namespace cyclordf;
using cyclordf::testing::kPi;
using cyclordf::testing::sinusoidal_model;

namespace {

ErrorKind kind_of(const CtSourceModel& m) {
  try {
    validate_model(m);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;  // sentinel: no throw
}

}  // namespace

TEST(Kernel, TentValues) {
  CorrelationKernel k{KernelKind::Tent, 2.0};
  EXPECT_DOUBLE_EQ(k(0.0), 1.0);
  EXPECT_DOUBLE_EQ(k(0.5), 0.75);
  EXPECT_DOUBLE_EQ(k(-1.0), 0.5);
  EXPECT_DOUBLE_EQ(k(2.0), 0.0);
  EXPECT_DOUBLE_EQ(k(7.0), 0.0);
}

TEST(Kernel, ParzenValuesAndContinuity) {
  CorrelationKernel k{KernelKind::Parzen, 1.0};
  EXPECT_DOUBLE_EQ(k(0.0), 1.0);
  EXPECT_NEAR(k(0.25), 1.0 - 6 * 0.0625 + 6 * 0.015625, 1e-15);
  EXPECT_NEAR(k(0.75), 2 * 0.015625, 1e-15);
  // Both branches meet at 1/4.
  EXPECT_NEAR(k(0.5 - 1e-12), k(0.5 + 1e-12), 1e-10);
  EXPECT_NEAR(k(0.5), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(k(1.0), 0.0);
  EXPECT_DOUBLE_EQ(k(-0.3), k(0.3));
}

// Both kernels are positive definite functions: Gram matrices on arbitrary
// point sets are PSD.
TEST(Kernel, GramMatricesArePsd) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.0, 5.0);
  for (auto kind : {KernelKind::Tent, KernelKind::Parzen}) {
    CorrelationKernel k{kind, 1.3};
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 12;
      std::vector<double> t(n);
      for (auto& x : t) x = pos(rng);
      Matrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = k(t[i] - t[j]);
      EXPECT_GE(symmetric_eigen(g).values.minCoeff(), -1e-12) << to_string(kind);
    }
  }
}

TEST(Model, VarianceFollowsProfile) {
  auto m = sinusoidal_model(4.0);
  EXPECT_NEAR(eval_variance(m, 0.0), 5.0, 1e-15);
  EXPECT_NEAR(eval_variance(m, 1.0), 5.0 + 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(eval_variance(m, 3.0), 5.0 - 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(m.profile.beta(), 16.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.profile.positivity_margin(), 14.0 / 3.0, 1e-15);
}

TEST(Model, AutocorrelationAtZeroLagIsVariance) {
  auto m = sinusoidal_model(1.0);
  for (double t : {0.0, 0.1, 0.37, 0.9}) EXPECT_DOUBLE_EQ(eval_autocorrelation(m, t, 0.0), eval_variance(m, t));
}

TEST(Model, AutocorrelationIsSeparable) {
  auto m = sinusoidal_model(1.0, 0.5, KernelKind::Tent);
  const double t = 0.2, lag = 0.3;
  const double expect = std::sqrt(eval_variance(m, t) * eval_variance(m, t + lag)) * (1.0 - lag / 0.5);
  EXPECT_NEAR(eval_autocorrelation(m, t, lag), expect, 1e-14);
}

TEST(Model, PeriodicSymmetricAndBounded) {
  CtSourceModel m = sinusoidal_model(2.5, 1.7);
  m.profile.harmonics.push_back({3, -0.4, 0.8});
  const double beta = m.profile.beta();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(-10.0, 10.0), lag(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double a = t(rng), b = lag(rng);
    const double c = eval_autocorrelation(m, a, b);
    EXPECT_NEAR(c, eval_autocorrelation(m, a + 2.5, b), 1e-12);
    EXPECT_NEAR(c, eval_autocorrelation(m, a + b, -b), 1e-12);
    EXPECT_LE(std::abs(c), beta + 1e-12);
    if (std::abs(b) >= 1.7) EXPECT_EQ(c, 0.0);
  }
}

TEST(Model, ValidateReport) {
  auto r = validate_model(sinusoidal_model(4 * kPi, 2.0));
  EXPECT_NEAR(r.beta, 16.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.max_lag, 2.0);
  EXPECT_DOUBLE_EQ(r.period, 4 * kPi);
}

TEST(Model, ValidateRejectsBadModels) {
  auto base = sinusoidal_model();

  auto m = base;
  m.profile.period = 0.0;
  EXPECT_EQ(kind_of(m), ErrorKind::InvalidModel);

  m = base;
  m.kernel.max_lag = -1.0;
  EXPECT_EQ(kind_of(m), ErrorKind::InvalidModel);

  m = base;
  m.profile.harmonics = {{1, 6.0, 0.0}};  // variance dips below zero
  EXPECT_EQ(kind_of(m), ErrorKind::InvalidModel);

  m = base;
  m.profile.harmonics = {{0, 0.1, 0.0}};
  EXPECT_EQ(kind_of(m), ErrorKind::InvalidModel);

  m = base;
  m.profile.offset = std::nan("");
  EXPECT_EQ(kind_of(m), ErrorKind::InvalidModel);
}

TEST(Model, ConstantProfileExamples) {
  CtSourceModel m;
  m.profile.offset = 2.0;
  m.kernel = {KernelKind::Tent, 1.0};
  for (double t : {0.0, 0.3, 17.2}) EXPECT_DOUBLE_EQ(eval_variance(m, t), 2.0);
  m.profile.offset = 1.0;
  EXPECT_DOUBLE_EQ(eval_autocorrelation(m, 0.0, 0.5), 0.5);
  EXPECT_EQ(eval_autocorrelation(m, 0.2, 1.0), 0.0);
  EXPECT_EQ(eval_autocorrelation(sinusoidal_model(1.0, 0.5), 0.2, -0.5), 0.0);
}

TEST(Model, ValidationExamples) {
  auto r = validate_model(sinusoidal_model(1.0, 1.0, KernelKind::Tent));
  EXPECT_NEAR(r.beta, 5.3333, 1e-4);

  CtSourceModel m;
  m.profile.offset = 1.0;
  m.profile.harmonics = {{1, 2.0, 0.0}};
  m.kernel = {KernelKind::Tent, 1.0};
  try {
    validate_model(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("positivity"), std::string::npos);
  }

  m = sinusoidal_model();
  m.kernel.max_lag = 0.0;
  try {
    validate_model(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("max_lag"), std::string::npos);
  }
}
