#pragma once

// Continuous-time wide-sense cyclostationary Gaussian source models.
//
// The autocorrelation is separable,
//
//   c(t, lag) = a(t) * a(t + lag) * rho(lag),
//
// i.e. a stationary process with compactly supported correlation rho,
// amplitude-modulated by a periodic envelope a(t). The squared envelope is a
// finite trigonometric polynomial
//
//   a^2(t) = offset + sum_k amplitude_k * sin(2 pi k t / Tc + phase_k),
//
// so the process is periodic in t, has bounded variance and finite memory by
// construction.

#include <string>
#include <vector>

namespace cyclordf {

struct Harmonic {
  int order = 1;
  double amplitude = 0.0;
  double phase = 0.0;  // radians
};

struct VarianceProfile {
  double period = 1.0;  // Tc, seconds
  double offset = 1.0;
  std::vector<Harmonic> harmonics;

  /// offset + sum |amplitude|, an upper bound on a^2(t).
  double beta() const;
  /// offset - sum |amplitude|, a lower bound on a^2(t).
  double positivity_margin() const;
};

enum class KernelKind { Tent, Parzen };

struct CorrelationKernel {
  KernelKind kind = KernelKind::Tent;
  double max_lag = 1.0;  // lambda_c, seconds

  /// rho(lag); exactly 0 for |lag| >= max_lag.
  double operator()(double lag) const;
};

struct CtSourceModel {
  VarianceProfile profile;
  CorrelationKernel kernel;
};

double eval_variance(const CtSourceModel& model, double t);
double eval_autocorrelation(const CtSourceModel& model, double t, double lag);

struct ValidationReport {
  double beta = 0.0;
  double max_lag = 0.0;
  double period = 0.0;
  double positivity_margin = 0.0;
};

/// Throws Error(InvalidModel) naming the violated invariant.
ValidationReport validate_model(const CtSourceModel& model);

std::string to_string(KernelKind kind);

}  // namespace cyclordf
