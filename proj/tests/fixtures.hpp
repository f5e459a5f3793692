#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "cyclordf/linalg.hpp"
#include "cyclordf/sampling.hpp"
#include "cyclordf/source_models.hpp"

namespace cyclordf::testing {

inline constexpr double kPi = std::numbers::pi;

// Variance 5 + (1/3) sin(2 pi t / Tc).
inline CtSourceModel sinusoidal_model(double period = 1.0, double max_lag = 0.5,
                                      KernelKind kind = KernelKind::Parzen) {
  CtSourceModel m;
  m.profile.period = period;
  m.profile.offset = 5.0;
  m.profile.harmonics = {{1, 1.0 / 3.0, 0.0}};
  m.kernel = {kind, max_lag};
  return m;
}

// Constant variance; correlation support shorter than Ts = Tc / p gives a
// white sampled sequence.
inline CtSourceModel white_model(double variance, int p, double period = 1.0) {
  CtSourceModel m;
  m.profile.period = period;
  m.profile.offset = variance;
  m.kernel = {KernelKind::Tent, period / p};
  return m;
}

inline SamplingSpec sync_spec(int p, int l, double phase = 0.0) {
  SamplingSpec s;
  s.p = p;
  s.phase = phase;
  s.blocklength = l;
  return s;
}

// Random symmetric positive definite matrix with bandwidth `band`
// (entries vanish for |i - j| >= band), made diagonally dominant.
inline Matrix random_banded_pd(int l, int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> d(0.5, 3.0);
  Matrix m = Matrix::Zero(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l && j - i < band; ++j) m(i, j) = m(j, i) = u(rng);
  for (int i = 0; i < l; ++i) m(i, i) = m.row(i).cwiseAbs().sum() + d(rng);
  return m;
}

inline double frobenius_commutator(const Matrix& a, const Matrix& b) {
  return (a * b - b * a).norm();
}

}  // namespace cyclordf::testing
