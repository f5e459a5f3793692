#include "cyclordf/source_models.hpp"

#include <cmath>
#include <numbers>

#include "cyclordf/errors.hpp"

namespace cyclordf {

double VarianceProfile::beta() const {
  double s = offset;
  for (const auto& h : harmonics) s += std::abs(h.amplitude);
  return s;
}

double VarianceProfile::positivity_margin() const {
  double s = offset;
  for (const auto& h : harmonics) s -= std::abs(h.amplitude);
  return s;
}

double CorrelationKernel::operator()(double lag) const {
  const double x = std::abs(lag) / max_lag;
  if (!(x < 1.0)) return 0.0;
  switch (kind) {
    case KernelKind::Tent:
      return 1.0 - x;
    case KernelKind::Parzen:
      // Cubic B-spline, the self-convolution of a box taken four times.
      if (x <= 0.5) return 1.0 - 6.0 * x * x + 6.0 * x * x * x;
      return 2.0 * (1.0 - x) * (1.0 - x) * (1.0 - x);
  }
  return 0.0;
}

namespace {

double squared_envelope(const VarianceProfile& p, double t) {
  // Reduce t into one period first so that the sine arguments stay small and
  // c(t + Tc, lag) reproduces c(t, lag) to rounding.
  const double tau = std::fmod(t, p.period);
  double v = p.offset;
  for (const auto& h : p.harmonics) {
    v += h.amplitude *
         std::sin(2.0 * std::numbers::pi * h.order * tau / p.period + h.phase);
  }
  return v;
}

}  // namespace

double eval_variance(const CtSourceModel& model, double t) {
  return squared_envelope(model.profile, t);
}

double eval_autocorrelation(const CtSourceModel& model, double t, double lag) {
  const double r = model.kernel(lag);
  if (r == 0.0) return 0.0;
  if (lag == 0.0) return eval_variance(model, t);
  return std::sqrt(squared_envelope(model.profile, t) *
                   squared_envelope(model.profile, t + lag)) *
         r;
}

ValidationReport validate_model(const CtSourceModel& model) {
  const auto& p = model.profile;
  if (!(p.period > 0.0) || !std::isfinite(p.period))
    throw Error(ErrorKind::InvalidModel, "period: must be positive and finite");
  if (!(p.offset > 0.0) || !std::isfinite(p.offset))
    throw Error(ErrorKind::InvalidModel, "offset: must be positive and finite");
  for (const auto& h : p.harmonics) {
    if (h.order < 1)
      throw Error(ErrorKind::InvalidModel, "harmonics: order must be a positive integer");
    if (!std::isfinite(h.amplitude) || !std::isfinite(h.phase))
      throw Error(ErrorKind::InvalidModel, "harmonics: non-finite amplitude or phase");
  }
  if (!(p.positivity_margin() > 0.0))
    throw Error(ErrorKind::InvalidModel,
                "positivity: offset must exceed the sum of |amplitude|");
  if (!(model.kernel.max_lag > 0.0) || !std::isfinite(model.kernel.max_lag))
    throw Error(ErrorKind::InvalidModel, "max_lag: must be positive and finite");
  return ValidationReport{p.beta(), model.kernel.max_lag, p.period, p.positivity_margin()};
}

std::string to_string(KernelKind kind) {
  return kind == KernelKind::Tent ? "tent" : "parzen";
}

}  // namespace cyclordf
