#include "cyclordf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "cyclordf/errors.hpp"
#include "cyclordf/parallel.hpp"

namespace cyclordf {

EpsilonSpec EpsilonSpec::rational(std::int64_t u, std::int64_t v) {
  if (v <= 0 || u < 0 || u >= v)
    throw Error(ErrorKind::InvalidArgument, "epsilon: rational u/v requires 0 <= u < v");
  if (std::gcd(u, v) != 1)
    throw Error(ErrorKind::InvalidArgument, "epsilon: rational u/v must be in lowest terms");
  return EpsilonSpec(RationalEpsilon{u, v});
}

EpsilonSpec EpsilonSpec::irrational(double value, std::string label) {
  if (!(value >= 0.0 && value < 1.0))
    throw Error(ErrorKind::InvalidArgument, "epsilon: irrational value must lie in [0, 1)");
  return EpsilonSpec(IrrationalEpsilon{value, std::move(label)});
}

double EpsilonSpec::value() const {
  if (is_rational()) {
    const auto& r = as_rational();
    return static_cast<double>(r.u) / static_cast<double>(r.v);
  }
  return as_irrational().value;
}

std::string EpsilonSpec::describe() const {
  std::ostringstream os;
  if (is_rational()) {
    os << "rational:" << as_rational().u << "/" << as_rational().v;
  } else {
    os.precision(17);
    os << "irrational:" << as_irrational().value;
    if (!as_irrational().label.empty()) os << " (" << as_irrational().label << ")";
  }
  return os.str();
}

std::pair<int, EpsilonSpec> decompose_interval(double period, double target_ts) {
  if (!(target_ts > 0.0) || !(period > 0.0))
    throw Error(ErrorKind::InvalidArgument, "target_ts: must be positive");
  const double ratio = period / target_ts;
  const double p = std::floor(ratio);
  if (p < 1.0)
    throw Error(ErrorKind::InvalidArgument, "target_ts: must not exceed the period Tc");
  const double eps = ratio - p;
  if (eps == 0.0) return {static_cast<int>(p), EpsilonSpec::rational(0, 1)};
  return {static_cast<int>(p), EpsilonSpec::irrational(eps, "derived from target Ts")};
}

SamplingClass classify(int p, const EpsilonSpec& epsilon) {
  if (!epsilon.is_rational()) return {SamplingKind::Asynchronous, 0};
  const auto& r = epsilon.as_rational();
  return {SamplingKind::Synchronous, static_cast<std::int64_t>(p) * r.v + r.u};
}

int max_autocorr_lag(const CtSourceModel& model, int p) {
  return static_cast<int>(
      std::ceil((p + 1) * model.kernel.max_lag / model.profile.period));
}

double sample_phase(const SamplingSpec& spec, double period, std::int64_t i) {
  const double t = static_cast<double>(i) * spec.interval(period) + spec.phase;
  double r = std::fmod(t, period);
  if (r < 0.0) r += period;
  return r >= period ? 0.0 : r;
}

EquidistributionReport phase_equidistribution(const SamplingSpec& spec, double period,
                                              std::int64_t n, int bins) {
  if (n <= 0 || bins <= 1)
    throw Error(ErrorKind::InvalidArgument, "equidistribution: need n > 0 and bins > 1");
  std::vector<std::int64_t> counts(bins, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = sample_phase(spec, period, i) / period;
    const int b = std::min(bins - 1, static_cast<int>(u * bins));
    ++counts[b];
  }
  EquidistributionReport r;
  r.n = n;
  r.bins = bins;
  const double expected = static_cast<double>(n) / bins;
  const double q = 1.0 / bins;
  r.standard_error = std::sqrt(static_cast<double>(n) * q * (1.0 - q));
  for (auto c : counts) {
    r.max_deviation = std::max(r.max_deviation, std::abs(c - expected));
    if (c > 0) ++r.distinct_occupied_bins;
  }
  r.equidistributed = r.max_deviation < 5.0 * r.standard_error;
  return r;
}

CovarianceMatrix::CovarianceMatrix(Matrix values, int bandwidth)
    : values_(std::move(values)), bandwidth_(bandwidth) {
  if (values_.rows() != values_.cols())
    throw Error(ErrorKind::InvalidArgument, "covariance: matrix must be square");
  const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale)
    throw Error(ErrorKind::InvalidArgument, "covariance: matrix must be symmetric");
}

CovarianceMatrix build_covariance(const CtSourceModel& model, const SamplingSpec& spec,
                                  int jobs) {
  if (spec.blocklength < 1)
    throw Error(ErrorKind::InvalidArgument, "blocklength: must be positive");
  if (spec.p < 1) throw Error(ErrorKind::InvalidArgument, "p: must be positive");

  const int l = spec.blocklength;
  const int band = max_autocorr_lag(model, spec.p);
  const double ts = spec.interval(model.profile.period);
  Matrix c = Matrix::Zero(l, l);

  // Row i owns entries (i, j) for j >= i; the mirror write is to (j, i), a
  // column no other row touches, so rows can be filled concurrently.
  auto fill_row = [&](std::size_t row) {
    const int i = static_cast<int>(row);
    const double t = i * ts + spec.phase;
    const int last = std::min(l - 1, i + band - 1);
    for (int j = i; j <= last; ++j) {
      const double v = eval_autocorrelation(model, t, (j - i) * ts);
      c(i, j) = v;
      c(j, i) = v;
    }
  };
  parallel_for(static_cast<std::size_t>(l), fill_row, jobs);

  const double md = max_diagonal(c);
  if (!psd_within(c, 1e-10 * md))
    throw Error(ErrorKind::DegenerateCovariance,
                "covariance has an eigenvalue below -1e-10 * max diagonal");
  return CovarianceMatrix(std::move(c), band);
}

}  // namespace cyclordf
