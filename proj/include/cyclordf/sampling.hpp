#pragma once

// Uniform sampling of a continuous-time source with interval
// Ts = Tc / (p + epsilon), and construction of the covariance of the first
// l samples,
//
//   C(i, j) = c(i * Ts + phi_s, (j - i) * Ts).
//
// The matrix is banded: entries vanish for |i - j| >= ceil((p + 1) lambda_c / Tc).

#include <cstdint>
#include <string>
#include <variant>

#include "cyclordf/linalg.hpp"
#include "cyclordf/source_models.hpp"

namespace cyclordf {

struct RationalEpsilon {
  std::int64_t u = 0;
  std::int64_t v = 1;
};

/// Caller-asserted irrational mismatch. Irrationality cannot be read off a
/// double, so the tag is the source of truth.
struct IrrationalEpsilon {
  double value = 0.0;
  std::string label;
};

class EpsilonSpec {
 public:
  /// Throws InvalidArgument unless 0 <= u < v and gcd(u, v) = 1.
  static EpsilonSpec rational(std::int64_t u, std::int64_t v);
  /// Throws InvalidArgument unless value lies in [0, 1).
  static EpsilonSpec irrational(double value, std::string label);

  bool is_rational() const { return std::holds_alternative<RationalEpsilon>(rep_); }
  const RationalEpsilon& as_rational() const { return std::get<RationalEpsilon>(rep_); }
  const IrrationalEpsilon& as_irrational() const { return std::get<IrrationalEpsilon>(rep_); }
  double value() const;
  std::string describe() const;

 private:
  explicit EpsilonSpec(std::variant<RationalEpsilon, IrrationalEpsilon> rep)
      : rep_(std::move(rep)) {}
  std::variant<RationalEpsilon, IrrationalEpsilon> rep_;
};

struct SamplingSpec {
  int p = 1;
  EpsilonSpec epsilon = EpsilonSpec::rational(0, 1);
  double phase = 0.0;  // phi_s in [0, Tc)
  int blocklength = 1;

  double interval(double period) const { return period / (p + epsilon.value()); }
};

/// (p, epsilon) realising a requested Ts; epsilon is tagged irrational unless
/// Tc / Ts is an exact integer.
std::pair<int, EpsilonSpec> decompose_interval(double period, double target_ts);

enum class SamplingKind { Synchronous, Asynchronous };

struct SamplingClass {
  SamplingKind kind = SamplingKind::Synchronous;
  std::int64_t period = 0;  // p*v + u for synchronous sampling, 0 otherwise
};

SamplingClass classify(int p, const EpsilonSpec& epsilon);

/// ceil((p + 1) * lambda_c / Tc).
int max_autocorr_lag(const CtSourceModel& model, int p);

/// (i * Ts + phi_s) mod Tc.
double sample_phase(const SamplingSpec& spec, double period, std::int64_t i);

/// Histogram test of the first n sample phases over `bins` equal bins of
/// [0, Tc). Passes when the largest deviation from n / bins stays under
/// 5 binomial standard errors.
struct EquidistributionReport {
  std::int64_t n = 0;
  int bins = 0;
  double max_deviation = 0.0;
  double standard_error = 0.0;
  int distinct_occupied_bins = 0;
  bool equidistributed = false;
};

EquidistributionReport phase_equidistribution(const SamplingSpec& spec, double period,
                                              std::int64_t n, int bins);

class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;
  /// Throws InvalidArgument if `values` is not square and symmetric.
  CovarianceMatrix(Matrix values, int bandwidth);

  int order() const { return static_cast<int>(values_.rows()); }
  int bandwidth() const { return bandwidth_; }
  const Matrix& values() const { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }
  double trace() const { return values_.trace(); }
  double max_diagonal() const { return cyclordf::max_diagonal(values_); }

 private:
  Matrix values_;
  int bandwidth_ = 0;
};

/// Serial reference and OpenMP kernel produce identical matrices; `jobs`
/// selects the route. Throws DegenerateCovariance if the result is not PSD
/// within 1e-10 * max diagonal.
CovarianceMatrix build_covariance(const CtSourceModel& model, const SamplingSpec& spec,
                                  int jobs = 1);

}  // namespace cyclordf
