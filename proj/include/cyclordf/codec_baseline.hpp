#pragma once

// Operational transform coder: rotate into the eigenbasis of C_X, quantize
// every mode whose reverse-waterfill allocation mu_i is below lambda_i with a
// uniform mid-tread quantizer of step sqrt(12 mu_i), discard the rest, and
// measure the plug-in entropy of the indices. Any such code must sit on or
// above R(D).

#include <cstdint>
#include <vector>

#include "cyclordf/rdf_solver.hpp"
#include "cyclordf/spectrum_validator.hpp"

namespace cyclordf {

struct CodecPoint {
  double target_distortion = 0.0;
  double empirical_rate = 0.0;  // bits per sample
  double rate_stderr = 0.0;
  double empirical_distortion = 0.0;  // MSE per sample
  double distortion_stderr = 0.0;
  /// tr(E{e e^T}) / l from the empirical error second-moment matrix.
  double distortion_from_error_covariance = 0.0;
  std::vector<double> step_sizes;  // coded modes only, descending eigenvalue order
  int blocklength = 0;
  std::int64_t n_draws = 0;
  std::uint64_t seed = 0;
};

CodecPoint transform_code(const CovarianceMatrix& source, double target_distortion,
                          const McConfig& config);

struct DominanceEntry {
  double distortion = 0.0;
  double codec_rate = 0.0;
  double rate_stderr = 0.0;
  double rdf_rate = 0.0;
  double margin = 0.0;  // codec_rate + 3 stderr - rdf_rate
  bool dominated = false;
};

struct DominanceReport {
  std::vector<DominanceEntry> entries;
  bool all_dominated = true;
};

/// R(D) at each point's measured distortion is read off `rdf_curve` (same
/// blocklength) by linear interpolation, clamped at the grid ends.
DominanceReport dominance_report(const std::vector<CodecPoint>& points,
                                 const std::vector<RdfCurvePoint>& rdf_curve);

}  // namespace cyclordf
