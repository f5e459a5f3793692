#pragma once

#include <span>

namespace cyclordf {

/// Pairwise (cascade) summation with a fixed split order, so the result
/// depends only on the input sequence.
double pairwise_sum(std::span<const double> xs);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double standard_error = 0.0;
};

SampleMoments sample_moments(std::span<const double> xs);

}  // namespace cyclordf
