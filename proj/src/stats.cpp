#include "cyclordf/stats.hpp"

#include <cmath>
#include <vector>

namespace cyclordf {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments m;
  const std::size_t n = xs.size();
  if (n == 0) return m;
  m.mean = pairwise_sum(xs) / static_cast<double>(n);
  if (n < 2) return m;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (xs[i] - m.mean) * (xs[i] - m.mean);
  m.variance = pairwise_sum(sq) / static_cast<double>(n - 1);
  m.standard_error = std::sqrt(m.variance / static_cast<double>(n));
  return m;
}

}  // namespace cyclordf
