#include "cyclordf/codec_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cyclordf/errors.hpp"
#include "cyclordf/stats.hpp"

namespace cyclordf {

namespace {

struct ModeEntropy {
  double entropy = 0.0;   // bits
  double variance = 0.0;  // of the per-draw self-information
};

ModeEntropy plug_in_entropy(const std::vector<std::int64_t>& indices) {
  std::map<std::int64_t, std::int64_t> counts;
  for (auto q : indices) ++counts[q];
  const double n = static_cast<double>(indices.size());
  std::vector<double> info(indices.size());
  std::map<std::int64_t, double> self_info;
  for (const auto& [q, c] : counts) self_info[q] = -std::log2(static_cast<double>(c) / n);
  for (std::size_t i = 0; i < indices.size(); ++i) info[i] = self_info[indices[i]];
  const SampleMoments m = sample_moments(info);
  return {m.mean, m.variance};
}

}  // namespace

CodecPoint transform_code(const CovarianceMatrix& source, double target_distortion,
                          const McConfig& config) {
  const RdfResult rdf = rdf_fixed_block(source, target_distortion);
  const int l = source.order();
  const Matrix x = sample_gaussian(source, config, "codec");
  const Matrix coeffs = x * rdf.eigenvectors;  // row r: V^T x_r
  const Eigen::Index n = x.rows();

  CodecPoint pt;
  pt.target_distortion = target_distortion;
  pt.blocklength = l;
  pt.n_draws = config.n_draws;
  pt.seed = config.seed;

  Matrix recon_coeffs = Matrix::Zero(n, l);
  double rate_var = 0.0;
  double rate_sum = 0.0;
  std::vector<std::int64_t> idx(n);
  for (int i = 0; i < l; ++i) {
    if (!(rdf.mode_distortions[i] < rdf.eigenvalues[i])) continue;  // discarded mode
    const double step = std::sqrt(12.0 * rdf.mode_distortions[i]);
    pt.step_sizes.push_back(step);
    for (Eigen::Index r = 0; r < n; ++r) {
      idx[r] = static_cast<std::int64_t>(std::llround(coeffs(r, i) / step));
      recon_coeffs(r, i) = static_cast<double>(idx[r]) * step;
    }
    const ModeEntropy h = plug_in_entropy(idx);
    rate_sum += h.entropy;
    rate_var += h.variance;
  }
  pt.empirical_rate = rate_sum / l;
  pt.rate_stderr = std::sqrt(rate_var / static_cast<double>(n)) / l;

  const Matrix err = x - recon_coeffs * rdf.eigenvectors.transpose();
  std::vector<double> mse(n);
  const Vector sq = err.rowwise().squaredNorm();
  for (Eigen::Index r = 0; r < n; ++r) mse[r] = sq(r) / l;
  const SampleMoments dm = sample_moments(mse);
  pt.empirical_distortion = dm.mean;
  pt.distortion_stderr = dm.standard_error;
  const Matrix err_cov = err.transpose() * err / static_cast<double>(n);
  pt.distortion_from_error_covariance = err_cov.trace() / l;
  return pt;
}

DominanceReport dominance_report(const std::vector<CodecPoint>& points,
                                 const std::vector<RdfCurvePoint>& rdf_curve) {
  DominanceReport rep;
  for (const auto& pt : points) {
    std::vector<RdfCurvePoint> curve;
    for (const auto& c : rdf_curve)
      if (c.blocklength == pt.blocklength) curve.push_back(c);
    if (curve.empty())
      throw Error(ErrorKind::InvalidArgument, "dominance: no R(D) curve for the codec blocklength");
    std::sort(curve.begin(), curve.end(),
              [](const auto& a, const auto& b) { return a.distortion < b.distortion; });

    const double d = pt.empirical_distortion;
    double r;
    if (d <= curve.front().distortion) {
      r = curve.front().rate;
    } else if (d >= curve.back().distortion) {
      r = curve.back().rate;
    } else {
      auto hi = std::upper_bound(curve.begin(), curve.end(), d,
                                 [](double v, const auto& c) { return v < c.distortion; });
      auto lo = hi - 1;
      const double w = (d - lo->distortion) / (hi->distortion - lo->distortion);
      r = (1.0 - w) * lo->rate + w * hi->rate;
    }

    DominanceEntry e;
    e.distortion = d;
    e.codec_rate = pt.empirical_rate;
    e.rate_stderr = pt.rate_stderr;
    e.rdf_rate = r;
    e.margin = pt.empirical_rate + 3.0 * pt.rate_stderr - r;
    e.dominated = e.margin >= 0.0;
    rep.all_dominated = rep.all_dominated && e.dominated;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace cyclordf
