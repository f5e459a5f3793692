#include "cyclordf/spectrum_validator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cyclordf/errors.hpp"
#include "cyclordf/parallel.hpp"
#include "cyclordf/rng.hpp"
#include "cyclordf/stats.hpp"

namespace cyclordf {

namespace {

std::int64_t chunk_count(std::int64_t n) { return (n + kDrawsPerChunk - 1) / kDrawsPerChunk; }

/// Rows [chunk * kDrawsPerChunk, ...) of the draw matrix for one stream.
Matrix gaussian_chunk(const Matrix& root, std::uint64_t seed, std::string_view tag,
                      std::int64_t chunk, std::int64_t n_total) {
  const std::int64_t first = chunk * kDrawsPerChunk;
  const std::int64_t rows = std::min(kDrawsPerChunk, n_total - first);
  const Eigen::Index l = root.rows();
  auto gen = named_stream(seed, tag, static_cast<std::uint64_t>(chunk));
  std::normal_distribution<double> normal;
  Matrix g(rows, l);
  for (std::int64_t r = 0; r < rows; ++r)
    for (Eigen::Index j = 0; j < l; ++j) g(r, j) = normal(gen);
  return g * root;  // root is symmetric, so rows are root * g_r
}

/// Symmetric square root with a PSD check relative to `scale`.
Matrix checked_root(const Matrix& c, double scale) {
  if (c.rows() == 0) return c;
  const SymmetricSpectrum s = symmetric_eigen(c);
  if (s.values(s.values.size() - 1) < -1e-10 * scale)
    throw Error(ErrorKind::DegenerateCovariance,
                "sampling covariance has an eigenvalue below -1e-10 * max diagonal");
  return symmetric_sqrt(s);
}

void check_config(const McConfig& config) {
  if (config.n_draws < 1) throw Error(ErrorKind::InvalidArgument, "mc: n_draws must be positive");
}

McReport base_report(const SampleMoments& m, std::int64_t n, std::uint64_t seed) {
  McReport r;
  r.empirical_mean = m.mean;
  r.empirical_variance = m.variance;
  r.standard_error = m.standard_error;
  r.n_draws = n;
  r.seed = seed;
  r.bound_checked = n >= kMinDrawsForBounds;
  return r;
}

}  // namespace

Matrix sample_gaussian(const CovarianceMatrix& c, const McConfig& config, std::string_view tag) {
  check_config(config);
  const Matrix root = checked_root(c.values(), c.max_diagonal());
  Matrix out(config.n_draws, c.order());
  const auto chunks = chunk_count(config.n_draws);
  parallel_for(
      static_cast<std::size_t>(chunks),
      [&](std::size_t k) {
        const auto ck = static_cast<std::int64_t>(k);
        Matrix g = gaussian_chunk(root, config.seed, tag, ck, config.n_draws);
        out.middleRows(ck * kDrawsPerChunk, g.rows()) = g;
      },
      config.jobs);
  return out;
}

InfoDensitySamples info_density_samples(const CovarianceMatrix& source, const RdfResult& rdf,
                                        const McConfig& config) {
  check_config(config);
  const int l = source.order();
  const Matrix& cx = source.values();
  const Matrix& cs = rdf.noise_covariance.values();
  if (cs.rows() != l)
    throw Error(ErrorKind::InvalidArgument, "info density: noise covariance order mismatch");

  Eigen::LLT<Matrix> lx(cx);
  Eigen::LLT<Matrix> ls(cs);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success)
    throw Error(ErrorKind::SingularCovariance,
                "info density: C_X and C_S must be strictly positive definite");

  const Matrix root_hat = checked_root(cx - cs, source.max_diagonal());
  const Matrix root_s = checked_root(cs, source.max_diagonal());

  InfoDensitySamples out;
  out.blocklength = l;
  const double ld_x = 2.0 * lx.matrixLLT().diagonal().array().log().sum();
  const double ld_s = 2.0 * ls.matrixLLT().diagonal().array().log().sum();
  out.log_det_ratio = (ld_x - ld_s) / std::numbers::ln2;
  out.z.resize(config.n_draws);
  out.vtilde.resize(config.n_draws);

  const double log2e = std::numbers::log2e;
  const auto chunks = chunk_count(config.n_draws);
  parallel_for(
      static_cast<std::size_t>(chunks),
      [&](std::size_t k) {
        const auto ck = static_cast<std::int64_t>(k);
        const Matrix xhat = gaussian_chunk(root_hat, config.seed, "xhat", ck, config.n_draws);
        const Matrix s = gaussian_chunk(root_s, config.seed, "noise", ck, config.n_draws);
        const Matrix x = xhat + s;
        // Whitened columns: L^{-1} x and L_S^{-1} s.
        const Matrix wx = lx.matrixL().solve(x.transpose());
        const Matrix ws = ls.matrixL().solve(s.transpose());
        const Vector qx = wx.colwise().squaredNorm();
        const Vector qs = ws.colwise().squaredNorm();
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
          const std::int64_t idx = ck * kDrawsPerChunk + r;
          const double vt = qx(r) - qs(r);
          out.vtilde[idx] = vt;
          out.z[idx] = (0.5 * out.log_det_ratio + 0.5 * log2e * vt) / l;
        }
      },
      config.jobs);
  return out;
}

McReport check_info_density_stats(std::span<const double> z, const RdfResult& rdf, int l,
                                  std::uint64_t seed) {
  McReport r = base_report(sample_moments(z), static_cast<std::int64_t>(z.size()), seed);
  r.theoretical_target = rdf.rate;
  r.bound_value = 3.0 / l;
  if (r.bound_checked) {
    const bool mean_ok = std::abs(r.empirical_mean - rdf.rate) <= 4.0 * r.standard_error;
    r.bound_satisfied = mean_ok && r.empirical_variance < r.bound_value;
  }
  return r;
}

McReport check_vtilde_stats(std::span<const double> vtilde, int l, std::uint64_t seed) {
  McReport r =
      base_report(sample_moments(vtilde), static_cast<std::int64_t>(vtilde.size()), seed);
  r.theoretical_target = 0.0;
  r.bound_value = 4.0 * l;
  if (r.bound_checked) {
    const bool mean_ok = std::abs(r.empirical_mean) <= 4.0 * r.standard_error;
    r.bound_satisfied = mean_ok && r.empirical_variance < r.bound_value;
  }
  return r;
}

McReport chebyshev_concentration(std::span<const double> z, const RdfResult& rdf, int l,
                                 std::uint64_t seed) {
  const double threshold = std::pow(static_cast<double>(l), -1.0 / 3.0);
  std::vector<double> hits(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    hits[i] = std::abs(z[i] - rdf.rate) >= threshold ? 1.0 : 0.0;
  const auto n = static_cast<std::int64_t>(z.size());
  McReport r;
  r.n_draws = n;
  r.seed = seed;
  r.theoretical_target = rdf.rate;
  r.bound_value = 3.0 * threshold;
  r.bound_checked = n >= kMinDrawsForBounds;
  if (n == 0) return r;
  const double freq = pairwise_sum(hits) / static_cast<double>(n);
  r.empirical_mean = freq;
  r.empirical_variance = freq * (1.0 - freq);
  r.standard_error = std::sqrt(r.empirical_variance / static_cast<double>(n));
  if (r.bound_checked) r.bound_satisfied = freq + 3.0 * r.standard_error < r.bound_value;
  return r;
}

IntegrabilityReport uniform_integrability_stats(const CovarianceMatrix& source, double beta,
                                                const McConfig& config) {
  check_config(config);
  if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  if (source.max_diagonal() > beta)
    throw Error(ErrorKind::BetaViolation, "a diagonal entry of C_X exceeds beta");

  const int l = source.order();
  const Matrix root = checked_root(source.values(), source.max_diagonal());
  std::vector<double> w(config.n_draws);
  std::vector<double> w2(config.n_draws);
  parallel_for(
      static_cast<std::size_t>(chunk_count(config.n_draws)),
      [&](std::size_t k) {
        const auto ck = static_cast<std::int64_t>(k);
        const Matrix x = gaussian_chunk(root, config.seed, "integrability", ck, config.n_draws);
        const Vector sq = x.rowwise().squaredNorm();
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
          const double v = sq(r) / l;
          w[ck * kDrawsPerChunk + r] = v;
          w2[ck * kDrawsPerChunk + r] = v * v;
        }
      },
      config.jobs);

  IntegrabilityReport rep;
  rep.exact_first_moment = source.trace() / l;

  rep.first_moment = base_report(sample_moments(w), config.n_draws, config.seed);
  rep.first_moment.theoretical_target = rep.exact_first_moment;
  rep.first_moment.bound_value = beta;
  if (rep.first_moment.bound_checked) {
    const auto& f = rep.first_moment;
    rep.first_moment.bound_satisfied =
        std::abs(f.empirical_mean - rep.exact_first_moment) <= 4.0 * f.standard_error &&
        f.empirical_mean <= beta + 4.0 * f.standard_error;
  }

  rep.second_moment = base_report(sample_moments(w2), config.n_draws, config.seed);
  rep.second_moment.theoretical_target = 3.0 * beta * beta;
  rep.second_moment.bound_value = 3.0 * beta * beta;
  if (rep.second_moment.bound_checked) {
    const auto& s = rep.second_moment;
    rep.second_moment.bound_satisfied =
        s.empirical_mean <= s.bound_value + 4.0 * s.standard_error;
  }
  return rep;
}

}  // namespace cyclordf
