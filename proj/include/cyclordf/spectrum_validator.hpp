#pragma once

// Monte Carlo checks of the information-spectrum quantities behind the
// achievability argument for a fixed sampling phase.
//
// With X = Xhat + S, Xhat ~ N(0, C_X - C_S) independent of S ~ N(0, C_S),
// the information density rate is
//
//   Z_l = (1/l) [ 1/2 log2(det C_X / det C_S) + 1/2 log2(e) * Vt ],
//   Vt  = X^T C_X^{-1} X - S^T C_S^{-1} S,
//
// with E{Vt} = 0, var{Z_l} < 3 / l and, by Chebyshev,
// Pr{|Z_l - rate| >= l^{-1/3}} < 3 l^{-1/3}.
//
// For the uniform-integrability check, W_l = X^T X / l has
// E{W_l} = tr(C_X) / l <= beta and E{W_l^2} <= 3 beta^2.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cyclordf/rdf_solver.hpp"
#include "cyclordf/sampling.hpp"

namespace cyclordf {

struct McConfig {
  std::int64_t n_draws = 100000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Reports below this many draws carry raw statistics only.
inline constexpr std::int64_t kMinDrawsForBounds = 1000;

struct McReport {
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double standard_error = 0.0;
  double theoretical_target = 0.0;
  double bound_value = 0.0;
  bool bound_checked = false;
  bool bound_satisfied = false;
  std::int64_t n_draws = 0;
  std::uint64_t seed = 0;

  bool operator==(const McReport&) const = default;
};

/// Draws per RNG stream. Fixed so that chunking, not thread count, decides
/// which numbers each draw sees.
inline constexpr std::int64_t kDrawsPerChunk = 512;

/// Row-major n_draws x l matrix of N(0, C) draws via the symmetric square
/// root. `tag` names the stream; different tags give independent draws.
Matrix sample_gaussian(const CovarianceMatrix& c, const McConfig& config,
                       std::string_view tag = "gaussian");

struct InfoDensitySamples {
  std::vector<double> z;        // Z_l in bits per sample
  std::vector<double> vtilde;   // the quadratic-form difference Vt
  double log_det_ratio = 0.0;   // log2(det C_X / det C_S), via Cholesky
  int blocklength = 0;
};

InfoDensitySamples info_density_samples(const CovarianceMatrix& source, const RdfResult& rdf,
                                        const McConfig& config);

/// Mean of Z_l vs the rate (4 standard errors) and variance vs 3 / l.
McReport check_info_density_stats(std::span<const double> z, const RdfResult& rdf, int l,
                                  std::uint64_t seed = 0);

/// Mean of Vt vs 0 (4 standard errors) and variance vs 4 l.
McReport check_vtilde_stats(std::span<const double> vtilde, int l, std::uint64_t seed = 0);

/// Empirical Pr{|Z_l - rate| >= l^{-1/3}}; the mean field holds the
/// frequency and standard_error its binomial standard error.
McReport chebyshev_concentration(std::span<const double> z, const RdfResult& rdf, int l,
                                 std::uint64_t seed = 0);

struct IntegrabilityReport {
  double exact_first_moment = 0.0;  // tr(C_X) / l
  McReport first_moment;            // W_l against tr(C_X) / l and beta
  McReport second_moment;           // W_l^2 against 3 beta^2
};

/// Throws BetaViolation if a diagonal entry of C_X exceeds beta.
IntegrabilityReport uniform_integrability_stats(const CovarianceMatrix& source, double beta,
                                                const McConfig& config);

}  // namespace cyclordf
