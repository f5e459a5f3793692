#pragma once

// Rate-distortion function of a sampled Gaussian block.
//
// For a block covariance C_X of order l and per-sample distortion D, the
// rate is
//
//   min  (1 / 2l) log2( det C_X / det C_S )
//   over symmetric C_S with 0 < C_S <= C_X and tr(C_S) / l <= D.
//
// The minimizer shares the eigenbasis of C_X and is obtained by reverse
// waterfilling on the eigenvalues. `rdf_oracle_small` solves the same
// program with a generic interior-point method and exists only to check that
// claim.

#include <functional>
#include <vector>

#include "cyclordf/sampling.hpp"

namespace cyclordf {

struct WaterfillResult {
  double water_level = 0.0;
  std::vector<double> allocation;  // mu_i = min(water_level, lambda_i)
};

/// `eigenvalues` must be positive; any order is accepted and the allocation
/// follows the input order. Throws NonPositiveEigenvalue / InvalidArgument.
WaterfillResult reverse_waterfill(const std::vector<double>& eigenvalues, double total_budget);

struct RdfResult {
  double rate = 0.0;  // bits per sample
  double water_level = 0.0;
  std::vector<double> eigenvalues;  // descending
  std::vector<double> mode_distortions;
  double achieved_distortion = 0.0;
  CovarianceMatrix noise_covariance;
  Matrix eigenvectors;  // columns match `eigenvalues`
};

RdfResult rdf_fixed_block(const CovarianceMatrix& source, double distortion);

struct RdfCurvePoint {
  double phase = 0.0;
  int blocklength = 0;
  double distortion = 0.0;
  double rate = 0.0;
};

/// Rates of one block at several distortions from a single eigendecomposition;
/// each entry equals rdf_fixed_block(source, D).rate exactly.
std::vector<double> rdf_rates(const CovarianceMatrix& source, const std::vector<double>& distortions);

/// R(D) of one block over a distortion grid, in grid order.
std::vector<RdfCurvePoint> rdf_curve(const CovarianceMatrix& source,
                                     const std::vector<double>& distortions, double phase = 0.0);

/// Independent check of rdf_fixed_block for order <= 8. Runs a log-barrier
/// Newton method on C_S = C_X^{1/2} Y C_X^{1/2} from `starts` random
/// strictly feasible points and returns the best rate in bits per sample.
double rdf_oracle_small(const CovarianceMatrix& source, double distortion, int starts = 10,
                        std::uint64_t seed = 1);

/// Smallest D with rdf_fixed_block(source, D).rate == target_rate, by
/// bisection. Throws RateOutOfRange above the rate at D = 1e-9 * lambda_max.
double distortion_rate_inverse(const CovarianceMatrix& source, double target_rate);

struct LimsupEstimate {
  std::vector<int> block_grid;
  std::vector<double> per_block_rates;
  double estimate = 0.0;
  int tail_window = 5;
  double tolerance = 1e-4;
  double tail_variation = 0.0;
  bool stabilized = false;
};

/// Finite surrogate for limsup over blocklengths: the max of the last
/// `tail_window` rates, flagged stabilized when their spread is <= tolerance.
LimsupEstimate summarize_tail(std::vector<int> block_grid, std::vector<double> rates,
                              int tail_window, double tolerance);

struct SamplingFamily {
  int p = 1;
  EpsilonSpec epsilon = EpsilonSpec::rational(0, 1);
  double phase = 0.0;
};

struct SweepOptions {
  int tail_window = 5;
  double tolerance = 1e-4;
  int jobs = 1;
};

LimsupEstimate rdf_block_sequence(const CtSourceModel& model, const SamplingFamily& family,
                                  double distortion, const std::vector<int>& block_grid,
                                  const SweepOptions& opts = {});

/// Phase grid k * Tc / n for k = 0..n-1.
std::vector<double> phase_grid(double period, int n);

struct PhaseSweep {
  std::vector<double> phases;
  std::vector<LimsupEstimate> per_phase;  // grid order
  double average = 0.0;
  double maximum = 0.0;
  double argmax_phase = 0.0;
  double spread = 0.0;  // max - min of the per-phase estimates
};

/// One sweep evaluates every (phase, blocklength) cell once and feeds both
/// the phase average and the phase maximum.
PhaseSweep rdf_phase_sweep(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                           double distortion, const std::vector<int>& block_grid,
                           int phase_grid_size, const SweepOptions& opts = {});

double rdf_phase_average(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                         double distortion, const std::vector<int>& block_grid,
                         int phase_grid_size, const SweepOptions& opts = {});

struct PhaseMax {
  double value = 0.0;
  double phase = 0.0;
};

PhaseMax rdf_phase_max(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                       double distortion, const std::vector<int>& block_grid,
                       int phase_grid_size, const SweepOptions& opts = {});

// Quadrature seams over an arbitrary per-phase function.
double phase_average(const std::function<double(double)>& per_phase, double period,
                     int phase_grid_size);
PhaseMax phase_max(const std::function<double(double)>& per_phase, double period,
                   int phase_grid_size);

}  // namespace cyclordf
