#include "cyclordf/rdf_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cyclordf/errors.hpp"
#include "cyclordf/parallel.hpp"
#include "cyclordf/stats.hpp"

namespace cyclordf {

WaterfillResult reverse_waterfill(const std::vector<double>& eigenvalues, double total_budget) {
  if (eigenvalues.empty())
    throw Error(ErrorKind::InvalidArgument, "waterfill: empty eigenvalue list");
  if (!(total_budget > 0.0))
    throw Error(ErrorKind::InvalidArgument, "waterfill: budget must be positive");
  for (double v : eigenvalues)
    if (!(v > 0.0))
      throw Error(ErrorKind::NonPositiveEigenvalue, "waterfill: eigenvalues must be positive");

  const std::size_t n = eigenvalues.size();
  WaterfillResult r;
  r.allocation.assign(n, 0.0);

  const double total = std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
  if (total_budget >= total) {
    r.allocation = eigenvalues;
    r.water_level = *std::max_element(eigenvalues.begin(), eigenvalues.end());
    return r;
  }

  // Walk the modes from the weakest up. A mode is left untouched (mu = lambda)
  // while it sits below the level the remaining budget could fill evenly.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigenvalues[a] < eigenvalues[b]; });

  double budget = total_budget;
  std::size_t remaining = n;
  std::size_t k = 0;
  for (; k < n; ++k) {
    const double v = eigenvalues[order[k]];
    if (v * static_cast<double>(remaining) > budget) break;
    r.allocation[order[k]] = v;
    budget -= v;
    --remaining;
  }
  r.water_level = budget / static_cast<double>(remaining);
  for (; k < n; ++k) r.allocation[order[k]] = r.water_level;
  return r;
}

namespace {

double rate_bits(const std::vector<double>& eigenvalues, const std::vector<double>& mu) {
  std::vector<double> terms(eigenvalues.size());
  for (std::size_t i = 0; i < terms.size(); ++i)
    terms[i] = eigenvalues[i] == mu[i] ? 0.0 : std::log2(eigenvalues[i] / mu[i]);
  const double r = pairwise_sum(terms) / (2.0 * static_cast<double>(terms.size()));
  return std::max(0.0, r);
}

SymmetricSpectrum checked_spectrum(const CovarianceMatrix& source) {
  if (source.order() < 1)
    throw Error(ErrorKind::InvalidArgument, "covariance: empty matrix");
  SymmetricSpectrum s = symmetric_eigen(source.values());
  const double top = s.values(0);
  const double bottom = s.values(s.values.size() - 1);
  if (!(top > 0.0) || !(bottom > 1e-12 * top)) {
    std::ostringstream os;
    os << "minimum eigenvalue " << bottom << " is not above 1e-12 * max eigenvalue " << top;
    throw Error(ErrorKind::SingularCovariance, os.str());
  }
  return s;
}

}  // namespace

namespace {

struct Allocation {
  std::vector<double> mu;
  double water_level = 0.0;
};

Allocation allocate(const std::vector<double>& lambda, double trace, double distortion) {
  if (!(distortion > 0.0))
    throw Error(ErrorKind::NonPositiveDistortion, "distortion must be positive");
  const auto l = static_cast<double>(lambda.size());
  if (distortion >= trace / l) return {lambda, lambda.front()};  // C_S = C_X, rate 0
  WaterfillResult w = reverse_waterfill(lambda, l * distortion);
  return {std::move(w.allocation), w.water_level};
}

}  // namespace

RdfResult rdf_fixed_block(const CovarianceMatrix& source, double distortion) {
  if (!(distortion > 0.0))
    throw Error(ErrorKind::NonPositiveDistortion, "distortion must be positive");
  const SymmetricSpectrum s = checked_spectrum(source);
  const int l = source.order();

  RdfResult r;
  r.eigenvalues.assign(s.values.data(), s.values.data() + l);
  Allocation a = allocate(r.eigenvalues, source.trace(), distortion);
  r.mode_distortions = std::move(a.mu);
  r.water_level = a.water_level;
  r.rate = rate_bits(r.eigenvalues, r.mode_distortions);
  r.achieved_distortion =
      std::accumulate(r.mode_distortions.begin(), r.mode_distortions.end(), 0.0) / l;

  const Eigen::Map<const Vector> mu(r.mode_distortions.data(), l);
  Matrix cs = s.vectors * mu.asDiagonal() * s.vectors.transpose();
  cs = 0.5 * (cs + cs.transpose()).eval();
  r.noise_covariance = CovarianceMatrix(std::move(cs), l);
  r.eigenvectors = s.vectors;
  return r;
}

std::vector<double> rdf_rates(const CovarianceMatrix& source,
                              const std::vector<double>& distortions) {
  for (double d : distortions)
    if (!(d > 0.0)) throw Error(ErrorKind::NonPositiveDistortion, "distortion must be positive");
  const SymmetricSpectrum s = checked_spectrum(source);
  const std::vector<double> lambda(s.values.data(), s.values.data() + source.order());
  std::vector<double> out;
  out.reserve(distortions.size());
  for (double d : distortions) out.push_back(rate_bits(lambda, allocate(lambda, source.trace(), d).mu));
  return out;
}

std::vector<RdfCurvePoint> rdf_curve(const CovarianceMatrix& source,
                                     const std::vector<double>& distortions, double phase) {
  std::vector<RdfCurvePoint> out;
  out.reserve(distortions.size());
  for (double d : distortions)
    out.push_back({phase, source.order(), d, rdf_fixed_block(source, d).rate});
  return out;
}

double distortion_rate_inverse(const CovarianceMatrix& source, double target_rate) {
  if (target_rate < 0.0)
    throw Error(ErrorKind::InvalidArgument, "target rate must be non-negative");
  const SymmetricSpectrum s = checked_spectrum(source);
  const int l = source.order();
  const double full = source.trace() / l;
  if (target_rate == 0.0) return full;

  const std::vector<double> lambda(s.values.data(), s.values.data() + l);
  auto rate_at = [&](double d) { return rate_bits(lambda, allocate(lambda, source.trace(), d).mu); };

  double lo = 1e-9 * lambda.front();
  double hi = full;
  if (rate_at(lo) < target_rate)
    throw Error(ErrorKind::RateOutOfRange,
                "target rate exceeds the rate at the minimum distortion 1e-9 * max eigenvalue");
  for (int it = 0; it < 300 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rate_at(mid) > target_rate)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

LimsupEstimate summarize_tail(std::vector<int> block_grid, std::vector<double> rates,
                              int tail_window, double tolerance) {
  if (rates.empty() || rates.size() != block_grid.size())
    throw Error(ErrorKind::InvalidArgument, "block sequence: empty or mismatched grid");
  if (tail_window < 1)
    throw Error(ErrorKind::InvalidArgument, "tail_window must be positive");
  LimsupEstimate e;
  e.block_grid = std::move(block_grid);
  e.per_block_rates = std::move(rates);
  e.tail_window = tail_window;
  e.tolerance = tolerance;
  const std::size_t w = std::min<std::size_t>(tail_window, e.per_block_rates.size());
  const auto first = e.per_block_rates.end() - static_cast<std::ptrdiff_t>(w);
  const auto [mn, mx] = std::minmax_element(first, e.per_block_rates.end());
  e.estimate = *mx;
  e.tail_variation = *mx - *mn;
  e.stabilized = e.tail_variation <= tolerance;
  return e;
}

namespace {

void check_block_grid(const std::vector<int>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "block grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw Error(ErrorKind::InvalidArgument, "block grid: l must be positive");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw Error(ErrorKind::InvalidArgument, "block grid must be strictly increasing");
  }
}

std::string cell_name(double phase, int l) {
  std::ostringstream os;
  os.precision(12);
  os << "phi_s=" << phase << ", l=" << l;
  return os.str();
}

double cell_rate(const CtSourceModel& model, const SamplingFamily& family, int l,
                 double distortion) {
  try {
    SamplingSpec spec{family.p, family.epsilon, family.phase, l};
    return rdf_fixed_block(build_covariance(model, spec), distortion).rate;
  } catch (const Error& e) {
    throw e.annotated(cell_name(family.phase, l));
  }
}

}  // namespace

LimsupEstimate rdf_block_sequence(const CtSourceModel& model, const SamplingFamily& family,
                                  double distortion, const std::vector<int>& block_grid,
                                  const SweepOptions& opts) {
  validate_model(model);
  check_block_grid(block_grid);
  auto rates = parallel_map(
      block_grid.size(),
      [&](std::size_t k) { return cell_rate(model, family, block_grid[k], distortion); },
      opts.jobs);
  return summarize_tail(block_grid, std::move(rates), opts.tail_window, opts.tolerance);
}

std::vector<double> phase_grid(double period, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "phase grid size must be positive");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = k * period / n;
  return g;
}

PhaseSweep rdf_phase_sweep(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                           double distortion, const std::vector<int>& block_grid,
                           int phase_grid_size, const SweepOptions& opts) {
  if (phase_grid_size < 2)
    throw Error(ErrorKind::InvalidArgument, "phase grid size must be at least 2");
  validate_model(model);
  check_block_grid(block_grid);

  PhaseSweep sw;
  sw.phases = phase_grid(model.profile.period, phase_grid_size);
  const std::size_t nb = block_grid.size();
  const auto rates = parallel_map(
      sw.phases.size() * nb,
      [&](std::size_t cell) {
        const SamplingFamily fam{p, epsilon, sw.phases[cell / nb]};
        return cell_rate(model, fam, block_grid[cell % nb], distortion);
      },
      opts.jobs);

  std::vector<double> estimates;
  for (std::size_t k = 0; k < sw.phases.size(); ++k) {
    std::vector<double> row(rates.begin() + k * nb, rates.begin() + (k + 1) * nb);
    sw.per_phase.push_back(summarize_tail(block_grid, std::move(row), opts.tail_window,
                                          opts.tolerance));
    estimates.push_back(sw.per_phase.back().estimate);
  }
  sw.average = pairwise_sum(estimates) / static_cast<double>(estimates.size());
  std::size_t best = 0;
  for (std::size_t k = 1; k < estimates.size(); ++k)
    if (estimates[k] > estimates[best]) best = k;
  sw.maximum = estimates[best];
  sw.argmax_phase = sw.phases[best];
  sw.spread = sw.maximum - *std::min_element(estimates.begin(), estimates.end());
  return sw;
}

double rdf_phase_average(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                         double distortion, const std::vector<int>& block_grid,
                         int phase_grid_size, const SweepOptions& opts) {
  return rdf_phase_sweep(model, p, epsilon, distortion, block_grid, phase_grid_size, opts)
      .average;
}

PhaseMax rdf_phase_max(const CtSourceModel& model, int p, const EpsilonSpec& epsilon,
                       double distortion, const std::vector<int>& block_grid,
                       int phase_grid_size, const SweepOptions& opts) {
  const auto sw =
      rdf_phase_sweep(model, p, epsilon, distortion, block_grid, phase_grid_size, opts);
  return {sw.maximum, sw.argmax_phase};
}

double phase_average(const std::function<double(double)>& per_phase, double period,
                     int phase_grid_size) {
  if (phase_grid_size < 2)
    throw Error(ErrorKind::InvalidArgument, "phase grid size must be at least 2");
  std::vector<double> vals;
  for (double phi : phase_grid(period, phase_grid_size)) vals.push_back(per_phase(phi));
  return pairwise_sum(vals) / static_cast<double>(vals.size());
}

PhaseMax phase_max(const std::function<double(double)>& per_phase, double period,
                   int phase_grid_size) {
  if (phase_grid_size < 2)
    throw Error(ErrorKind::InvalidArgument, "phase grid size must be at least 2");
  PhaseMax best{-std::numeric_limits<double>::infinity(), 0.0};
  for (double phi : phase_grid(period, phase_grid_size)) {
    const double v = per_phase(phi);
    if (v > best.value) best = {v, phi};
  }
  return best;
}

}  // namespace cyclordf
