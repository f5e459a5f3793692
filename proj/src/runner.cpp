#include "cyclordf/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cyclordf/codec_baseline.hpp"
#include "cyclordf/csv.hpp"
#include "cyclordf/errors.hpp"
#include "cyclordf/parallel.hpp"
#include "cyclordf/rdf_solver.hpp"
#include "cyclordf/spectrum_validator.hpp"
#include "cyclordf/stats.hpp"

namespace cyclordf {

namespace {

constexpr const char* kD = "D_mse_per_sample";
constexpr const char* kRate = "rate_bits_per_sample";

std::string cell_name(double phase, int l) {
  std::ostringstream os;
  os.precision(12);
  os << "phi_s=" << phase << ", l=" << l;
  return os.str();
}

SamplingSpec spec_at(const RunConfig& cfg, double phase, int l) {
  return SamplingSpec{cfg.p, cfg.epsilon, phase, l};
}

std::vector<double> cell_rates(const RunConfig& cfg, double phase, int l,
                               const std::vector<double>& distortions) {
  try {
    return rdf_rates(build_covariance(cfg.model, spec_at(cfg, phase, l)), distortions);
  } catch (const Error& e) {
    throw e.annotated(cell_name(phase, l));
  }
}

CovarianceMatrix single_block(const RunConfig& cfg) {
  try {
    return build_covariance(cfg.model, spec_at(cfg, cfg.phase, cfg.blocklength));
  } catch (const Error& e) {
    throw e.annotated(cell_name(cfg.phase, cfg.blocklength));
  }
}

std::vector<double> sorted_distortions(const RunConfig& cfg) {
  auto d = cfg.distortions;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

struct Writer {
  const RunConfig& cfg;
  TaskOutcome& out;

  void write(const std::string& suffix, const CsvSchema& schema, const std::vector<CsvRow>& rows) {
    const std::string path = cfg.prefix + "_" + suffix + ".csv";
    out.files.push_back({path, emit_csv(rows, schema, path)});
  }
};

void task_rdf_curve(const RunConfig& cfg, Writer& w) {
  const auto ds = sorted_distortions(cfg);
  const auto rates = cell_rates(cfg, cfg.phase, cfg.blocklength, ds);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < ds.size(); ++i) rows.push_back({ds[i], rates[i]});
  w.write("rdf_curve", {{kD, kRate}}, rows);
}

void task_phase_sweep(const RunConfig& cfg, int jobs, Writer& w) {
  const auto ds = sorted_distortions(cfg);
  const auto phases = phase_grid(cfg.model.profile.period, cfg.phase_grid);
  const std::size_t nb = cfg.blocks.size();
  const auto cells = parallel_map(
      phases.size() * nb,
      [&](std::size_t c) { return cell_rates(cfg, phases[c / nb], cfg.blocks[c % nb], ds); },
      jobs);

  std::vector<CsvRow> rows;
  for (std::size_t k = 0; k < phases.size(); ++k)
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t d = 0; d < ds.size(); ++d)
        rows.push_back({phases[k], static_cast<std::int64_t>(cfg.blocks[b]), ds[d],
                        cells[k * nb + b][d]});
  w.write("phase_sweep", {{"phi_s", "l", kD, kRate}}, rows);

  std::vector<CsvRow> summary;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    std::vector<double> estimates;
    bool all_stable = true;
    for (std::size_t k = 0; k < phases.size(); ++k) {
      std::vector<double> seq;
      for (std::size_t b = 0; b < nb; ++b) seq.push_back(cells[k * nb + b][d]);
      const auto est = summarize_tail(cfg.blocks, seq, cfg.tail_window, cfg.tolerance);
      estimates.push_back(est.estimate);
      all_stable = all_stable && est.stabilized;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < estimates.size(); ++k)
      if (estimates[k] > estimates[best]) best = k;
    const double maximum = estimates[best];
    const double spread = maximum - *std::min_element(estimates.begin(), estimates.end());
    const double average = pairwise_sum(estimates) / static_cast<double>(estimates.size());
    summary.push_back({ds[d], average, maximum, phases[best], spread, all_stable});
  }
  w.write("phase_summary",
          {{kD, "phase_average_rate_bits_per_sample", "phase_max_rate_bits_per_sample",
            "argmax_phi_s", "phase_spread_bits_per_sample", "all_stabilized"}},
          summary);
}

void task_block_sweep(const RunConfig& cfg, int jobs, Writer& w) {
  const auto ds = sorted_distortions(cfg);
  const auto cells = parallel_map(
      cfg.blocks.size(), [&](std::size_t b) { return cell_rates(cfg, cfg.phase, cfg.blocks[b], ds); },
      jobs);
  std::vector<CsvRow> rows;
  for (std::size_t b = 0; b < cfg.blocks.size(); ++b)
    for (std::size_t d = 0; d < ds.size(); ++d)
      rows.push_back({static_cast<std::int64_t>(cfg.blocks[b]), ds[d], cells[b][d]});
  w.write("block_sweep", {{"l", kD, kRate}}, rows);

  std::vector<CsvRow> summary;
  for (std::size_t d = 0; d < ds.size(); ++d) {
    std::vector<double> seq;
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) seq.push_back(cells[b][d]);
    const auto est = summarize_tail(cfg.blocks, seq, cfg.tail_window, cfg.tolerance);
    summary.push_back({ds[d], est.estimate, est.tail_variation, est.stabilized,
                       static_cast<std::int64_t>(est.tail_window), est.tolerance});
  }
  w.write("block_summary",
          {{kD, "limsup_estimate_bits_per_sample", "tail_variation_bits_per_sample",
            "stabilized", "tail_window", "tolerance"}},
          summary);
}

void add_report(std::vector<CsvRow>& rows, std::vector<std::string>& failures,
                const CsvValue& d, const std::string& name, const McReport& r) {
  rows.push_back({d, name, r.empirical_mean, r.empirical_variance, r.standard_error,
                  r.theoretical_target, r.bound_value, r.bound_checked, r.bound_satisfied});
  if (r.bound_checked && !r.bound_satisfied) failures.push_back(name);
}

void task_validate(const RunConfig& cfg, int jobs, Writer& w, TaskOutcome& out) {
  const auto ds = sorted_distortions(cfg);
  const CovarianceMatrix c = single_block(cfg);
  const McConfig mc{cfg.draws, cfg.seed, jobs};
  const int l = c.order();
  std::vector<CsvRow> rows;
  for (double d : ds) {
    const RdfResult rdf = rdf_fixed_block(c, d);
    const auto z = info_density_samples(c, rdf, mc);
    add_report(rows, out.failures, d, "info_density", check_info_density_stats(z.z, rdf, l, cfg.seed));
    add_report(rows, out.failures, d, "vtilde", check_vtilde_stats(z.vtilde, l, cfg.seed));
    add_report(rows, out.failures, d, "chebyshev", chebyshev_concentration(z.z, rdf, l, cfg.seed));
  }
  const auto ui = uniform_integrability_stats(c, cfg.model.profile.beta(), mc);
  add_report(rows, out.failures, std::string("-"), "integrability_first_moment", ui.first_moment);
  add_report(rows, out.failures, std::string("-"), "integrability_second_moment",
             ui.second_moment);
  w.write("validate",
          {{kD, "check", "empirical_mean", "empirical_variance", "standard_error", "target",
            "bound", "bound_checked", "bound_satisfied"}},
          rows);
}

void task_codec(const RunConfig& cfg, int jobs, Writer& w, TaskOutcome& out) {
  const auto ds = sorted_distortions(cfg);
  const CovarianceMatrix c = single_block(cfg);
  const McConfig mc{cfg.draws, cfg.seed, jobs};
  std::vector<CodecPoint> points;
  std::vector<RdfCurvePoint> curve;
  for (double d : ds) {
    points.push_back(transform_code(c, d, mc));
    const double de = points.back().empirical_distortion;
    curve.push_back({cfg.phase, c.order(), de, rdf_fixed_block(c, de).rate});
  }
  const auto rep = dominance_report(points, curve);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const auto& e = rep.entries[i];
    rows.push_back({p.target_distortion, p.empirical_distortion, p.distortion_stderr,
                    p.empirical_rate, p.rate_stderr, e.rdf_rate, e.margin, e.dominated});
    if (!e.dominated) {
      std::ostringstream os;
      os << "codec point D=" << p.target_distortion << " below R(D)";
      out.failures.push_back(os.str());
    }
  }
  w.write("codec",
          {{"D_target_mse_per_sample", "D_empirical_mse_per_sample", "D_stderr",
            "rate_empirical_bits_per_sample", "rate_stderr", "rdf_rate_bits_per_sample",
            "margin_bits_per_sample", "dominated"}},
          rows);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const RunConfig& cfg, int jobs, const TaskOutcome& out) {
  std::ostringstream m;
  m << "artifact=cyclordf\n";
  m << "version=" << kVersion << "\n";
  m << "timestamp=" << utc_timestamp() << "\n";
  m << "task=" << to_string(cfg.task) << "\n";
  m << "jobs=" << jobs << "\n";
  for (const auto& [k, v] : cfg.echo) m << "config." << k << "=" << v << "\n";
  m << "resolved.p=" << cfg.p << "\n";
  m << "resolved.epsilon=" << cfg.epsilon.describe() << "\n";
  m.precision(17);
  m << "resolved.ts=" << cfg.sampling_interval() << "\n";
  m.precision(6);
  m << "wall_clock_seconds." << to_string(cfg.task) << "=" << out.wall_seconds << "\n";
  for (const auto& wmsg : cfg.warnings) m << "warning=" << wmsg << "\n";
  for (const auto& f : out.failures) m << "bound_failure=" << f << "\n";
  for (const auto& f : out.files)
    m << "csv." << std::filesystem::path(f.path).filename().string() << ".sha256=" << f.sha256
      << "\n";
  const std::string path = cfg.prefix + ".manifest";
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  file << m.str();
  if (!file) throw Error(ErrorKind::Io, "failed writing " + path);
}

}  // namespace

TaskOutcome execute_task(const RunConfig& cfg, int jobs) {
  TaskOutcome out;
  const auto parent = std::filesystem::path(cfg.prefix).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw Error(ErrorKind::Io, "output.prefix: cannot create " + parent.string());
  }
  Writer w{cfg, out};
  const auto t0 = std::chrono::steady_clock::now();
  switch (cfg.task) {
    case TaskKind::RdfCurve: task_rdf_curve(cfg, w); break;
    case TaskKind::PhaseSweep: task_phase_sweep(cfg, jobs, w); break;
    case TaskKind::BlockSweep: task_block_sweep(cfg, jobs, w); break;
    case TaskKind::Validate: task_validate(cfg, jobs, w, out); break;
    case TaskKind::CodecBaseline: task_codec(cfg, jobs, w, out); break;
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

int run(const std::string& config_path, const RunOptions& opts, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = load_config(config_path, opts.overrides);
  } catch (const Error& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (opts.out_prefix) cfg.prefix = *opts.out_prefix;
  for (const auto& wmsg : cfg.warnings) log << "warning: " << wmsg << "\n";

  int jobs = opts.jobs;
  if (jobs <= 0 && !std::getenv("CYCLORDF_JOBS") && cfg.jobs > 0) jobs = cfg.jobs;
  jobs = resolve_jobs(jobs);

  TaskOutcome out;
  try {
    out = execute_task(cfg, jobs);
    write_manifest(cfg, jobs, out);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) {
      log << "output error (output.prefix): " << e.what() << "\n";
      return kExitConfig;
    }
    log << "numerical error";
    if (!e.context().empty()) log << " at " << e.context();
    log << ": " << e.what() << "\n";
    return kExitNumerical;
  }
  for (const auto& f : out.files) log << "wrote " << f.path << " sha256=" << f.sha256 << "\n";
  if (!out.failures.empty()) {
    for (const auto& f : out.failures) log << "bound check failed: " << f << "\n";
    return kExitBoundFailure;
  }
  return kExitOk;
}

}  // namespace cyclordf
