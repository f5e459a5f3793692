#include "cyclordf/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cyclordf/errors.hpp"

namespace cyclordf {

namespace pt = boost::property_tree;

std::string to_string(TaskKind t) {
  switch (t) {
    case TaskKind::RdfCurve: return "rdf-curve";
    case TaskKind::PhaseSweep: return "phase-sweep";
    case TaskKind::BlockSweep: return "block-sweep";
    case TaskKind::Validate: return "validate";
    case TaskKind::CodecBaseline: return "codec-baseline";
  }
  return "unknown";
}

namespace {

struct KeySpec {
  const char* key;
  const char* fallback;  // nullptr: required
};

// Schema order is also manifest echo order.
constexpr KeySpec kSchema[] = {
    {"model.period", "1"},         {"model.offset", nullptr},
    {"model.harmonics", ""},       {"model.kernel", "tent"},
    {"model.max_lag", nullptr},    {"sampling.p", ""},
    {"sampling.epsilon", ""},      {"sampling.target_ts", ""},
    {"sampling.phase", "0"},       {"sampling.phase_grid", "16"},
    {"sampling.blocks", ""},       {"sampling.blocklength", "32"},
    {"task.name", nullptr},        {"task.distortions", nullptr},
    {"task.tail_window", "5"},     {"task.tolerance", "1e-4"},
    {"mc.draws", "100000"},        {"mc.seed", "1"},
    {"run.jobs", ""},              {"output.prefix", "cyclordf_out"},
};

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::Config, key + ": " + msg);
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    fail(key, "expected a decimal number, got '" + s + "'");
  return v;
}

template <class Int>
Int to_int(const std::string& key, const std::string& s) {
  Int v = 0;
  const auto t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    fail(key, "expected an integer, got '" + s + "'");
  return v;
}

std::vector<Harmonic> parse_harmonics(const std::string& key, const std::string& s) {
  std::vector<Harmonic> out;
  if (trim(s).empty()) return out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) fail(key, "each harmonic is order:amplitude:phase, got '" + item + "'");
    out.push_back({to_int<int>(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])});
  }
  return out;
}

EpsilonSpec parse_epsilon(const std::string& key, const std::string& s) {
  const auto t = trim(s);
  const auto colon = t.find(':');
  if (colon == std::string::npos)
    fail(key, "expected rational:u/v or irrational:value[:label], got '" + s + "'");
  const auto tag = t.substr(0, colon);
  const auto rest = t.substr(colon + 1);
  try {
    if (tag == "rational") {
      const auto slash = rest.find('/');
      if (slash == std::string::npos) fail(key, "rational epsilon must be written u/v");
      return EpsilonSpec::rational(to_int<std::int64_t>(key, rest.substr(0, slash)),
                                   to_int<std::int64_t>(key, rest.substr(slash + 1)));
    }
    if (tag == "irrational") {
      const auto c2 = rest.find(':');
      const std::string label = c2 == std::string::npos ? "" : trim(rest.substr(c2 + 1));
      return EpsilonSpec::irrational(to_double(key, rest.substr(0, c2)), label);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(key, e.what());
  }
  fail(key, "unknown epsilon tag '" + tag + "' (use rational or irrational)");
}

std::vector<int> parse_blocks(const std::string& key, const std::string& s) {
  std::vector<int> out;
  const auto t = trim(s);
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) fail(key, "range form is start:stop:step");
    const int a = to_int<int>(key, parts[0]);
    const int b = to_int<int>(key, parts[1]);
    const int step = to_int<int>(key, parts[2]);
    if (step < 1 || a < 1 || b < a) fail(key, "range needs 1 <= start <= stop and step >= 1");
    for (int l = a; l <= b; l += step) out.push_back(l);
  } else {
    for (const auto& item : split(t, ',')) out.push_back(to_int<int>(key, item));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) fail(key, "blocklengths must be positive");
    if (i && out[i] <= out[i - 1]) fail(key, "blocklengths must be strictly increasing");
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(key, item));
  if (out.empty()) fail(key, "at least one value is required");
  return out;
}

TaskKind parse_task(const std::string& key, const std::string& s) {
  for (auto t : {TaskKind::RdfCurve, TaskKind::PhaseSweep, TaskKind::BlockSweep,
                 TaskKind::Validate, TaskKind::CodecBaseline})
    if (to_string(t) == trim(s)) return t;
  fail(key, "unknown task '" + s +
                "' (rdf-curve, phase-sweep, block-sweep, validate, codec-baseline)");
}

RunConfig from_tree(const pt::ptree& tree) {
  std::set<std::string> known;
  for (const auto& k : kSchema) known.insert(k.key);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      fail(section, "key outside of any [section]");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known.count(full)) fail(full, "unknown key");
    }
  }

  std::map<std::string, std::string> v;
  RunConfig cfg;
  for (const auto& k : kSchema) {
    auto got = tree.get_optional<std::string>(pt::ptree::path_type(k.key, '.'));
    if (got) {
      v[k.key] = trim(*got);
    } else if (k.fallback) {
      v[k.key] = k.fallback;
    } else {
      fail(k.key, "required key is missing");
    }
    cfg.echo.emplace_back(k.key, v[k.key]);
  }

  auto& prof = cfg.model.profile;
  prof.period = to_double("model.period", v["model.period"]);
  prof.offset = to_double("model.offset", v["model.offset"]);
  prof.harmonics = parse_harmonics("model.harmonics", v["model.harmonics"]);
  const auto kernel = v["model.kernel"];
  if (kernel == "tent")
    cfg.model.kernel.kind = KernelKind::Tent;
  else if (kernel == "parzen")
    cfg.model.kernel.kind = KernelKind::Parzen;
  else
    fail("model.kernel", "unknown kernel '" + kernel + "' (tent or parzen)");
  cfg.model.kernel.max_lag = to_double("model.max_lag", v["model.max_lag"]);
  try {
    validate_model(cfg.model);
  } catch (const Error& e) {
    fail("model", e.what());
  }

  const bool has_ts = !v["sampling.target_ts"].empty();
  const bool has_p = !v["sampling.p"].empty();
  const bool has_eps = !v["sampling.epsilon"].empty();
  if (has_ts && (has_p || has_eps))
    fail("sampling.target_ts", "give either target_ts or (p, epsilon), not both");
  if (has_ts) {
    const double ts = to_double("sampling.target_ts", v["sampling.target_ts"]);
    try {
      auto [p, eps] = decompose_interval(prof.period, ts);
      cfg.p = p;
      cfg.epsilon = eps;
    } catch (const Error& e) {
      fail("sampling.target_ts", e.what());
    }
    cfg.target_ts = ts;
  } else {
    if (!has_p) fail("sampling.p", "required key is missing (or set sampling.target_ts)");
    if (!has_eps) fail("sampling.epsilon", "required key is missing (or set sampling.target_ts)");
    cfg.p = to_int<int>("sampling.p", v["sampling.p"]);
    if (cfg.p < 1) fail("sampling.p", "must be a positive integer");
    cfg.epsilon = parse_epsilon("sampling.epsilon", v["sampling.epsilon"]);
  }

  cfg.phase = to_double("sampling.phase", v["sampling.phase"]);
  if (!(cfg.phase >= 0.0 && cfg.phase < prof.period))
    fail("sampling.phase", "must lie in [0, model.period)");
  cfg.phase_grid = to_int<int>("sampling.phase_grid", v["sampling.phase_grid"]);
  if (cfg.phase_grid < 2) fail("sampling.phase_grid", "must be at least 2");
  cfg.blocks = parse_blocks("sampling.blocks", v["sampling.blocks"]);
  cfg.blocklength = to_int<int>("sampling.blocklength", v["sampling.blocklength"]);
  if (cfg.blocklength < 1) fail("sampling.blocklength", "must be positive");

  cfg.task = parse_task("task.name", v["task.name"]);
  cfg.distortions = parse_list("task.distortions", v["task.distortions"]);
  for (double d : cfg.distortions)
    if (!(d > 0.0)) fail("task.distortions", "distortions must be positive");
  cfg.tail_window = to_int<int>("task.tail_window", v["task.tail_window"]);
  if (cfg.tail_window < 1) fail("task.tail_window", "must be positive");
  cfg.tolerance = to_double("task.tolerance", v["task.tolerance"]);
  if (!(cfg.tolerance > 0.0)) fail("task.tolerance", "must be positive");
  if ((cfg.task == TaskKind::PhaseSweep || cfg.task == TaskKind::BlockSweep) && cfg.blocks.empty())
    fail("sampling.blocks", "required for " + to_string(cfg.task));

  cfg.draws = to_int<std::int64_t>("mc.draws", v["mc.draws"]);
  if (cfg.draws < 1) fail("mc.draws", "must be positive");
  cfg.seed = to_int<std::uint64_t>("mc.seed", v["mc.seed"]);

  if (!v["run.jobs"].empty()) {
    cfg.jobs = to_int<int>("run.jobs", v["run.jobs"]);
    if (cfg.jobs < 1) fail("run.jobs", "must be positive");
  }
  cfg.prefix = v["output.prefix"];
  if (cfg.prefix.empty()) fail("output.prefix", "must not be empty");

  const double ts = cfg.sampling_interval();
  if (ts > cfg.model.kernel.max_lag) {
    std::ostringstream os;
    os.precision(12);
    os << "sampling interval Ts=" << ts << " exceeds model.max_lag=" << cfg.model.kernel.max_lag
       << "; the memory condition Ts <= lambda_c does not hold";
    cfg.warnings.push_back(os.str());
  }
  if ((cfg.task == TaskKind::Validate || cfg.task == TaskKind::CodecBaseline) && cfg.draws < 1000)
    cfg.warnings.push_back("mc.draws < 1000: bound checks are skipped, raw statistics only");
  return cfg;
}

void apply_overrides(pt::ptree& tree, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) fail(o, "override must be section.key=value");
    const auto key = trim(o.substr(0, eq));
    if (key.find('.') == std::string::npos) fail(key, "override key must be section.key");
    tree.put(pt::ptree::path_type(key, '.'), trim(o.substr(eq + 1)));
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, std::string("config: ") + e.what());
  }
  apply_overrides(tree, overrides);
  return from_tree(tree);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Config, "config: cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace cyclordf
