#include "jury/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "jury/checks.hpp"
#include "jury/errors.hpp"
#include "jury/version.hpp"

namespace jury::cli {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("config field '" + field + "': cannot parse number '" + text + "'");
  }
  return value;
}

long parse_long(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("config field '" + field + "': cannot parse integer '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("config field '" + field + "': cannot parse unsigned integer '" + text + "'");
  }
  return value;
}

// Shortest representation that parses back to the same double; keeps
// manifests both readable and bit-exact.
std::string fmt_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_g6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_g9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join_exact(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt_exact(values[i]);
  }
  return out;
}

std::string iso_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw IoError("failed writing '" + path + "'");
}

const std::set<std::string>& sweep_keys() {
  static const std::set<std::string> keys = {
      "expert_count", "judge_count",   "expert_mu_grid", "expert_sigma_set",
      "judge_grid",   "judge_mu_grid", "judge_sigma_set", "expert_lo",
      "expert_hi",    "judge_lo",      "judge_hi",        "policy",
      "mode",         "zero_weight_fallback", "trials",   "seed",
      "version",      "timestamp",     "command",         "out"};
  return keys;
}

}  // namespace

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line without '=': \"" + t + "\"");
    }
    kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return kv;
}

std::string policy_name(WeightPolicy policy) {
  switch (policy) {
    case WeightPolicy::Unrestricted: return "unrestricted";
    case WeightPolicy::NonNegative: return "nonneg";
    case WeightPolicy::Normalized: return "normalized";
  }
  return "unrestricted";
}

WeightPolicy parse_policy(const std::string& text) {
  if (text == "unrestricted") return WeightPolicy::Unrestricted;
  if (text == "nonneg") return WeightPolicy::NonNegative;
  if (text == "normalized") return WeightPolicy::Normalized;
  throw ConfigError("config field 'policy': expected unrestricted|nonneg|normalized, got '" +
                    text + "'");
}

std::string mode_name(EvaluationMode mode) {
  return mode == EvaluationMode::ExactPerPanel ? "exact" : "simulated";
}

EvaluationMode parse_mode(const std::string& text) {
  if (text == "exact") return EvaluationMode::ExactPerPanel;
  if (text == "simulated") return EvaluationMode::SimulatedVotes;
  throw ConfigError("config field 'mode': expected exact|simulated, got '" + text + "'");
}

std::string fallback_name(ZeroWeightFallback fallback) {
  return fallback == ZeroWeightFallback::EqualWeights ? "majority" : "coinflip";
}

ZeroWeightFallback parse_fallback(const std::string& text) {
  if (text == "majority") return ZeroWeightFallback::EqualWeights;
  if (text == "coinflip") return ZeroWeightFallback::CoinFlip;
  throw ConfigError("config field 'zero_weight_fallback': expected majority|coinflip, got '" +
                    text + "'");
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
  std::vector<double> values;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    values.push_back(parse_double(item, field));
  }
  if (values.empty()) throw ConfigError("config field '" + field + "' must not be empty");
  return values;
}

SweepConfig resolve_sweep_config(const std::optional<std::string>& config_path,
                                 const SweepOverrides& overrides,
                                 std::optional<std::uint64_t> env_seed) {
  SweepConfig config;
  if (env_seed) config.master_seed = *env_seed;

  if (config_path) {
    for (const auto& [key, value] : load_key_values(*config_path)) {
      if (!sweep_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
      if (key == "expert_count") config.expert_count = static_cast<int>(parse_long(value, key));
      else if (key == "judge_count") config.judge_count = static_cast<int>(parse_long(value, key));
      else if (key == "expert_mu_grid") config.expert_mu_grid = parse_double_list(value, key);
      else if (key == "expert_sigma_set") config.expert_sigma_set = parse_double_list(value, key);
      else if (key == "judge_grid") config.judge_grid = parse_double_list(value, key);
      else if (key == "judge_mu_grid") config.judge_mu_grid = parse_double_list(value, key);
      else if (key == "judge_sigma_set") config.judge_sigma_set = parse_double_list(value, key);
      else if (key == "expert_lo") config.expert_lo = parse_double(value, key);
      else if (key == "expert_hi") config.expert_hi = parse_double(value, key);
      else if (key == "judge_lo") config.judge_lo = parse_double(value, key);
      else if (key == "judge_hi") config.judge_hi = parse_double(value, key);
      else if (key == "policy") config.policy = parse_policy(value);
      else if (key == "mode") config.mode = parse_mode(value);
      else if (key == "zero_weight_fallback") config.fallback = parse_fallback(value);
      else if (key == "trials") config.trials = parse_long(value, key);
      else if (key == "seed") config.master_seed = parse_u64(value, key);
      else if (key == "command" && value != "sweep") {
        throw ConfigError("config field 'command': this file describes '" + value +
                          "', not a sweep");
      }
      // version/timestamp/out are informational
    }
  }

  if (overrides.judge_count) config.judge_count = *overrides.judge_count;
  if (overrides.seed) config.master_seed = *overrides.seed;
  if (overrides.trials) config.trials = *overrides.trials;
  if (overrides.policy) config.policy = *overrides.policy;
  if (overrides.mode) config.mode = *overrides.mode;
  if (overrides.fallback) config.fallback = *overrides.fallback;

  return resolve_defaults(config);
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "sigma_E,mu_E,judge_param1,judge_param2,policy,trials,seed,accuracy_mean,accuracy_stderr\n";
  for (const CellRecord& cell : result.cells) {
    os << fmt_g6(cell.sigma_e) << ',' << fmt_g6(cell.mu_e) << ',' << fmt_g6(cell.judge_param1)
       << ',';
    if (cell.judge_param2) os << fmt_g6(*cell.judge_param2);
    os << ',' << policy_name(cell.policy) << ',' << cell.trials << ',' << cell.seed << ','
       << fmt_g6(cell.accuracy_mean) << ',' << fmt_g6(cell.accuracy_stderr) << '\n';
  }
}

std::string sweep_manifest(const SweepConfig& config, const std::string& out_path) {
  std::ostringstream os;
  os << "version=" << kVersion << '\n';
  os << "timestamp=" << iso_utc_now() << '\n';
  os << "command=sweep\n";
  os << "expert_count=" << config.expert_count << '\n';
  os << "judge_count=" << config.judge_count << '\n';
  os << "expert_mu_grid=" << join_exact(config.expert_mu_grid) << '\n';
  os << "expert_sigma_set=" << join_exact(config.expert_sigma_set) << '\n';
  if (config.judge_count == 1) {
    os << "judge_grid=" << join_exact(config.judge_grid) << '\n';
  } else {
    os << "judge_mu_grid=" << join_exact(config.judge_mu_grid) << '\n';
    os << "judge_sigma_set=" << join_exact(config.judge_sigma_set) << '\n';
    os << "judge_lo=" << fmt_exact(config.judge_lo) << '\n';
    os << "judge_hi=" << fmt_exact(config.judge_hi) << '\n';
  }
  os << "expert_lo=" << fmt_exact(config.expert_lo) << '\n';
  os << "expert_hi=" << fmt_exact(config.expert_hi) << '\n';
  os << "policy=" << policy_name(config.policy) << '\n';
  os << "mode=" << mode_name(config.mode) << '\n';
  os << "zero_weight_fallback=" << fallback_name(config.fallback) << '\n';
  os << "trials=" << config.trials << '\n';
  os << "seed=" << config.master_seed << '\n';
  os << "out=" << out_path << '\n';
  return os.str();
}

CurveOptions resolve_curve_options(const std::optional<std::string>& config_path,
                                   const CurveOverrides& overrides) {
  CurveOptions options;
  if (config_path) {
    for (const auto& [key, value] : load_key_values(*config_path)) {
      if (key == "panel") options.panel = parse_double_list(value, key);
      else if (key == "resolution") options.resolution = static_cast<int>(parse_long(value, key));
      else if (key == "zero_weight_fallback") options.fallback = parse_fallback(value);
      else if (key == "out") options.out = value;
      else if (key == "command" && value != "curve") {
        throw ConfigError("config field 'command': this file describes '" + value +
                          "', not a curve");
      } else if (key != "version" && key != "timestamp" && key != "command") {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  }
  if (overrides.panel) options.panel = *overrides.panel;
  if (overrides.resolution) options.resolution = *overrides.resolution;
  if (overrides.fallback) options.fallback = *overrides.fallback;
  if (overrides.out) options.out = *overrides.out;

  if (options.panel.empty()) throw ConfigError("config field 'panel' must not be empty");
  for (double p : options.panel) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ConfigError("config field 'panel' entries must lie strictly inside (0,1), got " +
                        fmt_exact(p));
    }
  }
  if (options.resolution < 2) throw ConfigError("config field 'resolution' must be >= 2");
  return options;
}

int cmd_example1(bool weights_only, std::ostream& out) {
  const CompetencePanel panel{{0.6, 0.6, 0.6, 0.7, 0.9}};
  const WeightVector optimal = optimal_weights(panel);

  const std::vector<double> expected_rounded = {0.41, 0.41, 0.41, 0.85, 2.20};
  bool weights_ok = true;
  std::string rounded;
  for (int e = 0; e < optimal.size(); ++e) {
    const double r = std::round(optimal.weights[e] * 100.0) / 100.0;
    if (e) rounded += ',';
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", r);
    rounded += buf;
    if (std::abs(r - expected_rounded[e]) > 1e-9) weights_ok = false;
  }

  if (weights_only) {
    out << rounded << '\n';
    return weights_ok ? 0 : 1;
  }

  const double acc_optimal = exact_accuracy(panel, optimal);
  const WeightVector equal{std::vector<double>(panel.probs.size(), 1.0)};
  const double acc_equal = exact_accuracy(panel, equal);
  const WeightVector judged{judge_scores(0.6, panel)};
  const double acc_judged = exact_accuracy(panel, judged);
  const EquivalenceThreshold threshold = equivalence_threshold(panel);

  out << "five experts, competences (0.6, 0.6, 0.6, 0.7, 0.9)\n\n";
  out << "optimal log-odds weights   " << rounded << '\n';
  char line[96];
  std::snprintf(line, sizeof line, "accuracy, log-odds rule    %.9f\n", acc_optimal);
  out << line;
  std::snprintf(line, sizeof line, "accuracy, equal weights    %.9f\n", acc_equal);
  out << line;
  out << "judge p_j=0.6 scores       ";
  for (int e = 0; e < judged.size(); ++e) {
    std::snprintf(line, sizeof line, "%s%.3f", e ? "," : "", judged.weights[e]);
    out << line;
  }
  out << '\n';
  std::snprintf(line, sizeof line, "accuracy, judge p_j=0.6    %.9f\n", acc_judged);
  out << line;
  std::snprintf(line, sizeof line, "equivalence threshold      %.5f\n",
                threshold.kind == ThresholdKind::Threshold ? threshold.value : -1.0);
  out << line;

  struct ValueCheck {
    const char* name;
    bool ok;
  };
  const std::vector<ValueCheck> checks = {
      {"optimal weights round to (0.41,0.41,0.41,0.85,2.2)", weights_ok},
      {"log-odds accuracy = 0.9 (1e-9)", std::abs(acc_optimal - 0.9) <= 1e-9},
      {"equal-weight accuracy = 0.82 (0.005)", std::abs(acc_equal - 0.82) <= 0.005},
      {"judge-0.6 accuracy = 0.898 (0.0005)", std::abs(acc_judged - 0.898) <= 0.0005},
      {"equivalence threshold = 0.962 (0.001)",
       threshold.kind == ThresholdKind::Threshold && std::abs(threshold.value - 0.962) <= 0.001},
  };
  int failed = 0;
  for (const ValueCheck& check : checks) {
    if (!check.ok) {
      ++failed;
      out << "MISMATCH: " << check.name << '\n';
    }
  }
  out << "\nself-check: " << (failed == 0 ? "PASS" : "FAIL") << " ("
      << (checks.size() - failed) << '/' << checks.size() << " values within tolerance)\n";
  return failed == 0 ? 0 : 1;
}

int cmd_curve(const CurveOptions& options, std::ostream& log) {
  const CompetencePanel panel{options.panel};
  const auto curve = judge_curve(panel, options.resolution, options.fallback);

  std::ostringstream csv;
  csv << "p_j,accuracy\n";
  for (const CurvePoint& point : curve) {
    csv << fmt_g9(point.p_j) << ',' << fmt_g9(point.accuracy) << '\n';
  }
  write_text_file(options.out, csv.str());

  std::ostringstream manifest;
  manifest << "version=" << kVersion << '\n';
  manifest << "timestamp=" << iso_utc_now() << '\n';
  manifest << "command=curve\n";
  manifest << "panel=" << join_exact(options.panel) << '\n';
  manifest << "resolution=" << options.resolution << '\n';
  manifest << "zero_weight_fallback=" << fallback_name(options.fallback) << '\n';
  manifest << "out=" << options.out << '\n';
  write_text_file(options.out + ".manifest", manifest.str());

  log << "wrote " << curve.size() << " points to " << options.out << '\n';
  return 0;
}

int cmd_sweep(const SweepConfig& config, const std::string& out_path, int threads,
              std::ostream& log) {
  const SweepConfig resolved = resolve_defaults(config);
  const SweepResult result = resolved.judge_count == 1 ? single_judge_sweep(resolved, threads)
                                                       : multi_judge_sweep(resolved, threads);

  std::ostringstream csv;
  write_sweep_csv(csv, result);
  write_text_file(out_path, csv.str());
  write_text_file(out_path + ".manifest", sweep_manifest(resolved, out_path));

  log << "wrote " << result.cells.size() << " cells to " << out_path << '\n';
  return 0;
}

int cmd_check(const CheckOptions& options, std::ostream& out) {
  const std::set<std::string> known = {"all", "theorem1", "corollary1", "negation", "optimality"};
  if (!known.count(options.suite)) {
    throw ConfigError("unknown suite '" + options.suite +
                      "'; expected all|theorem1|corollary1|negation|optimality");
  }
  auto wants = [&](const char* name) {
    return options.suite == "all" || options.suite == name;
  };

  std::vector<SuiteReport> reports;
  if (wants("theorem1")) {
    reports.push_back(check_theorem1(options.cases, options.epsilon, options.seed));
  }
  if (wants("corollary1")) {
    reports.push_back(check_corollary1(options.cases, options.epsilon, options.seed + 1));
  }
  if (wants("negation")) {
    reports.push_back(check_negation_flip(options.cases, options.epsilon, options.seed + 2));
  }
  if (wants("optimality")) {
    reports.push_back(check_optimality(options.optimality_panels, options.optimality_challengers,
                                       options.optimality_epsilon, options.seed + 3));
  }

  int failed = 0;
  for (const SuiteReport& report : reports) {
    char line[160];
    std::snprintf(line, sizeof line, "[%s] %-10s %7ld cases   max error %.3g\n",
                  report.passed() ? "PASS" : "FAIL", report.name.c_str(), report.cases,
                  report.max_error);
    out << line;
    if (!report.passed()) {
      ++failed;
      out << "       " << report.detail << '\n';
    }
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace jury::cli
