#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "errors.hpp"

namespace penmhd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const char* last = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), last, out);
  if (ec != std::errc{} || p != last || !std::isfinite(out))
    throw config_error("key '" + key + "': expected a finite number, got '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  int out = 0;
  const char* last = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), last, out);
  if (ec != std::errc{} || p != last)
    throw config_error("key '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw config_error("key '" + key + "': empty entry in comma-separated list");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw config_error("key '" + key + "': expected a comma-separated list");
  return out;
}

InitMode parse_init_mode(const std::string& value) {
  const std::string v = trim(value);
  if (v == "annulus") return InitMode::Annulus;
  if (v == "zero") return InitMode::Zero;
  if (v == "uniform_h") return InitMode::UniformH;
  throw config_error("key 'init_mode': expected annulus, zero, or uniform_h, got '" + value +
                     "'");
}

std::string init_mode_name(InitMode m) {
  switch (m) {
    case InitMode::Annulus: return "annulus";
    case InitMode::Zero: return "zero";
    case InitMode::UniformH: return "uniform_h";
  }
  return "?";
}

struct KeySpec {
  const char* block;
  const char* key;
  std::function<void(Config&, const std::string&)> set;
};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"geometry", "dim", [](Config& c, const std::string& v) { c.dim = parse_int("dim", v); }},
      {"geometry", "L", [](Config& c, const std::string& v) { c.L = parse_double("L", v); }},
      {"geometry", "cells",
       [](Config& c, const std::string& v) { c.cells = parse_int("cells", v); }},
      {"geometry", "R_outer",
       [](Config& c, const std::string& v) { c.R_outer = parse_double("R_outer", v); }},
      {"geometry", "R_inner",
       [](Config& c, const std::string& v) { c.R_inner = parse_double("R_inner", v); }},
      {"geometry", "transition_cells",
       [](Config& c, const std::string& v) {
         c.transition_cells = parse_double("transition_cells", v);
       }},
      {"eos", "gamma",
       [](Config& c, const std::string& v) { c.gamma = parse_double("gamma", v); }},
      {"eos", "a", [](Config& c, const std::string& v) { c.a = parse_double("a", v); }},
      {"scenario", "scenario",
       [](Config& c, const std::string& v) { c.scenario = parse_scenario(trim(v)); }},
      {"scenario", "epsilon",
       [](Config& c, const std::string& v) { c.epsilon = parse_double("epsilon", v); }},
      {"scenario", "epsilon_list",
       [](Config& c, const std::string& v) { c.epsilon_list = parse_list("epsilon_list", v); }},
      {"scenario", "nu_F",
       [](Config& c, const std::string& v) { c.fc.nu_F = parse_double("nu_F", v); }},
      {"scenario", "lambda_F",
       [](Config& c, const std::string& v) { c.fc.lambda_F = parse_double("lambda_F", v); }},
      {"scenario", "mu_F",
       [](Config& c, const std::string& v) { c.fc.mu_F = parse_double("mu_F", v); }},
      {"scenario", "mu_int",
       [](Config& c, const std::string& v) { c.fc.mu_int = parse_double("mu_int", v); }},
      {"scenario", "eta_F",
       [](Config& c, const std::string& v) { c.fc.eta_F = parse_double("eta_F", v); }},
      {"scenario", "eta_int",
       [](Config& c, const std::string& v) { c.fc.eta_int = parse_double("eta_int", v); }},
      {"run", "T", [](Config& c, const std::string& v) { c.T = parse_double("T", v); }},
      {"run", "cfl", [](Config& c, const std::string& v) { c.cfl = parse_double("cfl", v); }},
      {"run", "output_every",
       [](Config& c, const std::string& v) { c.output_every = parse_int("output_every", v); }},
      {"run", "snapshot_times",
       [](Config& c, const std::string& v) {
         c.snapshot_times = parse_list("snapshot_times", v);
       }},
      {"run", "limit_intervals",
       [](Config& c, const std::string& v) {
         c.limit_intervals = parse_int("limit_intervals", v);
       }},
      {"run", "threads",
       [](Config& c, const std::string& v) { c.threads = parse_int("threads", v); }},
      {"solver", "cg_tol",
       [](Config& c, const std::string& v) { c.sp.cg_tol = parse_double("cg_tol", v); }},
      {"solver", "cg_maxit",
       [](Config& c, const std::string& v) { c.sp.cg_maxit = parse_int("cg_maxit", v); }},
      {"solver", "proj_tol",
       [](Config& c, const std::string& v) { c.sp.proj_tol = parse_double("proj_tol", v); }},
      {"solver", "proj_maxit",
       [](Config& c, const std::string& v) { c.sp.proj_maxit = parse_int("proj_maxit", v); }},
      {"solver", "dt_min",
       [](Config& c, const std::string& v) { c.sp.dt_min = parse_double("dt_min", v); }},
      {"solver", "dt_max",
       [](Config& c, const std::string& v) { c.sp.dt_max = parse_double("dt_max", v); }},
      {"init", "init_mode",
       [](Config& c, const std::string& v) { c.init.mode = parse_init_mode(v); }},
      {"init", "rho0",
       [](Config& c, const std::string& v) { c.init.rho0 = parse_double("rho0", v); }},
      {"init", "velocity_amplitude",
       [](Config& c, const std::string& v) {
         c.init.velocity_amplitude = parse_double("velocity_amplitude", v);
       }},
      {"init", "field_amplitude",
       [](Config& c, const std::string& v) {
         c.init.field_amplitude = parse_double("field_amplitude", v);
       }},
  };
  return table;
}

bool known_block(const std::string& name) {
  for (const char* b : {"geometry", "eos", "scenario", "run", "solver", "init"})
    if (name == b) return true;
  return false;
}

// Applies one key=value; `block` is empty outside any section (and for
// overrides), in which case any key is admissible.
void apply_key(Config& cfg, const std::string& block, const std::string& key,
               const std::string& value, bool& scenario_seen) {
  for (const auto& spec : key_table()) {
    if (key != spec.key) continue;
    if (!block.empty() && block != spec.block)
      throw config_error("key '" + key + "' belongs to config block [" +
                         std::string(spec.block) + "], found under [" + block + "]");
    spec.set(cfg, value);
    if (key == "scenario") scenario_seen = true;
    return;
  }
  throw config_error("unknown config key '" + key + "'");
}

void check(bool ok, const std::string& message) {
  if (!ok) throw config_error(message);
}

void validate(Config& cfg, bool scenario_seen) {
  check(scenario_seen, "missing required key 'scenario'");
  check(cfg.dim == 2 || cfg.dim == 3, "dim must be 2 or 3");
  check(cfg.L > 0, "L must be positive");
  check(cfg.cells >= 4, "cells must be at least 4");
  check(cfg.R_inner > 0 && cfg.R_inner < cfg.R_outer,
        "R_inner must be positive and smaller than R_outer");
  check(cfg.R_outer < cfg.L, "R_outer must be smaller than the domain half-width L");
  check(cfg.transition_cells > 0, "transition_cells must be positive");

  if (cfg.gamma == 0.0) cfg.gamma = cfg.dim == 3 ? 5.0 / 3.0 : 1.4;
  check(cfg.gamma > 0.5 * cfg.dim,
        "gamma = " + format_double(cfg.gamma) + " violates gamma > dim/2 (= " +
            format_double(0.5 * cfg.dim) + ")");
  check(cfg.a > 0, "a must be positive");

  check(cfg.epsilon > 0, "epsilon must be positive");
  for (double e : cfg.epsilon_list)
    check(e > 0 && std::isfinite(e), "epsilon_list entries must be positive");
  check(cfg.fc.nu_F > 0, "nu_F must be positive");
  check(cfg.fc.lambda_F >= 0, "lambda_F must be nonnegative");
  check(cfg.fc.mu_F > 0, "mu_F must be positive");
  check(cfg.fc.mu_int > 0, "mu_int must be positive");
  check(cfg.fc.eta_F > 0, "eta_F must be positive");
  check(cfg.fc.eta_int > 0, "eta_int must be positive");

  check(cfg.T > 0, "T must be positive");
  check(cfg.cfl > 0 && cfg.cfl < 1, "cfl must lie strictly between 0 and 1");
  check(cfg.output_every >= 1, "output_every must be at least 1");
  std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
  for (double t : cfg.snapshot_times)
    check(t >= 0 && t <= cfg.T, "snapshot_times entries must lie in [0, T]");
  check(cfg.limit_intervals >= 0, "limit_intervals must be nonnegative");
  check(cfg.threads >= 0, "threads must be nonnegative (0 = auto)");

  check(cfg.sp.cg_tol > 0, "cg_tol must be positive");
  check(cfg.sp.cg_maxit >= 1, "cg_maxit must be at least 1");
  check(cfg.sp.proj_tol > 0, "proj_tol must be positive");
  check(cfg.sp.proj_maxit >= 1, "proj_maxit must be at least 1");
  check(cfg.sp.dt_min > 0, "dt_min must be positive");
  check(cfg.sp.dt_max >= cfg.sp.dt_min, "dt_max must be >= dt_min");

  check(cfg.init.rho0 > 0, "rho0 must be positive");
  check(cfg.init.velocity_amplitude >= 0, "velocity_amplitude must be nonnegative");
  check(cfg.init.field_amplitude >= 0, "field_amplitude must be nonnegative");

  cfg.sp.cfl = cfg.cfl;
}

} // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

Config parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  Config cfg;
  bool scenario_seen = false;
  std::string block;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto cut = raw.find_first_of("#;");
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) + ": malformed block header '" +
                           line + "'");
      block = trim(line.substr(1, line.size() - 2));
      if (!known_block(block))
        throw config_error("unknown config block '" + block + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected key = value, got '" +
                         line + "'");
    apply_key(cfg, block, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), scenario_seen);
  }
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw config_error("malformed override '" + ov + "': expected key=value");
    apply_key(cfg, "", trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)), scenario_seen);
  }
  validate(cfg, scenario_seen);
  return cfg;
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

std::vector<std::pair<std::string, std::string>> effective_entries(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const char* k, const std::string& v) { out.emplace_back(k, v); };
  auto list = [&](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_double(v[i]);
    }
    return s;
  };
  add("dim", std::to_string(cfg.dim));
  add("L", format_double(cfg.L));
  add("cells", std::to_string(cfg.cells));
  add("R_outer", format_double(cfg.R_outer));
  add("R_inner", format_double(cfg.R_inner));
  add("transition_cells", format_double(cfg.transition_cells));
  add("gamma", format_double(cfg.gamma));
  add("a", format_double(cfg.a));
  add("scenario", scenario_name(cfg.scenario));
  add("epsilon", format_double(cfg.epsilon));
  add("epsilon_list", list(cfg.epsilon_list));
  add("nu_F", format_double(cfg.fc.nu_F));
  add("lambda_F", format_double(cfg.fc.lambda_F));
  add("mu_F", format_double(cfg.fc.mu_F));
  add("mu_int", format_double(cfg.fc.mu_int));
  add("eta_F", format_double(cfg.fc.eta_F));
  add("eta_int", format_double(cfg.fc.eta_int));
  add("T", format_double(cfg.T));
  add("cfl", format_double(cfg.cfl));
  add("output_every", std::to_string(cfg.output_every));
  add("snapshot_times", cfg.snapshot_times.empty() ? "" : list(cfg.snapshot_times));
  add("limit_intervals", std::to_string(cfg.limit_intervals));
  add("threads", std::to_string(cfg.threads));
  add("cg_tol", format_double(cfg.sp.cg_tol));
  add("cg_maxit", std::to_string(cfg.sp.cg_maxit));
  add("proj_tol", format_double(cfg.sp.proj_tol));
  add("proj_maxit", std::to_string(cfg.sp.proj_maxit));
  add("dt_min", format_double(cfg.sp.dt_min));
  add("dt_max", format_double(cfg.sp.dt_max));
  add("init_mode", init_mode_name(cfg.init.mode));
  add("rho0", format_double(cfg.init.rho0));
  add("velocity_amplitude", format_double(cfg.init.velocity_amplitude));
  add("field_amplitude", format_double(cfg.init.field_amplitude));
  return out;
}

EosParams eos_params(const Config& cfg) { return EosParams{cfg.gamma, cfg.a}; }

Problem problem_from(const Config& cfg) {
  return build_problem(cfg.dim, cfg.L, cfg.cells, cfg.R_inner, cfg.R_outer,
                       cfg.transition_cells, cfg.scenario, cfg.epsilon, cfg.fc,
                       eos_params(cfg), cfg.sp);
}

SweepSetup sweep_setup_from(const Config& cfg) {
  SweepSetup su;
  su.scenario = cfg.scenario;
  su.epsilons = cfg.epsilon_list;
  su.dim = cfg.dim;
  su.L = cfg.L;
  su.n = cfg.cells;
  su.R_inner = cfg.R_inner;
  su.R_outer = cfg.R_outer;
  su.transition_cells = cfg.transition_cells;
  su.fc = cfg.fc;
  su.eos = eos_params(cfg);
  su.sp = cfg.sp;
  su.init = cfg.init;
  su.T = cfg.T;
  su.limit_intervals = cfg.limit_intervals;
  su.max_threads = cfg.threads;
  return su;
}

} // namespace penmhd
