// Run configuration: a small block-structured text format (`[block]` headers
// with `key = value` lines, `#`/`;` comments) plus command-line overrides.
//
// Keys are globally unique, so overrides are bare `key=value` pairs; block
// headers are optional structure, but a key placed under the wrong block is
// rejected by name. Every key has a documented default except `scenario`.
// The later of two assignments to the same key wins (file order first, then
// overrides in the given order). After parsing, the whole configuration is
// validated; every error names the offending key.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coefficients.hpp"
#include "eos.hpp"
#include "solver.hpp"
#include "sweep.hpp"

namespace penmhd {

struct Config {
  // [geometry]
  int dim = 2;
  double L = 1.0;
  int cells = 128;
  double R_outer = 0.7;
  double R_inner = 0.3;
  double transition_cells = 4.0;

  // [eos]  (gamma's default depends on dim: 1.4 in 2-D, 5/3 in 3-D)
  double gamma = 0.0; // resolved after parsing; 0 = unset
  double a = 1.0;

  // [scenario]
  Scenario scenario = Scenario::None;
  double epsilon = 0.01;
  std::vector<double> epsilon_list{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  FluidCoefficients fc;

  // [run]
  double T = 0.5;
  double cfl = 0.4;
  int output_every = 1;
  std::vector<double> snapshot_times;
  int limit_intervals = 8;
  int threads = 0;

  // [solver]
  SolverParams sp; // cfl member mirrors the run-block value after parsing

  // [init]
  InitParams init;
};

// Parse + validate a config file and apply overrides (each "key=value").
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Same, from in-memory text (the file loader delegates here).
Config parse_config_text(const std::string& text,
                         const std::vector<std::string>& overrides = {});

// The fully-resolved configuration as ordered (key, value) pairs -- the echo
// embedded in every output file. Values round-trip (shortest exact decimal).
std::vector<std::pair<std::string, std::string>> effective_entries(const Config& cfg);

// Shortest decimal string that parses back to exactly this double.
std::string format_double(double v);

// Conversions into the domain structs.
EosParams eos_params(const Config& cfg);
Problem problem_from(const Config& cfg); // build_problem with cfg.epsilon
SweepSetup sweep_setup_from(const Config& cfg);

} // namespace penmhd
