// Output writers. Every file embeds the effective configuration:
//   *.csv      versioned format tag + `# key = value` comment lines
//   sweep.json machine-readable (config object, rows, gates)
//   snapshot   text header (format tag, config, grid, field list) followed by
//              raw float64 arrays in the listed order, little-endian
//   report.txt config echo followed by free-form report text
// All numbers are written as shortest round-trip decimals, so identical runs
// produce bit-identical files.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "solver.hpp"
#include "sweep.hpp"

namespace penmhd {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void write_diagnostics_csv(const std::string& path, const ConfigEcho& cfg,
                           const std::vector<DiagnosticsRecord>& recs);

void write_sweep_csv(const std::string& path, const ConfigEcho& cfg, const SweepReport& rep);

void write_sweep_json(const std::string& path, const ConfigEcho& cfg, const SweepReport& rep);

void write_snapshot(const std::string& path, const ConfigEcho& cfg, const Grid& g,
                    const State& s);

// Read back a snapshot written by write_snapshot (used by tests and tools).
struct SnapshotFile {
  int dim = 0;
  int n = 0;
  double L = 0.0;
  double time = 0.0;
  std::vector<std::string> fields;
  std::vector<std::vector<double>> data; // one array per field, length n^dim
};
SnapshotFile read_snapshot(const std::string& path);

void write_report(const std::string& path, const ConfigEcho& cfg, const std::string& text);

} // namespace penmhd
