// Verb dispatcher behind the public API: executes run / sweep /
// verify-operators / verify-convergence / certify for a validated
// configuration, writes the documented output files into `outdir`, and maps
// outcomes onto the process exit-code convention:
//   0  success
//   1  configuration or usage problem (also: verbs unsupported for the
//      configured geometry, e.g. certify in 3-D)
//   2  numerical failure, with the report naming the failing invariant
#pragma once

#include <string>

#include "config.hpp"

namespace penmhd {

struct VerbResult {
  int status = 0;
  std::string report; // human-readable summary (also written to report.txt)
};

VerbResult execute_verb(const std::string& verb, const Config& cfg, const std::string& outdir);

} // namespace penmhd
