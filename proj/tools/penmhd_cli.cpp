// Command-line front end. Links only against the C interface in
// include/penmhd/penmhd.h; all argument handling lives here, all physics and
// file writing live behind the library boundary.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "penmhd/penmhd.h"

namespace {

struct VerbArgs {
  std::string config_path;
  std::string outdir = ".";
  std::vector<std::string> overrides;
  bool has_config = false;
};

int run_verb(const std::string& verb, const VerbArgs& a) {
  std::vector<const char*> ov;
  ov.reserve(a.overrides.size());
  for (const auto& s : a.overrides) ov.push_back(s.c_str());

  penmhd_config* cfg = nullptr;
  char* err = nullptr;
  penmhd_status st =
      a.has_config
          ? penmhd_config_load(a.config_path.c_str(), ov.data(), ov.size(), &cfg, &err)
          : penmhd_config_parse("scenario = none\n", ov.data(), ov.size(), &cfg, &err);
  if (st != PENMHD_OK) {
    std::fprintf(stderr, "penmhd: %s\n", err != nullptr ? err : "configuration error");
    std::fprintf(stderr, "usage: penmhd %s --config FILE [--out DIR] [--set key=value ...]\n",
                 verb.c_str());
    penmhd_string_free(err);
    penmhd_config_free(cfg);
    return 1;
  }

  char* report = nullptr;
  st = penmhd_execute(cfg, verb.c_str(), a.outdir.c_str(), &report);
  if (report != nullptr && report[0] != '\0') {
    std::fputs(report, stdout);
    size_t len = std::string(report).size();
    if (report[len - 1] != '\n') std::fputc('\n', stdout);
  }
  if (st != PENMHD_OK) {
    std::fprintf(stderr, "penmhd: %s exited with status %d\n", verb.c_str(), static_cast<int>(st));
  }
  penmhd_string_free(report);
  penmhd_config_free(cfg);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penalized compressible MHD on a periodic box"};
  app.set_version_flag("--version", std::string(penmhd_version()));
  app.require_subcommand(1);

  int rc = 0;
  auto add_verb = [&](const std::string& name, const std::string& desc, bool need_config) {
    CLI::App* sub = app.add_subcommand(name, desc);
    auto args = std::make_shared<VerbArgs>();
    CLI::Option* copt = sub->add_option("--config,-c", args->config_path, "configuration file");
    if (need_config) copt->required();
    sub->add_option("--out,-o", args->outdir, "output directory (default: current directory)");
    sub->add_option("--set,-s", args->overrides, "override key=value (repeatable)")
        ->allow_extra_args(false);
    sub->callback([&rc, args, name, copt] {
      args->has_config = copt->count() > 0;
      rc = run_verb(name, *args);
    });
  };

  add_verb("run", "integrate one scenario and write diagnostics", true);
  add_verb("sweep", "run the penalization-strength ladder and gate the decay", true);
  add_verb("verify-operators", "check discrete operator identities on random fields", false);
  add_verb("verify-convergence", "measure convergence order against a manufactured solution",
           false);
  add_verb("certify", "evaluate weak-form balance identities on a run", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return rc;
}
