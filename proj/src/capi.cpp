// C interface implementation: translates exceptions into status codes and
// copies all outgoing strings onto the C heap so clients never touch C++
// objects across the boundary.
#include "penmhd/penmhd.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "config.hpp"
#include "engine.hpp"
#include "errors.hpp"

struct penmhd_config {
  penmhd::Config cfg;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void set_error(char** error, const std::string& message) {
  if (error != nullptr) *error = dup_string(message);
}

std::vector<std::string> collect_overrides(const char* const* overrides, size_t n_overrides) {
  std::vector<std::string> v;
  v.reserve(n_overrides);
  for (size_t i = 0; i < n_overrides; ++i) {
    v.emplace_back(overrides[i] != nullptr ? overrides[i] : "");
  }
  return v;
}

template <class Fn>
penmhd_status load_guarded(Fn&& fn, penmhd_config** out, char** error) {
  if (out == nullptr) {
    set_error(error, "output handle pointer is null");
    return PENMHD_ERR_CONFIG;
  }
  *out = nullptr;
  try {
    auto handle = new penmhd_config{fn()};
    *out = handle;
    return PENMHD_OK;
  } catch (const penmhd::config_error& e) {
    set_error(error, e.what());
    return PENMHD_ERR_CONFIG;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return PENMHD_ERR_CONFIG;
  }
}

}  // namespace

extern "C" {

const char* penmhd_version(void) { return "1.0.0"; }

penmhd_status penmhd_config_load(const char* path, const char* const* overrides,
                                 size_t n_overrides, penmhd_config** out, char** error) {
  if (path == nullptr) {
    if (out != nullptr) *out = nullptr;
    set_error(error, "config path is null");
    return PENMHD_ERR_CONFIG;
  }
  auto ov = collect_overrides(overrides, n_overrides);
  return load_guarded([&] { return penmhd::load_config(path, ov); }, out, error);
}

penmhd_status penmhd_config_parse(const char* text, const char* const* overrides,
                                  size_t n_overrides, penmhd_config** out, char** error) {
  if (text == nullptr) {
    if (out != nullptr) *out = nullptr;
    set_error(error, "config text is null");
    return PENMHD_ERR_CONFIG;
  }
  auto ov = collect_overrides(overrides, n_overrides);
  return load_guarded([&] { return penmhd::parse_config_text(text, ov); }, out, error);
}

void penmhd_config_free(penmhd_config* cfg) { delete cfg; }

char* penmhd_config_get(const penmhd_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  for (const auto& [k, v] : penmhd::effective_entries(cfg->cfg)) {
    if (k == key) return dup_string(v);
  }
  return nullptr;
}

penmhd_status penmhd_execute(const penmhd_config* cfg, const char* verb, const char* outdir,
                             char** report) {
  if (report != nullptr) *report = nullptr;
  if (cfg == nullptr || verb == nullptr || outdir == nullptr) {
    if (report != nullptr) *report = dup_string("execute: null argument");
    return PENMHD_ERR_CONFIG;
  }
  penmhd::VerbResult res = penmhd::execute_verb(verb, cfg->cfg, outdir);
  if (report != nullptr) *report = dup_string(res.report);
  switch (res.status) {
    case 0: return PENMHD_OK;
    case 1: return PENMHD_ERR_CONFIG;
    default: return PENMHD_ERR_NUMERIC;
  }
}

void penmhd_string_free(char* s) { std::free(s); }

}  // extern "C"
