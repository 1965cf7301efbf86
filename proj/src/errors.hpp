// Error taxonomy mirrored by the C API status codes: configuration/usage
// problems vs. numerical failures detected while running.
#pragma once

#include <stdexcept>
#include <string>

namespace penmhd {

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace penmhd
