#pragma once

#include <stdexcept>
#include <string>

namespace dcp {

// Exit-code contract: input 2, resource 3, internal 4.

struct input_error : std::runtime_error {
  explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& m) : std::runtime_error(m) {}
};

struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace dcp
