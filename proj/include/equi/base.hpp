#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equi {

// Error with an optional source position (1-based; 0 = not applicable).
struct Error : std::runtime_error {
  int line = 0;
  int col = 0;
  explicit Error(const std::string& msg, int l = 0, int c = 0)
      : std::runtime_error(msg), line(l), col(c) {}
};

[[noreturn]] inline void fail(const std::string& msg, int line = 0, int col = 0) {
  throw Error(msg, line, col);
}

} // namespace equi
