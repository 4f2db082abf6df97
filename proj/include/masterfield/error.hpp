#pragma once

#include <stdexcept>
#include <string>

namespace mf {

// Base class for every error raised by the library. Messages are one line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mf
