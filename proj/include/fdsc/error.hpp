#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdsc {

/// Invalid dimension, neighbor index, pattern order or module address.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed label text or family JSON. `position` is the offending
/// character index when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

/// Request exceeds a materialization cap.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdsc
