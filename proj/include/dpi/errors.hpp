#pragma once

#include <stdexcept>
#include <string>

namespace dpi {

/// Raised when arguments violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input carries no usable structure (e.g. all zero under a mask).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// File-system and format failures. The message always names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace dpi
