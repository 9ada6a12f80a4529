#ifndef HEBBNET_ERRORS_HPP_
#define HEBBNET_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hebbnet {

// Argument-level failures (bad ranges, wrong lengths) are reported with
// std::invalid_argument. The types below cover the remaining categories.

/// A network or experiment configuration that cannot be built.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed binary input (IDX files, network dumps). Carries the byte
/// offset at which parsing failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed data that cannot satisfy a request (e.g. too few images of a digit).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hebbnet

#endif  // HEBBNET_ERRORS_HPP_
