#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace logzono {

/// Operands whose dimensions do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or state-space budget would be exceeded.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& cap_name, std::size_t cap, std::size_t requested)
      : std::runtime_error(cap_name + " exceeded: requested " + std::to_string(requested) +
                           ", cap is " + std::to_string(cap)),
        cap_name_(cap_name),
        cap_(cap) {}

  const std::string& cap_name() const noexcept { return cap_name_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::string cap_name_;
  std::size_t cap_;
};

class EmptyInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual input (bitstrings, matrices, JSON records).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace logzono
