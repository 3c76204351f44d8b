#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fptlat {

enum class ErrorKind {
  dimension,
  rank,
  structure,
  singular,
  range,
  parameter,
  resource,
  unsupported_shape,
  unsupported_norm,
  generation,
  internal,
  parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fptlat
