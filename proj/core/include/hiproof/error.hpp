#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hiproof {

// Closed set of machine-readable error codes. The string forms are part of
// the service contract (docs/api.md).
enum class ErrorCode {
  invalid_volume,
  invalid_alpha,
  invalid_dimension,
  invalid_ratio,
  invalid_floor_area,
  invalid_range,
  invalid_min_surface,
  implausible_input,
  grid_too_large,
  invalid_record,
  parse_error,
  invalid_request,
  unknown_scenario,
  payload_too_large,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Raised whenever an input leaves the domain of a formula. Carries the name
/// of the offending field so front ends can point at it.
class DomainError : public std::invalid_argument {
 public:
  DomainError(ErrorCode code, std::string field, const std::string& message)
      : std::invalid_argument(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

/// Error while reading a record stream; `line` is 1-based (header = line 1).
class RecordError : public DomainError {
 public:
  RecordError(ErrorCode code, std::string field, std::size_t line, const std::string& message)
      : DomainError(code, std::move(field), message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hiproof
