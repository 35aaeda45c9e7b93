#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace convexreg {

enum class ErrorKind {
  invalid_domain,
  invalid_grid,
  degenerate_geometry,
  out_of_domain,
  invalid_input,
  empty_window,
  bandwidth_selection,
  sampling,
  unsupported_dimension,
  parse,
  usage,
  io,
};

// Coarse grouping used for CLI exit codes.
enum class ErrorCategory { geometry, smoothing, input, parse, usage, io };

std::string_view to_string(ErrorKind kind);
std::string_view to_string(ErrorCategory category);
ErrorCategory category_of(ErrorKind kind);
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_of(kind_); }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace convexreg
