#include "convexreg/error.hpp"

namespace convexreg {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::invalid_domain: return "invalid-domain";
  case ErrorKind::invalid_grid: return "invalid-grid";
  case ErrorKind::degenerate_geometry: return "degenerate-geometry";
  case ErrorKind::out_of_domain: return "out-of-domain";
  case ErrorKind::invalid_input: return "invalid-input";
  case ErrorKind::empty_window: return "empty-window";
  case ErrorKind::bandwidth_selection: return "bandwidth-selection";
  case ErrorKind::sampling: return "sampling";
  case ErrorKind::unsupported_dimension: return "unsupported-dimension";
  case ErrorKind::parse: return "parse";
  case ErrorKind::usage: return "usage";
  case ErrorKind::io: return "io";
  }
  return "unknown";
}

std::string_view to_string(ErrorCategory category)
{
  switch (category) {
  case ErrorCategory::geometry: return "geometry";
  case ErrorCategory::smoothing: return "smoothing";
  case ErrorCategory::input: return "input";
  case ErrorCategory::parse: return "parse";
  case ErrorCategory::usage: return "usage";
  case ErrorCategory::io: return "io";
  }
  return "unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::invalid_domain:
  case ErrorKind::invalid_grid:
  case ErrorKind::degenerate_geometry:
  case ErrorKind::out_of_domain:
    return ErrorCategory::geometry;
  case ErrorKind::empty_window:
  case ErrorKind::bandwidth_selection:
  case ErrorKind::sampling:
    return ErrorCategory::smoothing;
  case ErrorKind::invalid_input:
  case ErrorKind::unsupported_dimension:
    return ErrorCategory::input;
  case ErrorKind::parse:
    return ErrorCategory::parse;
  case ErrorKind::usage:
    return ErrorCategory::usage;
  case ErrorKind::io:
    return ErrorCategory::io;
  }
  return ErrorCategory::input;
}

int exit_code(ErrorCategory category)
{
  switch (category) {
  case ErrorCategory::usage: return 2;
  case ErrorCategory::parse: return 3;
  case ErrorCategory::geometry: return 4;
  case ErrorCategory::smoothing: return 5;
  case ErrorCategory::input: return 6;
  case ErrorCategory::io: return 7;
  }
  return 1;
}

void fail(ErrorKind kind, const std::string& message)
{
  throw Error(kind, message);
}

} // namespace convexreg
