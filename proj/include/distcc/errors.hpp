#pragma once

#include <stdexcept>
#include <string>

namespace distcc {

// Failure modes of the public API. Tests match on the code, not the text.
enum class errc {
  negative_coefficient,
  shape_mismatch,
  not_normalized,
  overflow,
  isolated_vertex,
  size_mismatch,
  dimension_mismatch,
  invalid_state,
  invalid_measurement,
  unsupported_family,
  infeasible,
  size_exceeded,
  solver_failure,
  too_large,
  even_n,
  odd_dimension,
  invalid_argument,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::negative_coefficient: return "NegativeCoefficient";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_normalized: return "NotNormalized";
    case errc::overflow: return "Overflow";
    case errc::isolated_vertex: return "IsolatedVertex";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::invalid_state: return "InvalidState";
    case errc::invalid_measurement: return "InvalidMeasurement";
    case errc::unsupported_family: return "UnsupportedFamily";
    case errc::infeasible: return "Infeasible";
    case errc::size_exceeded: return "SizeExceeded";
    case errc::solver_failure: return "SolverFailure";
    case errc::too_large: return "TooLarge";
    case errc::even_n: return "EvenN";
    case errc::odd_dimension: return "OddDimension";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace distcc
