#pragma once

#include <stdexcept>
#include <string>

namespace motif {

// Stable error identities shared by the C++ core, the C API status codes and
// the CLI's JSON error envelope. Names here are the wire-visible strings.
enum class ErrorCode {
  ok = 0,
  invalid_argument,
  file_not_found,
  io,
  parse,
  config,
  incomplete_frame,
  crc_mismatch,
  non_positive_depth,
  pixel_out_of_bounds,
  behind_camera,
  dimension_mismatch,
  empty_cloud,
  too_few_slices,
  missing_scores,
  insufficient_coverage,
  empty_trace,
  unlabeled_trace,
  degenerate_class,
  rank_collapse,
  too_few_points,
  degenerate_covariance,
  invalid_geometry,
  internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace motif
