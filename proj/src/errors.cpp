#include "motif/errors.hpp"

namespace motif {

// Stable identifiers used in diagnostics and the CLI's JSON error envelope.
// Renaming one is a breaking change for downstream log parsing.
const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::file_not_found: return "FileNotFound";
    case ErrorCode::io: return "Io";
    case ErrorCode::parse: return "Parse";
    case ErrorCode::config: return "Config";
    case ErrorCode::incomplete_frame: return "IncompleteFrame";
    case ErrorCode::crc_mismatch: return "CrcMismatch";
    case ErrorCode::non_positive_depth: return "NonPositiveDepth";
    case ErrorCode::pixel_out_of_bounds: return "PixelOutOfBounds";
    case ErrorCode::behind_camera: return "BehindCamera";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::empty_cloud: return "EmptyCloud";
    case ErrorCode::too_few_slices: return "TooFewSlices";
    case ErrorCode::missing_scores: return "MissingScores";
    case ErrorCode::insufficient_coverage: return "InsufficientCoverage";
    case ErrorCode::empty_trace: return "EmptyTrace";
    case ErrorCode::unlabeled_trace: return "UnlabeledTrace";
    case ErrorCode::degenerate_class: return "DegenerateClass";
    case ErrorCode::rank_collapse: return "RankCollapse";
    case ErrorCode::too_few_points: return "TooFewPoints";
    case ErrorCode::degenerate_covariance: return "DegenerateCovariance";
    case ErrorCode::invalid_geometry: return "InvalidGeometry";
    case ErrorCode::internal: return "Internal";
  }
  return "Internal";
}

}  // namespace motif
