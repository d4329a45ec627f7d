#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace motif {

// Reconstructed object point: position + color, thermal value once painted,
// thermal score once scored (score is derived from rgb, never persisted).
struct ColoredPoint {
  Eigen::Vector3d position{0.0, 0.0, 0.0};
  std::array<std::uint8_t, 3> rgb{0, 0, 0};
  std::optional<double> thermal_raw;    // deg C, assigned by paint_thermal
  std::optional<double> thermal_score;  // weighted rgb sum, see affordance
};

using PointCloud = std::vector<ColoredPoint>;

}  // namespace motif
