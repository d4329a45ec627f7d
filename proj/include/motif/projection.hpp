#pragma once

#include <Eigen/Core>
#include <vector>

#include "motif/cloud.hpp"

namespace motif::projection {

// How the stored (rotation, translation) pair is to be read.
//   cam_to_world: the pair IS the camera pose in the world frame and maps
//                 camera-frame points into the world.
//   world_to_cam: the pair maps world-frame points into the camera; the
//                 inverse is applied when going camera -> world.
enum class PoseConvention { cam_to_world, world_to_cam };

struct CameraModel {
  Eigen::Matrix3d intrinsics = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  int width = 0;
  int height = 0;
  PoseConvention convention = PoseConvention::cam_to_world;

  // Throws invalid_argument unless the rotation is orthonormal with
  // det +1 (inf-norm tolerance 1e-9), fx,fy > 0 and the principal point
  // lies inside the image.
  void validate() const;

  // Pose resolved to the camera->world direction regardless of convention.
  Eigen::Matrix3d world_rotation() const;
  Eigen::Vector3d world_translation() const;
};

struct ThermalImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // deg C, row-major

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<double> depths;  // meters, 0 = invalid

  double at(int x, int y) const { return depths[static_cast<std::size_t>(y) * width + x]; }
};

// World-frame point at depth d along the ray through the pixel:
//   x_world = T_wc * (d * K^-1 [x, y, 1]^T)
// Throws non_positive_depth / pixel_out_of_bounds.
Eigen::Vector3d backproject(const CameraModel& cam, const Eigen::Vector2d& pixel,
                            double depth);

struct PixelDepth {
  Eigen::Vector2d pixel;  // continuous, not rounded
  double depth = 0.0;     // camera-frame depth, meters
};

// Inverse of backproject. Throws behind_camera for non-positive depth.
PixelDepth project(const CameraModel& cam, const Eigen::Vector3d& world_point);

struct PaintResult {
  PointCloud cloud;
  std::size_t painted = 0;
  std::size_t occluded = 0;     // visible pixel but depth disagrees
  std::size_t out_of_view = 0;  // behind camera or projects outside image
};

// Assigns each visible point the temperature of its nearest pixel. A point is
// visible when it projects in bounds and the depth image agrees with its
// projected depth to within depth_tolerance. Values are sampled, never
// interpolated. Occluded / out-of-view points keep their prior thermal value.
PaintResult paint_thermal(const PointCloud& cloud, const CameraModel& cam,
                          const ThermalImage& thermal, const DepthImage& depth,
                          double depth_tolerance = 0.005);

}  // namespace motif::projection
