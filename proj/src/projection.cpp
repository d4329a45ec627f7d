#include "motif/projection.hpp"

#include <Eigen/LU>
#include <cmath>

#include "motif/errors.hpp"

namespace motif::projection {

void CameraModel::validate() const {
  const Eigen::Matrix3d residual =
      rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
  if (residual.cwiseAbs().maxCoeff() >= 1e-9)
    raise(ErrorCode::invalid_argument, "camera rotation is not orthonormal");
  if (rotation.determinant() < 0.0)
    raise(ErrorCode::invalid_argument, "camera rotation has determinant -1");
  const double fx = intrinsics(0, 0), fy = intrinsics(1, 1);
  const double cx = intrinsics(0, 2), cy = intrinsics(1, 2);
  if (!(fx > 0.0) || !(fy > 0.0))
    raise(ErrorCode::invalid_argument, "focal lengths must be positive");
  if (width <= 0 || height <= 0)
    raise(ErrorCode::invalid_argument, "image dimensions must be positive");
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
    raise(ErrorCode::invalid_argument, "principal point outside image");
}

Eigen::Matrix3d CameraModel::world_rotation() const {
  if (convention == PoseConvention::cam_to_world) return rotation;
  return rotation.transpose();
}

Eigen::Vector3d CameraModel::world_translation() const {
  return convention == PoseConvention::cam_to_world
             ? translation
             : Eigen::Vector3d(-(rotation.transpose() * translation));
}

Eigen::Vector3d backproject(const CameraModel& cam, const Eigen::Vector2d& pixel,
                            double depth) {
  if (!(depth > 0.0))
    raise(ErrorCode::non_positive_depth,
          "depth must be positive, got " + std::to_string(depth));
  if (pixel.x() < 0.0 || pixel.x() >= cam.width || pixel.y() < 0.0 ||
      pixel.y() >= cam.height)
    raise(ErrorCode::pixel_out_of_bounds,
          "pixel (" + std::to_string(pixel.x()) + ", " +
              std::to_string(pixel.y()) + ") outside " +
              std::to_string(cam.width) + "x" + std::to_string(cam.height));

  const double fx = cam.intrinsics(0, 0), fy = cam.intrinsics(1, 1);
  const double cx = cam.intrinsics(0, 2), cy = cam.intrinsics(1, 2);
  const Eigen::Vector3d ray((pixel.x() - cx) / fx, (pixel.y() - cy) / fy, 1.0);
  return cam.world_rotation() * (depth * ray) + cam.world_translation();
}

PixelDepth project(const CameraModel& cam, const Eigen::Vector3d& world_point) {
  const Eigen::Matrix3d r_wc = cam.world_rotation();
  const Eigen::Vector3d cam_point =
      r_wc.transpose() * (world_point - cam.world_translation());
  if (!(cam_point.z() > 0.0))
    raise(ErrorCode::behind_camera, "point has non-positive camera depth");

  const double fx = cam.intrinsics(0, 0), fy = cam.intrinsics(1, 1);
  const double cx = cam.intrinsics(0, 2), cy = cam.intrinsics(1, 2);
  PixelDepth out;
  out.pixel = {fx * cam_point.x() / cam_point.z() + cx,
               fy * cam_point.y() / cam_point.z() + cy};
  out.depth = cam_point.z();
  return out;
}

PaintResult paint_thermal(const PointCloud& cloud, const CameraModel& cam,
                          const ThermalImage& thermal, const DepthImage& depth,
                          double depth_tolerance) {
  if (thermal.width != depth.width || thermal.height != depth.height)
    raise(ErrorCode::dimension_mismatch,
          "thermal and depth images must share dimensions");

  PaintResult result;
  result.cloud = cloud;
  const Eigen::Matrix3d r_cw = cam.world_rotation().transpose();
  const Eigen::Vector3d t_w = cam.world_translation();
  const double fx = cam.intrinsics(0, 0), fy = cam.intrinsics(1, 1);
  const double cx = cam.intrinsics(0, 2), cy = cam.intrinsics(1, 2);

  for (ColoredPoint& point : result.cloud) {
    const Eigen::Vector3d cam_point = r_cw * (point.position - t_w);
    if (!(cam_point.z() > 0.0)) {
      ++result.out_of_view;
      continue;
    }
    const double px = fx * cam_point.x() / cam_point.z() + cx;
    const double py = fy * cam_point.y() / cam_point.z() + cy;
    const long u = std::lround(px);
    const long v = std::lround(py);
    if (u < 0 || u >= thermal.width || v < 0 || v >= thermal.height) {
      ++result.out_of_view;
      continue;
    }
    const double d_img = depth.at(static_cast<int>(u), static_cast<int>(v));
    if (d_img <= 0.0 || std::abs(cam_point.z() - d_img) > depth_tolerance) {
      ++result.occluded;
      continue;
    }
    point.thermal_raw = thermal.at(static_cast<int>(u), static_cast<int>(v));
    ++result.painted;
  }
  return result;
}

}  // namespace motif::projection
