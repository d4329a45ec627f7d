#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>

#include "motif/errors.hpp"
#include "motif/projection.hpp"
#include "motif/rng.hpp"

using namespace motif;

namespace {

projection::CameraModel test_camera() {
  projection::CameraModel cam;
  cam.intrinsics << 100.0, 0.0, 80.0,
                    0.0, 100.0, 60.0,
                    0.0, 0.0, 1.0;
  cam.width = 320;
  cam.height = 120;
  return cam;
}

Eigen::Matrix3d random_rotation(rng::Xoshiro256pp& gen) {
  const Eigen::Quaterniond q(gen.gaussian(), gen.gaussian(), gen.gaussian(),
                             gen.gaussian());
  return q.normalized().toRotationMatrix();
}

template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

projection::CameraModel random_camera(rng::Xoshiro256pp& gen) {
  projection::CameraModel cam;
  const double fx = gen.uniform(50.0, 800.0);
  const double fy = gen.uniform(50.0, 800.0);
  cam.width = 160 + static_cast<int>(gen.uniform_u64(800));
  cam.height = 120 + static_cast<int>(gen.uniform_u64(600));
  const double cx = gen.uniform(0.0, cam.width - 1e-6);
  const double cy = gen.uniform(0.0, cam.height - 1e-6);
  cam.intrinsics << fx, 0.0, cx, 0.0, fy, cy, 0.0, 0.0, 1.0;
  cam.rotation = random_rotation(gen);
  cam.translation = Eigen::Vector3d(gen.uniform(-2.0, 2.0),
                                    gen.uniform(-2.0, 2.0),
                                    gen.uniform(-2.0, 2.0));
  return cam;
}

}  // namespace

TEST_CASE("backproject through the optical center") {
  projection::CameraModel cam = test_camera();
  const Eigen::Vector3d p =
      projection::backproject(cam, Eigen::Vector2d(80.0, 60.0), 2.0);
  CHECK(p.isApprox(Eigen::Vector3d(0.0, 0.0, 2.0), 1e-12));
}

TEST_CASE("backproject with an off-center pixel and a translated camera") {
  // Pixel (180, 60) at fx=100, cx=80 is one focal length right of center:
  // camera coords (1, 0, 1) at depth 1, shifted by the camera position.
  projection::CameraModel cam = test_camera();
  cam.translation = Eigen::Vector3d(1.0, 0.0, 0.0);
  const Eigen::Vector3d p =
      projection::backproject(cam, Eigen::Vector2d(180.0, 60.0), 1.0);
  CHECK(p.isApprox(Eigen::Vector3d(2.0, 0.0, 1.0), 1e-12));
}

TEST_CASE("backproject rejects bad depth and out-of-image pixels") {
  projection::CameraModel cam = test_camera();
  const Eigen::Vector2d center(80.0, 60.0);
  CHECK(thrown_code([&] { projection::backproject(cam, center, 0.0); }) ==
        ErrorCode::non_positive_depth);
  CHECK(thrown_code([&] { projection::backproject(cam, center, -1.0); }) ==
        ErrorCode::non_positive_depth);
  CHECK(thrown_code([&] {
          projection::backproject(cam, Eigen::Vector2d(320.0, 60.0), 1.0);
        }) == ErrorCode::pixel_out_of_bounds);
  CHECK(thrown_code([&] {
          projection::backproject(cam, Eigen::Vector2d(-0.5, 60.0), 1.0);
        }) == ErrorCode::pixel_out_of_bounds);
  // Edge pixels: width-1 is valid, exactly width is not.
  CHECK_NOTHROW(projection::backproject(cam, Eigen::Vector2d(319.0, 119.0), 1.0));
}

TEST_CASE("project reports points behind the camera") {
  projection::CameraModel cam = test_camera();
  CHECK(thrown_code([&] {
          projection::project(cam, Eigen::Vector3d(0.0, 0.0, -1.0));
        }) == ErrorCode::behind_camera);
  CHECK(thrown_code([&] {
          projection::project(cam, Eigen::Vector3d(0.0, 0.0, 0.0));
        }) == ErrorCode::behind_camera);
}

TEST_CASE("project inverts backproject over random cameras") {
  rng::Xoshiro256pp gen(512);
  for (int trial = 0; trial < 2'000; ++trial) {
    const projection::CameraModel cam = random_camera(gen);
    const Eigen::Vector2d pixel(gen.uniform(0.0, cam.width - 1e-9),
                                gen.uniform(0.0, cam.height - 1e-9));
    const double depth = gen.uniform(0.05, 8.0);
    const Eigen::Vector3d world = projection::backproject(cam, pixel, depth);
    const projection::PixelDepth pd = projection::project(cam, world);
    CAPTURE(trial);
    REQUIRE((pd.pixel - pixel).norm() < 1e-9);
    REQUIRE(std::abs(pd.depth - depth) < 1e-9);
  }
}

TEST_CASE("both pose conventions describe the same camera") {
  rng::Xoshiro256pp gen(513);
  for (int trial = 0; trial < 200; ++trial) {
    projection::CameraModel cam = random_camera(gen);
    cam.convention = projection::PoseConvention::cam_to_world;

    projection::CameraModel inv = cam;
    inv.convention = projection::PoseConvention::world_to_cam;
    inv.rotation = cam.rotation.transpose();
    inv.translation = -(cam.rotation.transpose() * cam.translation);

    const Eigen::Vector2d pixel(gen.uniform(0.0, cam.width - 1e-9),
                                gen.uniform(0.0, cam.height - 1e-9));
    const double depth = gen.uniform(0.1, 5.0);
    const Eigen::Vector3d a = projection::backproject(cam, pixel, depth);
    const Eigen::Vector3d b = projection::backproject(inv, pixel, depth);
    CAPTURE(trial);
    REQUIRE((a - b).norm() < 1e-9);
  }
}

TEST_CASE("projection is invariant under a common rigid transform") {
  rng::Xoshiro256pp gen(514);
  for (int trial = 0; trial < 500; ++trial) {
    const projection::CameraModel cam = random_camera(gen);
    const Eigen::Vector2d pixel(gen.uniform(0.0, cam.width - 1e-9),
                                gen.uniform(0.0, cam.height - 1e-9));
    const double depth = gen.uniform(0.1, 5.0);
    const Eigen::Vector3d world = projection::backproject(cam, pixel, depth);

    const Eigen::Matrix3d rot = random_rotation(gen);
    const Eigen::Vector3d shift(gen.uniform(-3.0, 3.0), gen.uniform(-3.0, 3.0),
                                gen.uniform(-3.0, 3.0));
    projection::CameraModel moved = cam;
    moved.rotation = rot * cam.rotation;
    moved.translation = rot * cam.translation + shift;
    const Eigen::Vector3d moved_point = rot * world + shift;

    const projection::PixelDepth before = projection::project(cam, world);
    const projection::PixelDepth after = projection::project(moved, moved_point);
    CAPTURE(trial);
    REQUIRE((before.pixel - after.pixel).norm() < 1e-9);
    REQUIRE(std::abs(before.depth - after.depth) < 1e-9);
  }
}

TEST_CASE("camera validation rejects broken models") {
  projection::CameraModel cam = test_camera();
  CHECK_NOTHROW(cam.validate());

  SUBCASE("non-orthonormal rotation") {
    cam.rotation(0, 0) = 1.5;
    CHECK(thrown_code([&] { cam.validate(); }) == ErrorCode::invalid_argument);
  }
  SUBCASE("reflection") {
    cam.rotation = Eigen::Matrix3d::Identity();
    cam.rotation(2, 2) = -1.0;
    cam.rotation(1, 1) = -1.0;  // still orthonormal, det +1: fine
    CHECK_NOTHROW(cam.validate());
    cam.rotation(1, 1) = 1.0;  // now det -1
    CHECK(thrown_code([&] { cam.validate(); }) == ErrorCode::invalid_argument);
  }
  SUBCASE("non-positive focal length") {
    cam.intrinsics(0, 0) = 0.0;
    CHECK(thrown_code([&] { cam.validate(); }) == ErrorCode::invalid_argument);
  }
  SUBCASE("principal point outside the image") {
    cam.intrinsics(0, 2) = 400.0;
    CHECK(thrown_code([&] { cam.validate(); }) == ErrorCode::invalid_argument);
  }
}

TEST_CASE("paint assigns nearest-pixel readings to visible points") {
  projection::CameraModel cam = test_camera();

  projection::ThermalImage thermal;
  thermal.width = cam.width;
  thermal.height = cam.height;
  thermal.values.assign(static_cast<std::size_t>(cam.width) * cam.height, 20.0);

  projection::DepthImage depth;
  depth.width = cam.width;
  depth.height = cam.height;
  depth.depths.assign(thermal.values.size(), 2.0);

  // Distinct reading at pixel (81, 60) to observe rounding.
  thermal.values[60 * 320 + 81] = 55.0;

  PointCloud cloud;
  ColoredPoint p;
  // Projects to x = 80 + 100 * (x_cam / 2). x_cam = 0.012 -> pixel 80.6.
  p.position = Eigen::Vector3d(0.012, 0.0, 2.0);
  cloud.push_back(p);
  // Pixel 80.4 rounds down to 80.
  p.position = Eigen::Vector3d(0.008, 0.0, 2.0);
  cloud.push_back(p);
  // Occluded: depth image says 2.0 but the point is 0.5 m behind.
  p.position = Eigen::Vector3d(0.0, 0.0, 2.5);
  cloud.push_back(p);
  // Within tolerance: projected depth 2.004 vs image 2.0.
  p.position = Eigen::Vector3d(0.0, 0.1, 2.004);
  cloud.push_back(p);
  // Out of view: projects far beyond the right edge.
  p.position = Eigen::Vector3d(10.0, 0.0, 2.0);
  cloud.push_back(p);
  // Behind the camera.
  p.position = Eigen::Vector3d(0.0, 0.0, -1.0);
  cloud.push_back(p);

  const projection::PaintResult result =
      projection::paint_thermal(cloud, cam, thermal, depth, 0.005);
  CHECK(result.painted == 3);
  CHECK(result.occluded == 1);
  CHECK(result.out_of_view == 2);
  REQUIRE(result.cloud.size() == 6);
  CHECK(result.cloud[0].thermal_raw == 55.0);  // rounded up to pixel 81
  CHECK(result.cloud[1].thermal_raw == 20.0);  // rounded down to pixel 80
  CHECK_FALSE(result.cloud[2].thermal_raw.has_value());
  CHECK(result.cloud[3].thermal_raw == 20.0);
  CHECK_FALSE(result.cloud[4].thermal_raw.has_value());
  CHECK_FALSE(result.cloud[5].thermal_raw.has_value());
}

TEST_CASE("paint treats zero depth pixels as invalid") {
  projection::CameraModel cam = test_camera();
  projection::ThermalImage thermal;
  thermal.width = cam.width;
  thermal.height = cam.height;
  thermal.values.assign(static_cast<std::size_t>(cam.width) * cam.height, 30.0);
  projection::DepthImage depth;
  depth.width = cam.width;
  depth.height = cam.height;
  depth.depths.assign(thermal.values.size(), 0.0);  // no readings anywhere

  PointCloud cloud(1);
  cloud[0].position = Eigen::Vector3d(0.0, 0.0, 2.0);
  const projection::PaintResult result =
      projection::paint_thermal(cloud, cam, thermal, depth);
  CHECK(result.painted == 0);
  CHECK(result.occluded == 1);
  CHECK_FALSE(result.cloud[0].thermal_raw.has_value());
}

TEST_CASE("paint requires matching image dimensions") {
  projection::CameraModel cam = test_camera();
  projection::ThermalImage thermal;
  thermal.width = cam.width;
  thermal.height = cam.height;
  thermal.values.assign(static_cast<std::size_t>(cam.width) * cam.height, 0.0);
  projection::DepthImage depth;
  depth.width = 8;
  depth.height = 8;
  depth.depths.assign(64, 1.0);
  PointCloud cloud(1);
  cloud[0].position = Eigen::Vector3d(0, 0, 1);
  CHECK(thrown_code([&] {
          projection::paint_thermal(cloud, cam, thermal, depth);
        }) == ErrorCode::dimension_mismatch);
}
