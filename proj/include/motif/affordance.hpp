#pragma once

#include <Eigen/Core>
#include <array>
#include <cstddef>
#include <vector>

#include "motif/cloud.hpp"

namespace motif::affordance {

// Thermal scoring and boundary-search parameters. The jump threshold of 30
// score units is the pinned default; weights and both thresholds are exposed
// because the score scale follows from the weights.
struct DenoiseConfig {
  double red_weight = 1.0;
  double green_weight = -0.5;
  double blue_weight = -0.5;
  double upper_hot_threshold = 40.0;
  double lower_cool_threshold = -40.0;
  double jump_threshold = 30.0;
  double slice_height = 0.005;               // meters
  Eigen::Vector3d axis{0.0, 0.0, 1.0};       // slicing direction
  // false: a transition qualifies when the slice BELOW it is hot and the
  // slice ABOVE it is cool (warm liquid under cool air). true: the inverted
  // reading, qualifying on hot-above / cool-below with the jump measured
  // upward.
  bool literal_thresholds = false;
};

// score = red_weight*R + green_weight*G + blue_weight*B. With the default
// zero-sum weights, positive means hot, negative cool, gray lands on 0.
double score_thermal(const ColoredPoint& point, const DenoiseConfig& cfg = {});

// Fills thermal_score for every point.
void score_cloud(PointCloud& cloud, const DenoiseConfig& cfg = {});

struct Slice {
  double mean_score = 0.0;  // 0 for retained empty slices
  std::vector<std::size_t> point_indices;
};

struct SliceProfile {
  Eigen::Vector3d axis{0.0, 0.0, 1.0};
  double slice_height = 0.005;
  double origin = 0.0;  // axis coordinate of slice 0's lower edge
  std::vector<Slice> slices;  // ascending along axis; gaps retained
};

// Partitions a scored cloud into contiguous bins along the axis. Empty bins
// between occupied ones are kept with mean 0 and no members. Throws
// empty_cloud / missing_scores / invalid_argument.
SliceProfile slice_cloud(const PointCloud& cloud, const Eigen::Vector3d& axis,
                         double slice_height);

struct BoundaryResult {
  std::size_t upper_slice = 0;  // index of the transition's upper slice
  double drop = 0.0;            // mean(below) - mean(above)
  bool qualified = false;       // threshold branch vs largest-drop fallback
};

// Maximum-negative-transition search over adjacent slice pairs. A qualified
// pair has the below-slice mean above upper_hot_threshold, the above-slice
// mean below lower_cool_threshold and a drop exceeding jump_threshold; the
// qualified pair with the largest drop wins. With no qualified pair the
// largest drop overall wins and the result is flagged unqualified
// (low confidence). Throws too_few_slices.
BoundaryResult find_boundary(const SliceProfile& profile,
                             const DenoiseConfig& cfg = {});

struct DenoiseResult {
  PointCloud cloud;
  std::size_t anomaly_count = 0;
  std::array<std::uint8_t, 3> dominant_below{0, 0, 0};
  std::array<std::uint8_t, 3> dominant_above{0, 0, 0};
};

// Replaces sign anomalies with the layer's dominant color: below the
// boundary any negative-score point, above it any positive-score point. The
// dominant color is the component-wise median of the layer. Scores of
// replaced points are recomputed. Idempotent for a fixed boundary.
DenoiseResult denoise(const PointCloud& cloud, const SliceProfile& profile,
                      std::size_t boundary, const DenoiseConfig& cfg = {});

struct AffordanceMap {
  PointCloud cloud;
  double hot_threshold = 0.0;
  std::vector<std::size_t> hot_indices;  // ascending; score >= hot_threshold
};

// Classifies each point hot/safe against the threshold. Throws
// missing_scores when any point lacks a thermal score.
AffordanceMap build_affordance(PointCloud cloud, double hot_threshold);

struct GraspCandidate {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> contacts;  // world frame, >= 1
};

struct GraspRejection {
  std::size_t candidate = 0;  // index into the input list
  std::size_t contact = 0;
  std::size_t hot_point = 0;  // index into map.cloud
  double distance = 0.0;      // the offending minimum distance
};

struct FilterResult {
  std::vector<GraspCandidate> kept;        // input order preserved
  std::vector<std::size_t> kept_indices;   // into the input list
  std::vector<GraspRejection> rejections;  // one per rejected candidate
};

// Retains exactly the candidates whose every contact point is farther than
// safety_radius from every hot point. Throws invalid_argument for a negative
// radius or a candidate without contacts.
FilterResult filter_grasps(const std::vector<GraspCandidate>& candidates,
                           const AffordanceMap& map, double safety_radius);

}  // namespace motif::affordance
