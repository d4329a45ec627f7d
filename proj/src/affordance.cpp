#include "motif/affordance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "motif/errors.hpp"
#include "motif/kdtree.hpp"

namespace motif::affordance {

double score_thermal(const ColoredPoint& point, const DenoiseConfig& cfg) {
  return cfg.red_weight * point.rgb[0] + cfg.green_weight * point.rgb[1] +
         cfg.blue_weight * point.rgb[2];
}

void score_cloud(PointCloud& cloud, const DenoiseConfig& cfg) {
  for (ColoredPoint& point : cloud) point.thermal_score = score_thermal(point, cfg);
}

SliceProfile slice_cloud(const PointCloud& cloud, const Eigen::Vector3d& axis,
                         double slice_height) {
  if (cloud.empty()) raise(ErrorCode::empty_cloud, "cannot slice an empty cloud");
  if (!(slice_height > 0.0))
    raise(ErrorCode::invalid_argument, "slice_height must be positive");
  const double norm = axis.norm();
  if (!(norm > 0.0))
    raise(ErrorCode::invalid_argument, "slicing axis must be non-zero");
  const Eigen::Vector3d dir = axis / norm;

  double lo = std::numeric_limits<double>::infinity();
  for (const ColoredPoint& point : cloud) {
    if (!point.thermal_score)
      raise(ErrorCode::missing_scores, "cloud points lack thermal scores");
    lo = std::min(lo, dir.dot(point.position));
  }

  SliceProfile profile;
  profile.axis = dir;
  profile.slice_height = slice_height;
  profile.origin = lo;

  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double s = dir.dot(cloud[i].position);
    auto bin = static_cast<std::size_t>(std::floor((s - lo) / slice_height));
    if (bin >= profile.slices.size()) profile.slices.resize(bin + 1);
    profile.slices[bin].point_indices.push_back(i);
  }
  for (Slice& slice : profile.slices) {
    if (slice.point_indices.empty()) continue;
    double sum = 0.0;
    for (std::size_t i : slice.point_indices) sum += *cloud[i].thermal_score;
    slice.mean_score = sum / static_cast<double>(slice.point_indices.size());
  }
  return profile;
}

BoundaryResult find_boundary(const SliceProfile& profile,
                             const DenoiseConfig& cfg) {
  const std::size_t n = profile.slices.size();
  if (n < 2)
    raise(ErrorCode::too_few_slices, "boundary search needs at least 2 slices");

  BoundaryResult best_qualified{0, -std::numeric_limits<double>::infinity(), true};
  BoundaryResult best_any{0, -std::numeric_limits<double>::infinity(), false};
  bool any_qualified = false;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double below = profile.slices[i].mean_score;
    const double above = profile.slices[i + 1].mean_score;
    const double drop = below - above;

    bool qualified;
    double magnitude;
    if (!cfg.literal_thresholds) {
      qualified = below > cfg.upper_hot_threshold &&
                  above < cfg.lower_cool_threshold && drop > cfg.jump_threshold;
      magnitude = drop;
    } else {
      // Inverted reading: hot above, cool below, jump measured upward.
      qualified = above > cfg.upper_hot_threshold &&
                  below < cfg.lower_cool_threshold && -drop > cfg.jump_threshold;
      magnitude = -drop;
    }

    if (magnitude > best_any.drop) best_any = {i + 1, magnitude, false};
    if (qualified && magnitude > best_qualified.drop) {
      best_qualified = {i + 1, magnitude, true};
      any_qualified = true;
    }
  }
  return any_qualified ? best_qualified : best_any;
}

namespace {

std::array<std::uint8_t, 3> dominant_color(const PointCloud& cloud,
                                           const std::vector<std::size_t>& members) {
  std::array<std::uint8_t, 3> dominant{0, 0, 0};
  std::vector<std::uint8_t> channel(members.size());
  for (int c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < members.size(); ++k)
      channel[k] = cloud[members[k]].rgb[c];
    auto mid = channel.begin() + static_cast<std::ptrdiff_t>((channel.size() - 1) / 2);
    std::nth_element(channel.begin(), mid, channel.end());
    dominant[c] = *mid;
  }
  return dominant;
}

}  // namespace

DenoiseResult denoise(const PointCloud& cloud, const SliceProfile& profile,
                      std::size_t boundary, const DenoiseConfig& cfg) {
  if (boundary == 0 || boundary >= profile.slices.size())
    raise(ErrorCode::invalid_argument,
          "boundary index must split the profile into two non-empty ranges");

  std::vector<std::size_t> below, above;
  for (std::size_t s = 0; s < profile.slices.size(); ++s) {
    auto& side = s < boundary ? below : above;
    side.insert(side.end(), profile.slices[s].point_indices.begin(),
                profile.slices[s].point_indices.end());
  }

  DenoiseResult result;
  result.cloud = cloud;
  if (!below.empty()) result.dominant_below = dominant_color(cloud, below);
  if (!above.empty()) result.dominant_above = dominant_color(cloud, above);

  auto replace = [&](std::size_t index, const std::array<std::uint8_t, 3>& rgb) {
    result.cloud[index].rgb = rgb;
    result.cloud[index].thermal_score = score_thermal(result.cloud[index], cfg);
    ++result.anomaly_count;
  };

  // Warm region below the boundary: negative scores are noise. Cool region
  // above: positive scores are noise (the classic hot speck above the fill
  // line). Zero-score points are neutral and never touched.
  for (std::size_t i : below) {
    const double score =
        cloud[i].thermal_score ? *cloud[i].thermal_score : score_thermal(cloud[i], cfg);
    if (score < 0.0) replace(i, result.dominant_below);
  }
  for (std::size_t i : above) {
    const double score =
        cloud[i].thermal_score ? *cloud[i].thermal_score : score_thermal(cloud[i], cfg);
    if (score > 0.0) replace(i, result.dominant_above);
  }
  return result;
}

AffordanceMap build_affordance(PointCloud cloud, double hot_threshold) {
  AffordanceMap map;
  map.hot_threshold = hot_threshold;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!cloud[i].thermal_score)
      raise(ErrorCode::missing_scores,
            "point " + std::to_string(i) + " lacks a thermal score");
    if (*cloud[i].thermal_score >= hot_threshold) map.hot_indices.push_back(i);
  }
  map.cloud = std::move(cloud);
  return map;
}

FilterResult filter_grasps(const std::vector<GraspCandidate>& candidates,
                           const AffordanceMap& map, double safety_radius) {
  if (safety_radius < 0.0)
    raise(ErrorCode::invalid_argument, "safety_radius must be non-negative");

  std::vector<Eigen::Vector3d> hot;
  hot.reserve(map.hot_indices.size());
  for (std::size_t i : map.hot_indices) hot.push_back(map.cloud[i].position);
  const KdTree3 tree(hot);

  FilterResult result;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const GraspCandidate& candidate = candidates[c];
    if (candidate.contacts.empty())
      raise(ErrorCode::invalid_argument,
            "grasp candidate " + std::to_string(c) + " has no contact points");

    if (tree.empty()) {
      result.kept.push_back(candidate);
      result.kept_indices.push_back(c);
      continue;
    }

    GraspRejection worst{c, 0, 0, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < candidate.contacts.size(); ++k) {
      const KdTree3::Hit hit = tree.nearest(candidate.contacts[k]);
      if (hit.distance < worst.distance)
        worst = {c, k, map.hot_indices[hit.index], hit.distance};
    }
    if (worst.distance > safety_radius) {
      result.kept.push_back(candidate);
      result.kept_indices.push_back(c);
    } else {
      result.rejections.push_back(worst);
    }
  }
  return result;
}

}  // namespace motif::affordance
