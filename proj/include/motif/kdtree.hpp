#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace motif {

// Static median-split kd-tree over 3D points, built once and queried for the
// exact nearest neighbour.
class KdTree3 {
 public:
  KdTree3() = default;

  explicit KdTree3(std::vector<Eigen::Vector3d> points)
      : points_(std::move(points)) {
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    nodes_.reserve(points_.size());
    root_ = build(0, points_.size(), 0);
  }

  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  struct Hit {
    std::size_t index = static_cast<std::size_t>(-1);
    double distance = std::numeric_limits<double>::infinity();
  };

  Hit nearest(const Eigen::Vector3d& query) const {
    Hit best;
    if (root_ != npos) search(root_, query, best);
    return best;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Node {
    std::size_t point;
    std::size_t left = npos;
    std::size_t right = npos;
    int axis = 0;
  };

  std::size_t build(std::size_t lo, std::size_t hi, int depth) {
    if (lo >= hi) return npos;
    const int axis = depth % 3;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid,
                     order_.begin() + hi,
                     [&](std::size_t a, std::size_t b) {
                       return points_[a][axis] < points_[b][axis];
                     });
    const std::size_t node = nodes_.size();
    nodes_.push_back({order_[mid], npos, npos, axis});
    const std::size_t left = build(lo, mid, depth + 1);
    const std::size_t right = build(mid + 1, hi, depth + 1);
    nodes_[node].left = left;
    nodes_[node].right = right;
    return node;
  }

  void search(std::size_t node, const Eigen::Vector3d& query, Hit& best) const {
    const Node& n = nodes_[node];
    const Eigen::Vector3d& p = points_[n.point];
    const double d = (p - query).norm();
    // The distance is exact; equidistant hits resolve by traversal order.
    if (d < best.distance) best = {n.point, d};

    const double delta = query[n.axis] - p[n.axis];
    const std::size_t near = delta < 0.0 ? n.left : n.right;
    const std::size_t far = delta < 0.0 ? n.right : n.left;
    if (near != npos) search(near, query, best);
    if (far != npos && std::abs(delta) <= best.distance)
      search(far, query, best);
  }

  std::vector<Eigen::Vector3d> points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::size_t root_ = npos;
};

}  // namespace motif
