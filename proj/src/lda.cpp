#include "motif/lda.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "motif/errors.hpp"

namespace motif::lda {

Eigen::MatrixXd LdaModel::standardize(const Eigen::MatrixXd& features) const {
  if (features.cols() != dimension())
    raise(ErrorCode::dimension_mismatch,
          "expected " + std::to_string(dimension()) + " feature columns, got " +
              std::to_string(features.cols()));
  Eigen::MatrixXd z = features.rowwise() - standardize_mean.transpose();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    if (standardize_std(j) > 0.0)
      z.col(j) /= standardize_std(j);
    else
      z.col(j).setZero();
  }
  return z;
}

LdaModel fit(const Eigen::MatrixXd& features, std::span<const std::string> labels,
             const LdaOptions& options) {
  const Eigen::Index n = features.rows();
  const Eigen::Index p = features.cols();
  if (static_cast<std::size_t>(n) != labels.size())
    raise(ErrorCode::invalid_argument, "label count does not match row count");

  // Canonical class order: sorted labels. This fixes tie-breaking and the
  // centroid row order.
  std::map<std::string, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  const auto class_count = static_cast<Eigen::Index>(by_class.size());
  if (class_count < 2)
    raise(ErrorCode::invalid_argument, "need at least 2 classes");
  if (n < class_count + 1)
    raise(ErrorCode::invalid_argument, "need at least classes + 1 samples");
  for (const auto& [label, rows] : by_class)
    if (rows.size() < 2)
      raise(ErrorCode::degenerate_class,
            "class '" + label + "' has fewer than 2 samples");

  LdaModel model;
  model.std_divisor = options.std_divisor;
  for (const auto& [label, rows] : by_class) model.class_labels.push_back(label);
  const auto& names = features::feature_names();
  if (p == static_cast<Eigen::Index>(features::k_feature_count))
    model.feature_names.assign(names.begin(), names.end());
  else
    for (Eigen::Index j = 0; j < p; ++j)
      model.feature_names.push_back("f" + std::to_string(j));

  // Column standardization; constant columns are zeroed rather than blown up.
  model.standardize_mean = features.colwise().mean();
  Eigen::MatrixXd centered = features.rowwise() - model.standardize_mean.transpose();
  const double var_div = options.std_divisor == features::StdDivisor::sample
                             ? static_cast<double>(n - 1)
                             : static_cast<double>(n);
  model.standardize_std =
      (centered.array().square().colwise().sum() / var_div).sqrt();
  Eigen::MatrixXd z = centered;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (model.standardize_std(j) > 0.0)
      z.col(j) /= model.standardize_std(j);
    else
      z.col(j).setZero();
  }

  model.global_mean = z.colwise().mean();
  model.class_means.resize(class_count, p);
  Eigen::MatrixXd scatter_within = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd scatter_between = Eigen::MatrixXd::Zero(p, p);
  Eigen::Index c = 0;
  for (const auto& [label, rows] : by_class) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (Eigen::Index i : rows) mean += z.row(i).transpose();
    mean /= static_cast<double>(rows.size());
    model.class_means.row(c) = mean.transpose();
    for (Eigen::Index i : rows) {
      const Eigen::VectorXd d = z.row(i).transpose() - mean;
      scatter_within.noalias() += d * d.transpose();
    }
    const Eigen::VectorXd offset = mean - model.global_mean;
    scatter_between.noalias() +=
        static_cast<double>(rows.size()) * offset * offset.transpose();
    ++c;
  }

  // Ridge keeps S_W positive definite when n is small relative to p^2.
  const double trace = scatter_within.trace();
  const double lambda =
      options.ridge_scale * (trace > 0.0 ? trace / static_cast<double>(p) : 1.0);
  scatter_within.diagonal().array() += lambda;

  // Whiten with the Cholesky factor, then solve the symmetric problem
  // L^-1 S_B L^-T u = mu u; directions come back via w = L^-T u.
  Eigen::LLT<Eigen::MatrixXd> llt(scatter_within);
  if (llt.info() != Eigen::Success)
    raise(ErrorCode::internal, "within-class scatter is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  Eigen::MatrixXd whitened =
      l.triangularView<Eigen::Lower>().solve(scatter_between);
  whitened = l.triangularView<Eigen::Lower>()
                 .solve(whitened.transpose())
                 .transpose();
  whitened = 0.5 * (whitened + whitened.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(whitened);
  if (solver.info() != Eigen::Success)
    raise(ErrorCode::internal, "eigensolver failed to converge");

  const Eigen::Index retained = std::min<Eigen::Index>(class_count - 1, p);
  model.eigenvalues.resize(retained);
  model.directions.resize(p, retained);
  for (Eigen::Index k = 0; k < retained; ++k) {
    const Eigen::Index src = solver.eigenvalues().size() - 1 - k;  // descending
    model.eigenvalues(k) = std::max(solver.eigenvalues()(src), 0.0);
    Eigen::VectorXd w = l.transpose().triangularView<Eigen::Upper>().solve(
        solver.eigenvectors().col(src));
    w.normalize();
    // Sign convention: largest-magnitude component positive.
    Eigen::Index arg_max = 0;
    w.cwiseAbs().maxCoeff(&arg_max);
    if (w(arg_max) < 0.0) w = -w;
    model.directions.col(k) = w;
  }

  if ((model.eigenvalues.array() < 1e-12).all())
    raise(ErrorCode::rank_collapse,
          "all discriminant eigenvalues below 1e-12 after regularization");

  model.explained_variance = model.eigenvalues / model.eigenvalues.sum();
  model.projected_centroids =
      (model.class_means.rowwise() - model.global_mean.transpose()) *
      model.directions;
  return model;
}

Eigen::MatrixXd project(const LdaModel& model, const Eigen::MatrixXd& features) {
  const Eigen::MatrixXd z = model.standardize(features);
  return (z.rowwise() - model.global_mean.transpose()) * model.directions;
}

Classification classify(const LdaModel& model, const Eigen::VectorXd& feature) {
  if (feature.size() != model.dimension())
    raise(ErrorCode::dimension_mismatch,
          "expected " + std::to_string(model.dimension()) + " features, got " +
              std::to_string(feature.size()));
  const Eigen::MatrixXd projected = project(model, feature.transpose());

  Classification out;
  const auto class_count = static_cast<Eigen::Index>(model.class_labels.size());
  out.distances.resize(class_count);
  Eigen::Index best = 0;
  for (Eigen::Index c = 0; c < class_count; ++c) {
    out.distances(c) =
        (model.projected_centroids.row(c) - projected.row(0)).norm();
    if (out.distances(c) < out.distances(best)) best = c;  // ties keep first
  }
  out.label = model.class_labels[static_cast<std::size_t>(best)];
  return out;
}

std::vector<std::vector<Contribution>> feature_contributions(const LdaModel& model) {
  std::vector<std::vector<Contribution>> directions;
  directions.reserve(static_cast<std::size_t>(model.retained()));
  for (Eigen::Index k = 0; k < model.retained(); ++k) {
    std::vector<Contribution> entries;
    entries.reserve(static_cast<std::size_t>(model.dimension()));
    for (Eigen::Index j = 0; j < model.dimension(); ++j)
      entries.push_back({model.feature_names[static_cast<std::size_t>(j)],
                         model.directions(j, k)});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Contribution& a, const Contribution& b) {
                       return std::abs(a.weight) > std::abs(b.weight);
                     });
    directions.push_back(std::move(entries));
  }
  return directions;
}

ConfidenceEllipse confidence_ellipse(const Eigen::MatrixXd& points,
                                     double coverage) {
  if (points.cols() != 2)
    raise(ErrorCode::invalid_argument, "ellipse input must be M x 2");
  if (points.rows() < 3)
    raise(ErrorCode::too_few_points, "need at least 3 points");
  if (!(coverage > 0.0 && coverage < 1.0))
    raise(ErrorCode::invalid_argument, "coverage must lie in (0, 1)");

  ConfidenceEllipse ellipse;
  ellipse.coverage = coverage;
  ellipse.center = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - ellipse.center.transpose();
  const Eigen::Matrix2d cov =
      centered.transpose() * centered / static_cast<double>(points.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  // Chi-square quantile with 2 dof has the closed form -2 ln(1 - coverage).
  const double scale = -2.0 * std::log(1.0 - coverage);
  const double minor = std::sqrt(std::max(solver.eigenvalues()(0), 0.0) * scale);
  const double major = std::sqrt(std::max(solver.eigenvalues()(1), 0.0) * scale);
  if (minor < 1e-9)
    raise(ErrorCode::degenerate_covariance,
          "points are collinear; minor axis below 1e-9");

  ellipse.minor_axis = minor;
  ellipse.major_axis = major;
  const Eigen::Vector2d axis = solver.eigenvectors().col(1);
  double angle = std::atan2(axis.y(), axis.x());
  if (angle <= -M_PI / 2) angle += M_PI;  // fold to (-pi/2, pi/2]
  if (angle > M_PI / 2) angle -= M_PI;
  ellipse.orientation = angle;
  return ellipse;
}

LooReport leave_one_out(const Eigen::MatrixXd& features,
                        std::span<const std::string> labels,
                        const LdaOptions& options) {
  const Eigen::Index n = features.rows();
  if (static_cast<std::size_t>(n) != labels.size())
    raise(ErrorCode::invalid_argument, "label count does not match row count");

  const LdaModel full = fit(features, labels, options);
  LooReport report;
  report.labels = full.class_labels;
  report.explained_variance = full.explained_variance;
  const auto class_count = static_cast<Eigen::Index>(full.class_labels.size());
  report.confusion = Eigen::MatrixXi::Zero(class_count, class_count);

  auto class_index = [&](const std::string& label) {
    const auto it = std::find(report.labels.begin(), report.labels.end(), label);
    return static_cast<Eigen::Index>(it - report.labels.begin());
  };

  Eigen::Index correct = 0;
  Eigen::MatrixXd train(n - 1, features.cols());
  std::vector<std::string> train_labels(static_cast<std::size_t>(n) - 1);
  for (Eigen::Index held = 0; held < n; ++held) {
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == held) continue;
      train.row(r) = features.row(i);
      train_labels[static_cast<std::size_t>(r)] = labels[i];
      ++r;
    }
    const LdaModel model = fit(train, train_labels, options);
    const Classification result =
        classify(model, features.row(held).transpose());
    const Eigen::Index truth = class_index(labels[held]);
    const Eigen::Index predicted = class_index(result.label);
    report.confusion(truth, predicted) += 1;
    if (predicted == truth) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  return report;
}

}  // namespace motif::lda
