#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "motif/features.hpp"

namespace motif::lda {

struct LdaOptions {
  // Ridge added to the within-class scatter: lambda = ridge_scale * tr(S_W)/p.
  double ridge_scale = 1e-6;
  // Divisor of the per-column standardization variance.
  features::StdDivisor std_divisor = features::StdDivisor::population;
};

// Fitted discriminant model. All stored vectors/matrices live in the
// standardized feature space; the standardization parameters make the model
// self-contained for projection and classification.
struct LdaModel {
  std::vector<std::string> class_labels;   // sorted; also the tie-break order
  std::vector<std::string> feature_names;  // column names, size p
  Eigen::VectorXd standardize_mean;        // p
  Eigen::VectorXd standardize_std;         // p, 0 marks a constant column
  features::StdDivisor std_divisor = features::StdDivisor::population;
  Eigen::VectorXd global_mean;             // p, standardized space
  Eigen::MatrixXd class_means;             // C x p, standardized space
  Eigen::MatrixXd directions;              // p x k, unit columns
  Eigen::VectorXd eigenvalues;             // k, non-increasing
  Eigen::VectorXd explained_variance;      // k, ratios summing to 1
  Eigen::MatrixXd projected_centroids;     // C x k

  Eigen::Index dimension() const { return standardize_mean.size(); }
  Eigen::Index retained() const { return directions.cols(); }

  // Standardizes raw feature rows with the stored parameters; constant
  // columns map to 0.
  Eigen::MatrixXd standardize(const Eigen::MatrixXd& features) const;
};

// Fits the discriminant model: standardize columns, form within/between
// scatter, solve the ridge-regularized generalized eigenproblem by Cholesky
// whitening + a symmetric eigensolve, retain min(C-1, p) directions. Each
// direction is unit-norm with its largest-magnitude component positive.
// Throws degenerate_class / rank_collapse / invalid_argument.
LdaModel fit(const Eigen::MatrixXd& features, std::span<const std::string> labels,
             const LdaOptions& options = {});

// Standardize, center on the global mean, multiply by the directions.
// Throws dimension_mismatch.
Eigen::MatrixXd project(const LdaModel& model, const Eigen::MatrixXd& features);

struct Classification {
  std::string label;
  Eigen::VectorXd distances;  // to each projected centroid, class order
};

// Nearest projected centroid; ties resolve to the first label in class
// order. Throws dimension_mismatch.
Classification classify(const LdaModel& model, const Eigen::VectorXd& feature);

struct Contribution {
  std::string feature;
  double weight;  // direction component on standardized features
};

// Per direction, components sorted by descending magnitude.
std::vector<std::vector<Contribution>> feature_contributions(const LdaModel& model);

struct ConfidenceEllipse {
  Eigen::Vector2d center;
  double major_axis = 0.0;   // semi-axis length
  double minor_axis = 0.0;
  double orientation = 0.0;  // radians, major axis vs +x, in (-pi/2, pi/2]
  double coverage = 0.95;
};

// Ellipse of the 2x2 sample covariance scaled to the chi-square quantile at
// the coverage (exact for 2 dof: -2 ln(1 - coverage)). Throws
// too_few_points / degenerate_covariance / invalid_argument.
ConfidenceEllipse confidence_ellipse(const Eigen::MatrixXd& points,
                                     double coverage = 0.95);

struct LooReport {
  double accuracy = 0.0;
  std::vector<std::string> labels;  // class order of the confusion matrix
  Eigen::MatrixXi confusion;        // row = true class, col = predicted
  Eigen::VectorXd explained_variance;  // from the full-data fit
};

// Leave-one-out nearest-centroid evaluation (one fit per held-out sample).
LooReport leave_one_out(const Eigen::MatrixXd& features,
                        std::span<const std::string> labels,
                        const LdaOptions& options = {});

}  // namespace motif::lda
