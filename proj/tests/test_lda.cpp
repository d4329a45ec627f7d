#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "motif/errors.hpp"
#include "motif/lda.hpp"
#include "motif/rng.hpp"

using namespace motif;

namespace {

template <typename Fn>
ErrorCode thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

struct Dataset {
  Eigen::MatrixXd x;
  std::vector<std::string> labels;
};

// Gaussian blobs with one centroid per class, labels "c0".."c{C-1}".
Dataset gaussian_blobs(rng::Xoshiro256pp& gen, int per_class, int classes,
                       int dims, double spread, double sigma) {
  Dataset data;
  data.x.resize(per_class * classes, dims);
  Eigen::MatrixXd centers(classes, dims);
  for (int c = 0; c < classes; ++c)
    for (int j = 0; j < dims; ++j) centers(c, j) = gen.uniform(-spread, spread);
  Eigen::Index row = 0;
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i, ++row) {
      for (int j = 0; j < dims; ++j)
        data.x(row, j) = centers(c, j) + sigma * gen.gaussian();
      data.labels.push_back("c" + std::to_string(c));
    }
  }
  return data;
}

// Reference solution of the generalized eigenproblem: explicitly invert the
// ridged within-class scatter and hand S_W^-1 S_B to the general (dense,
// non-symmetric) eigensolver. Slower and less stable than whitening, which
// is exactly why it makes an independent cross-check.
struct GeneralizedEig {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // unit columns, order matches
};

GeneralizedEig lda_oracle(const Eigen::MatrixXd& x,
                          const std::vector<std::string>& labels,
                          double ridge_scale, Eigen::Index retained) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();

  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::RowVectorXd stddev =
      (centered.array().square().colwise().sum() / static_cast<double>(n)).sqrt();
  Eigen::MatrixXd z = centered;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (stddev(j) > 0.0)
      z.col(j) /= stddev(j);
    else
      z.col(j).setZero();
  }

  std::map<std::string, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[labels[static_cast<std::size_t>(i)]].push_back(i);

  const Eigen::RowVectorXd global = z.colwise().mean();
  Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [label, rows] : by_class) {
    Eigen::RowVectorXd class_mean = Eigen::RowVectorXd::Zero(p);
    for (Eigen::Index i : rows) class_mean += z.row(i);
    class_mean /= static_cast<double>(rows.size());
    for (Eigen::Index i : rows) {
      const Eigen::VectorXd d = (z.row(i) - class_mean).transpose();
      sw += d * d.transpose();
    }
    const Eigen::VectorXd offset = (class_mean - global).transpose();
    sb += static_cast<double>(rows.size()) * offset * offset.transpose();
  }
  sw.diagonal().array() += ridge_scale * sw.trace() / static_cast<double>(p);

  const Eigen::MatrixXd m = sw.inverse() * sb;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return solver.eigenvalues()(a).real() > solver.eigenvalues()(b).real();
  });

  GeneralizedEig out;
  out.eigenvalues.resize(retained);
  out.eigenvectors.resize(p, retained);
  for (Eigen::Index k = 0; k < retained; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = std::max(solver.eigenvalues()(src).real(), 0.0);
    out.eigenvectors.col(k) = solver.eigenvectors().col(src).real().normalized();
  }
  return out;
}

}  // namespace

TEST_CASE("fit agrees with an explicit-inverse eigensolver") {
  rng::Xoshiro256pp gen(801);
  for (int trial = 0; trial < 20; ++trial) {
    const int classes = 3 + static_cast<int>(gen.uniform_u64(2));
    const Dataset data = gaussian_blobs(gen, 12, classes, 6, 5.0, 1.0);
    const lda::LdaModel model = lda::fit(data.x, data.labels);
    const Eigen::Index retained = classes - 1;
    REQUIRE(model.retained() == retained);

    const GeneralizedEig ref = lda_oracle(data.x, data.labels, 1e-6, retained);
    CAPTURE(trial);
    for (Eigen::Index k = 0; k < retained; ++k) {
      REQUIRE(model.eigenvalues(k) ==
              doctest::Approx(ref.eigenvalues(k)).epsilon(1e-8));
      // Same direction up to sign: the principal angle must vanish.
      const double cosine =
          std::abs(model.directions.col(k).dot(ref.eigenvectors.col(k)));
      REQUIRE(cosine == doctest::Approx(1.0).epsilon(1e-6));
    }
    // Eigenvalues come out non-increasing and the ratios sum to one.
    for (Eigen::Index k = 1; k < retained; ++k)
      REQUIRE(model.eigenvalues(k) <= model.eigenvalues(k - 1) + 1e-12);
    REQUIRE(model.explained_variance.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index k = 0; k < retained; ++k)
      REQUIRE(model.explained_variance(k) ==
              doctest::Approx(model.eigenvalues(k) / model.eigenvalues.sum())
                  .epsilon(1e-12));
  }
}

TEST_CASE("two classes always explain everything in one direction") {
  rng::Xoshiro256pp gen(802);
  const Dataset data = gaussian_blobs(gen, 15, 2, 5, 4.0, 1.0);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  REQUIRE(model.retained() == 1);
  CHECK(model.explained_variance(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.directions.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("directions are unit norm with the dominant component positive") {
  rng::Xoshiro256pp gen(803);
  const Dataset data = gaussian_blobs(gen, 10, 4, 7, 5.0, 1.2);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  for (Eigen::Index k = 0; k < model.retained(); ++k) {
    CHECK(model.directions.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
    Eigen::Index arg_max = 0;
    model.directions.col(k).cwiseAbs().maxCoeff(&arg_max);
    CHECK(model.directions(arg_max, k) > 0.0);
  }
}

TEST_CASE("per-column affine rescaling does not change the model") {
  rng::Xoshiro256pp gen(804);
  const Dataset data = gaussian_blobs(gen, 12, 3, 5, 4.0, 1.0);
  Eigen::MatrixXd scaled = data.x;
  const double gains[] = {3.0, 0.25, 10.0, 1.0, 0.025};
  const double offsets[] = {-7.0, 2.0, 100.0, 0.0, -0.5};
  for (Eigen::Index j = 0; j < 5; ++j)
    scaled.col(j) = gains[j] * scaled.col(j).array() + offsets[j];

  const lda::LdaModel a = lda::fit(data.x, data.labels);
  const lda::LdaModel b = lda::fit(scaled, data.labels);
  REQUIRE(a.retained() == b.retained());
  for (Eigen::Index k = 0; k < a.retained(); ++k) {
    CHECK(a.eigenvalues(k) == doctest::Approx(b.eigenvalues(k)).epsilon(1e-9));
    const double cosine = std::abs(a.directions.col(k).dot(b.directions.col(k)));
    CHECK(cosine == doctest::Approx(1.0).epsilon(1e-9));
  }
  // Projections of corresponding rows agree up to the per-direction sign.
  const Eigen::MatrixXd pa = lda::project(a, data.x);
  const Eigen::MatrixXd pb = lda::project(b, scaled);
  for (Eigen::Index k = 0; k < a.retained(); ++k) {
    const double sign =
        a.directions.col(k).dot(b.directions.col(k)) >= 0.0 ? 1.0 : -1.0;
    CHECK((pa.col(k) - sign * pb.col(k)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("row order does not change the fit") {
  rng::Xoshiro256pp gen(805);
  const Dataset data = gaussian_blobs(gen, 10, 3, 4, 4.0, 1.0);
  Dataset shuffled = data;
  // Fisher-Yates with the seeded generator.
  for (Eigen::Index i = data.x.rows() - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(
        gen.uniform_u64(static_cast<std::uint64_t>(i) + 1));
    shuffled.x.row(i).swap(shuffled.x.row(j));
    std::swap(shuffled.labels[static_cast<std::size_t>(i)],
              shuffled.labels[static_cast<std::size_t>(j)]);
  }
  const lda::LdaModel a = lda::fit(data.x, data.labels);
  const lda::LdaModel b = lda::fit(shuffled.x, shuffled.labels);
  REQUIRE(a.class_labels == b.class_labels);
  for (Eigen::Index k = 0; k < a.retained(); ++k)
    CHECK(a.eigenvalues(k) == doctest::Approx(b.eigenvalues(k)).epsilon(1e-9));
  CHECK((a.projected_centroids - b.projected_centroids).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("projected centroids are the class means of the projections") {
  rng::Xoshiro256pp gen(806);
  const Dataset data = gaussian_blobs(gen, 14, 3, 6, 5.0, 1.0);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  const Eigen::MatrixXd projected = lda::project(model, data.x);

  std::map<std::string, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < data.x.rows(); ++i)
    by_class[data.labels[static_cast<std::size_t>(i)]].push_back(i);

  Eigen::Index c = 0;
  for (const auto& [label, rows] : by_class) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(model.retained());
    for (Eigen::Index i : rows) mean += projected.row(i);
    mean /= static_cast<double>(rows.size());
    CHECK((mean - model.projected_centroids.row(c)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(label == model.class_labels[static_cast<std::size_t>(c)]);
    ++c;
  }

  // The raw column mean projects to the origin.
  const Eigen::MatrixXd origin =
      lda::project(model, model.standardize_mean.transpose());
  CHECK(origin.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("projection handles batches row by row") {
  rng::Xoshiro256pp gen(807);
  const Dataset data = gaussian_blobs(gen, 8, 3, 5, 4.0, 1.0);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  const Eigen::MatrixXd batch = lda::project(model, data.x);
  for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
    const Eigen::MatrixXd single = lda::project(model, data.x.row(i));
    CHECK((batch.row(i) - single.row(0)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(thrown_code([&] {
          lda::project(model, Eigen::MatrixXd::Zero(2, 3));
        }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("classification picks the nearest centroid, first label on ties") {
  lda::LdaModel model;
  model.class_labels = {"heavy", "light"};
  model.feature_names = {"f0"};
  model.standardize_mean = Eigen::VectorXd::Zero(1);
  model.standardize_std = Eigen::VectorXd::Ones(1);
  model.global_mean = Eigen::VectorXd::Zero(1);
  model.class_means = Eigen::MatrixXd::Zero(2, 1);
  model.directions = Eigen::MatrixXd::Ones(1, 1);
  model.eigenvalues = Eigen::VectorXd::Ones(1);
  model.explained_variance = Eigen::VectorXd::Ones(1);
  model.projected_centroids.resize(2, 1);
  model.projected_centroids << -1.0, 1.0;

  const lda::Classification mid = lda::classify(model, Eigen::VectorXd::Zero(1));
  CHECK(mid.label == "heavy");  // exact tie goes to the first sorted label
  CHECK(mid.distances(0) == doctest::Approx(1.0));
  CHECK(mid.distances(1) == doctest::Approx(1.0));

  Eigen::VectorXd right(1);
  right << 0.5;
  CHECK(lda::classify(model, right).label == "light");
  Eigen::VectorXd left(1);
  left << -0.5;
  CHECK(lda::classify(model, left).label == "heavy");

  CHECK(thrown_code([&] { lda::classify(model, Eigen::VectorXd::Zero(3)); }) ==
        ErrorCode::dimension_mismatch);
}

TEST_CASE("classification distances are centroid distances in LD space") {
  rng::Xoshiro256pp gen(808);
  const Dataset data = gaussian_blobs(gen, 10, 3, 5, 5.0, 1.0);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  for (Eigen::Index i = 0; i < 10; ++i) {
    const lda::Classification result =
        lda::classify(model, data.x.row(i).transpose());
    const Eigen::MatrixXd projected = lda::project(model, data.x.row(i));
    for (Eigen::Index c = 0; c < 3; ++c) {
      const double expected =
          (model.projected_centroids.row(c) - projected.row(0)).norm();
      REQUIRE(result.distances(c) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("feature contributions are sorted by magnitude") {
  rng::Xoshiro256pp gen(809);
  const Dataset data = gaussian_blobs(gen, 10, 3, 6, 4.0, 1.0);
  const lda::LdaModel model = lda::fit(data.x, data.labels);
  const auto contributions = lda::feature_contributions(model);
  REQUIRE(contributions.size() == static_cast<std::size_t>(model.retained()));
  for (Eigen::Index k = 0; k < model.retained(); ++k) {
    const auto& entries = contributions[static_cast<std::size_t>(k)];
    REQUIRE(entries.size() == static_cast<std::size_t>(model.dimension()));
    double previous = std::abs(entries[0].weight);
    double sum_sq = 0.0;
    for (const lda::Contribution& entry : entries) {
      CHECK(std::abs(entry.weight) <= previous + 1e-15);
      previous = std::abs(entry.weight);
      sum_sq += entry.weight * entry.weight;
    }
    // The entries are exactly the direction components, reordered.
    CHECK(sum_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(entries[0].weight) ==
          doctest::Approx(model.directions.col(k).cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("constant feature columns are neutralized") {
  rng::Xoshiro256pp gen(810);
  Dataset data = gaussian_blobs(gen, 10, 3, 4, 4.0, 1.0);
  Eigen::MatrixXd padded(data.x.rows(), 5);
  padded.leftCols(4) = data.x;
  padded.col(4).setConstant(7.25);

  const lda::LdaModel model = lda::fit(padded, data.labels);
  CHECK(model.standardize_std(4) == 0.0);
  CHECK(model.directions.allFinite());
  // The constant column cannot discriminate, so nothing loads on it.
  for (Eigen::Index k = 0; k < model.retained(); ++k)
    CHECK(std::abs(model.directions(4, k)) < 1e-9);

  const Eigen::MatrixXd z = model.standardize(padded);
  CHECK(z.col(4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fit rejects degenerate inputs") {
  Eigen::MatrixXd x(4, 2);
  x << 0, 0, 1, 1, 4, 4, 5, 5;

  SUBCASE("label count mismatch") {
    const std::vector<std::string> labels{"a", "a", "b"};
    CHECK(thrown_code([&] { lda::fit(x, labels); }) ==
          ErrorCode::invalid_argument);
  }
  SUBCASE("single class") {
    const std::vector<std::string> labels{"a", "a", "a", "a"};
    CHECK(thrown_code([&] { lda::fit(x, labels); }) ==
          ErrorCode::invalid_argument);
  }
  SUBCASE("class with one sample") {
    const std::vector<std::string> labels{"a", "a", "a", "b"};
    CHECK(thrown_code([&] { lda::fit(x, labels); }) ==
          ErrorCode::degenerate_class);
  }
  SUBCASE("identical class means collapse the rank") {
    Eigen::MatrixXd xx(4, 2);
    xx << 0, 0, 2, 2, 1, 1, 1, 1;
    const std::vector<std::string> labels{"a", "a", "b", "b"};
    CHECK(thrown_code([&] { lda::fit(xx, labels); }) ==
          ErrorCode::rank_collapse);
  }
}

TEST_CASE("confidence ellipse pins the chi-square scale") {
  // Four symmetric points with sample covariance (2/3) I.
  Eigen::MatrixXd points(4, 2);
  points << 1, 0, -1, 0, 0, 1, 0, -1;
  const lda::ConfidenceEllipse ellipse = lda::confidence_ellipse(points, 0.95);
  const double expected = std::sqrt((2.0 / 3.0) * (-2.0 * std::log(0.05)));
  CHECK(ellipse.major_axis == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ellipse.minor_axis == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ellipse.center.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(ellipse.coverage == 0.95);
}

TEST_CASE("confidence ellipse covers the stated mass") {
  rng::Xoshiro256pp gen(811);
  const int m = 20'000;
  Eigen::MatrixXd points(m, 2);
  const double angle = M_PI / 6.0;
  Eigen::Matrix2d rot;
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  const Eigen::Vector2d center(3.0, -2.0);
  for (int i = 0; i < m; ++i) {
    const Eigen::Vector2d g(5.0 * gen.gaussian(), 1.0 * gen.gaussian());
    points.row(i) = (rot * g + center).transpose();
  }

  const lda::ConfidenceEllipse ellipse = lda::confidence_ellipse(points, 0.95);
  const double scale = std::sqrt(-2.0 * std::log(0.05));
  CHECK(ellipse.major_axis == doctest::Approx(5.0 * scale).epsilon(0.03));
  CHECK(ellipse.minor_axis == doctest::Approx(1.0 * scale).epsilon(0.03));
  CHECK(ellipse.orientation == doctest::Approx(angle).epsilon(0.05));
  CHECK((ellipse.center - center).norm() < 0.1);

  // Count the points the ellipse actually contains.
  const Eigen::Vector2d major_dir(std::cos(ellipse.orientation),
                                  std::sin(ellipse.orientation));
  const Eigen::Vector2d minor_dir(-std::sin(ellipse.orientation),
                                  std::cos(ellipse.orientation));
  int inside = 0;
  for (int i = 0; i < m; ++i) {
    const Eigen::Vector2d d = points.row(i).transpose() - ellipse.center;
    const double u = d.dot(major_dir) / ellipse.major_axis;
    const double v = d.dot(minor_dir) / ellipse.minor_axis;
    if (u * u + v * v <= 1.0) ++inside;
  }
  const double fraction = static_cast<double>(inside) / m;
  CHECK(fraction > 0.94);
  CHECK(fraction < 0.96);
}

TEST_CASE("confidence ellipse is rotation equivariant") {
  rng::Xoshiro256pp gen(812);
  Eigen::MatrixXd points(500, 2);
  for (int i = 0; i < points.rows(); ++i)
    points.row(i) << 4.0 * gen.gaussian() + 1.0, 1.5 * gen.gaussian() - 2.0;
  const lda::ConfidenceEllipse base = lda::confidence_ellipse(points);

  const double phi = 0.4;
  Eigen::Matrix2d rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  const Eigen::MatrixXd rotated = points * rot.transpose();
  const lda::ConfidenceEllipse turned = lda::confidence_ellipse(rotated);

  CHECK(turned.major_axis == doctest::Approx(base.major_axis).epsilon(1e-9));
  CHECK(turned.minor_axis == doctest::Approx(base.minor_axis).epsilon(1e-9));
  CHECK((turned.center - rot * base.center).norm() < 1e-9);
  double expected = base.orientation + phi;
  if (expected > M_PI / 2) expected -= M_PI;
  CHECK(turned.orientation == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("confidence ellipse rejects degenerate point sets") {
  SUBCASE("wrong column count") {
    CHECK(thrown_code([&] {
            lda::confidence_ellipse(Eigen::MatrixXd::Zero(5, 3));
          }) == ErrorCode::invalid_argument);
  }
  SUBCASE("too few points") {
    CHECK(thrown_code([&] {
            lda::confidence_ellipse(Eigen::MatrixXd::Zero(2, 2));
          }) == ErrorCode::too_few_points);
  }
  SUBCASE("bad coverage") {
    Eigen::MatrixXd points(4, 2);
    points << 1, 0, -1, 0, 0, 1, 0, -1;
    CHECK(thrown_code([&] { lda::confidence_ellipse(points, 0.0); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([&] { lda::confidence_ellipse(points, 1.0); }) ==
          ErrorCode::invalid_argument);
  }
  SUBCASE("collinear points") {
    Eigen::MatrixXd line(10, 2);
    for (int i = 0; i < 10; ++i) line.row(i) << i, 2.0 * i;
    CHECK(thrown_code([&] { lda::confidence_ellipse(line); }) ==
          ErrorCode::degenerate_covariance);
  }
}

TEST_CASE("leave-one-out is perfect on separable clusters") {
  rng::Xoshiro256pp gen(813);
  const Dataset data = gaussian_blobs(gen, 10, 3, 4, 20.0, 0.1);
  const lda::LooReport report = lda::leave_one_out(data.x, data.labels);
  CHECK(report.accuracy == 1.0);
  REQUIRE(report.labels == std::vector<std::string>{"c0", "c1", "c2"});
  CHECK(report.confusion.diagonal().sum() == 30);
  CHECK(report.confusion.sum() == 30);
  CHECK(report.explained_variance.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("leave-one-out counts every sample once in the confusion matrix") {
  rng::Xoshiro256pp gen(814);
  // Heavy overlap so some misclassifications occur.
  const Dataset data = gaussian_blobs(gen, 12, 3, 3, 1.0, 2.0);
  const lda::LooReport report = lda::leave_one_out(data.x, data.labels);
  CHECK(report.confusion.sum() == 36);
  for (int c = 0; c < 3; ++c) CHECK(report.confusion.row(c).sum() == 12);
  const double recomputed =
      static_cast<double>(report.confusion.diagonal().sum()) / 36.0;
  CHECK(report.accuracy == doctest::Approx(recomputed).epsilon(1e-15));
  CHECK(report.accuracy < 1.0);  // overlap must produce at least one error
}
