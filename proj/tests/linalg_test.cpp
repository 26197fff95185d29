#include "tsgeval/linalg.hpp"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace tsgeval {
namespace {

MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

GaussianSummary random_summary(std::mt19937_64& rng, Eigen::Index dim) {
  const MatrixXd a = random_matrix(rng, dim, dim + 2);
  return make_summary(random_matrix(rng, dim, 1).col(0), a * a.transpose() / static_cast<double>(dim), 10);
}

TEST(Summarize, TwoPoints) {
  MatrixXd p(2, 2);
  p << 0, 0, 2, 0;
  const auto s = summarize(p);
  EXPECT_DOUBLE_EQ(s.mean(0), 1.0);
  EXPECT_DOUBLE_EQ(s.mean(1), 0.0);
  MatrixXd expected(2, 2);
  expected << 2, 0, 0, 0;
  EXPECT_TRUE(s.cov.isApprox(expected));
  EXPECT_EQ(s.n_points, 2u);
}

TEST(Summarize, IdenticalPointsGiveZeroCovariance) {
  MatrixXd p = MatrixXd::Constant(5, 3, 1.25);
  const auto s = summarize(p);
  EXPECT_TRUE(s.cov.isZero(0.0));
}

TEST(Summarize, TooFewPoints) {
  EXPECT_THROW(summarize(MatrixXd::Ones(1, 3)), InputError);
  EXPECT_THROW(make_summary(VectorXd::Zero(2), MatrixXd::Identity(2, 2), 1), InputError);
}

TEST(Summarize, MonteCarloRecoversKnownGaussian) {
  // x = mu + L z with L L^T = [[2, 0.6], [0.6, 1]].
  std::mt19937_64 rng(20240101);
  std::normal_distribution<double> n(0.0, 1.0);
  const double l11 = std::sqrt(2.0), l21 = 0.6 / l11, l22 = std::sqrt(1.0 - l21 * l21);
  MatrixXd p(10000, 2);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double z1 = n(rng), z2 = n(rng);
    p(i, 0) = 3.0 + l11 * z1;
    p(i, 1) = -1.0 + l21 * z1 + l22 * z2;
  }
  const auto s = summarize(p);
  EXPECT_NEAR(s.mean(0), 3.0, 0.05 * 3.0);
  EXPECT_NEAR(s.mean(1), -1.0, 0.05 * 1.0);
  EXPECT_NEAR(s.cov(0, 0), 2.0, 0.05 * 2.0);
  EXPECT_NEAR(s.cov(1, 1), 1.0, 0.05 * 1.0);
  EXPECT_NEAR(s.cov(0, 1), 0.6, 0.05 * 0.6);
  EXPECT_EQ(s.cov(0, 1), s.cov(1, 0));
}

TEST(PsdSqrt, IdentityAndDiagonal) {
  EXPECT_TRUE(psd_sqrt(MatrixXd::Identity(4, 4)).isApprox(MatrixXd::Identity(4, 4)));
  MatrixXd d = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  MatrixXd expected = Eigen::Vector2d(2.0, 3.0).asDiagonal();
  EXPECT_LE((psd_sqrt(d) - expected).norm(), 1e-14);
}

TEST(PsdSqrt, ReconstructionUpToDim64) {
  std::mt19937_64 rng(5);
  for (Eigen::Index dim : {1, 2, 5, 16, 33, 64}) {
    const MatrixXd a = random_matrix(rng, dim, dim);
    const MatrixXd m = a * a.transpose();
    const MatrixXd r = psd_sqrt(m);
    EXPECT_LE((r * r - m).norm(), 1e-8 * m.norm()) << "dim " << dim;
    EXPECT_LE((r - r.transpose()).norm(), 1e-12 * r.norm());
  }
}

TEST(PsdSqrt, RankDeficientRoundoffIsClamped) {
  std::mt19937_64 rng(6);
  const MatrixXd a = random_matrix(rng, 8, 3);
  const MatrixXd m = a * a.transpose();
  const MatrixXd r = psd_sqrt(m);
  EXPECT_LE((r * r - m).norm(), 1e-8 * m.norm());
}

TEST(PsdSqrt, RejectsIndefiniteAndAsymmetric) {
  MatrixXd m(2, 2);
  m << 1, 0, 0, -1;
  EXPECT_THROW(psd_sqrt(m), NumericalError);
  MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(psd_sqrt(asym), InputError);
}

TEST(Frechet, IdenticalSummariesGiveZero) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const auto s = random_summary(rng, 6);
    EXPECT_LE(frechet_gaussian_distance(s, s), 1e-8);
  }
}

TEST(Frechet, OneDimensionalClosedForm) {
  const auto r = make_summary(VectorXd::Constant(1, 0.0), MatrixXd::Constant(1, 1, 1.0), 2);
  const auto g = make_summary(VectorXd::Constant(1, 3.0), MatrixXd::Constant(1, 1, 4.0), 2);
  EXPECT_NEAR(frechet_gaussian_distance(r, g), 10.0, 1e-12);
}

TEST(Frechet, DiagonalClosedFormOnRandomPairs) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> var(0.05, 4.0);
  std::normal_distribution<double> mu(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t dim = 1 + static_cast<std::size_t>(t % 16);
    std::vector<double> mr(dim), vr(dim), mg(dim), vg(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      mr[i] = mu(rng), mg[i] = mu(rng), vr[i] = var(rng), vg[i] = var(rng);
    }
    auto to_summary = [dim](const std::vector<double>& m, const std::vector<double>& v) {
      VectorXd mean = Eigen::Map<const VectorXd>(m.data(), static_cast<Eigen::Index>(dim));
      MatrixXd cov = Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(dim)).asDiagonal();
      return make_summary(mean, cov, 100);
    };
    EXPECT_NEAR(frechet_gaussian_distance(to_summary(mr, vr), to_summary(mg, vg)),
                oracle::frechet_diagonal(mr, vr, mg, vg), 1e-8);
  }
}

TEST(Frechet, SymmetricAndNonNegative) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_summary(rng, 1 + t % 12);
    const auto b = random_summary(rng, 1 + t % 12);
    const double ab = frechet_gaussian_distance(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_NEAR(ab, frechet_gaussian_distance(b, a), 1e-8);
  }
}

TEST(Frechet, TranslationProperties) {
  std::mt19937_64 rng(10);
  const auto a = random_summary(rng, 5);
  const auto b = random_summary(rng, 5);
  const VectorXd v = random_matrix(rng, 5, 1).col(0);
  auto shifted = [&v](GaussianSummary s) {
    s.mean += v;
    return s;
  };
  EXPECT_NEAR(frechet_gaussian_distance(shifted(a), shifted(b)), frechet_gaussian_distance(a, b), 1e-8);
  EXPECT_NEAR(frechet_gaussian_distance(a, shifted(a)), v.squaredNorm(), 1e-8);
}

TEST(Frechet, DimensionMismatch) {
  std::mt19937_64 rng(11);
  EXPECT_THROW(frechet_gaussian_distance(random_summary(rng, 2), random_summary(rng, 3)), InputError);
}

TEST(Regularize, OnlyShiftsSingularCovariances) {
  std::mt19937_64 rng(12);
  auto full = random_summary(rng, 4);
  const MatrixXd before = full.cov;
  EXPECT_FALSE(regularize(full));
  EXPECT_EQ(full.cov, before);

  MatrixXd p(3, 4);
  p << 1, 2, 3, 4, 2, 2, 1, 0, 0, 1, 1, 1;
  auto singular = summarize(p);
  const double eps = 1e-6 * singular.cov.diagonal().mean();
  const MatrixXd raw = singular.cov;
  EXPECT_TRUE(regularize(singular));
  EXPECT_LE((singular.cov - raw - eps * MatrixXd::Identity(4, 4)).norm(), 1e-15);
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(singular.cov);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-8 * eig.eigenvalues().maxCoeff());
}

}  // namespace
}  // namespace tsgeval
