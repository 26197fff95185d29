#include "tsgeval/classifier.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace tsgeval {
namespace {

TimeSeriesDataset separable(Seed seed, double sep = 0.5) {
  return synth_generate(SynthSpec{3, 50, 64, sep, 0.1, seed});
}

TEST(TrainReference, SeparableSynthReachesGate) {
  // class_separation 0.5 is the hardest setting the backbone is expected to handle.
  const auto model = train_reference(separable(1), TrainConfig{});
  EXPECT_GE(accuracy(model, separable(2)), 0.95);
  EXPECT_GE(accuracy(model, separable(1)), 0.95);
}

TEST(TrainReference, DeterministicForSeed) {
  TrainConfig cfg;
  cfg.seed = 3;
  cfg.epochs = 200;
  const auto a = train_reference(separable(4), cfg);
  const auto b = train_reference(separable(4), cfg);
  EXPECT_TRUE(a.params() == b.params());
  EXPECT_EQ(a.loss_history(), b.loss_history());
}

TEST(TrainReference, SingleClassIsDegenerate) {
  RowMatrix x = RowMatrix::Random(6, 10);
  EXPECT_THROW(train_reference(TimeSeriesDataset(x, {1, 1, 1, 1, 1, 1}, 3), TrainConfig{}),
               DegenerateTrainingError);
  // A present class with a single sample is also rejected.
  EXPECT_THROW(train_reference(TimeSeriesDataset(x, {0, 0, 0, 1, 1, 2}, 3), TrainConfig{}),
               DegenerateTrainingError);
}

TEST(TrainReference, DivergenceNamesEpoch) {
  TrainConfig cfg;
  cfg.learning_rate = 1e308;
  cfg.epochs = 50;
  try {
    train_reference(separable(5), cfg);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch " + std::to_string(e.epoch())), std::string::npos);
    EXPECT_EQ(e.code(), ExitCode::kNumerical);
  }
}

TEST(TrainReference, InvalidConfig) {
  TrainConfig cfg;
  cfg.epochs = 0;
  EXPECT_THROW(train_reference(separable(5), cfg), InputError);
  cfg = TrainConfig{};
  cfg.learning_rate = 0.0;
  EXPECT_THROW(train_reference(separable(5), cfg), InputError);
}

TEST(TrainReference, LossIsMonotoneWithDefaults) {
  const auto model = train_reference(separable(6), TrainConfig{});
  const auto& h = model.loss_history();
  ASSERT_GT(h.size(), 2u);
  for (std::size_t i = 1; i < h.size(); ++i) ASSERT_LE(h[i], h[i - 1]) << "epoch " << i;
  EXPECT_LT(h.back(), 0.5 * h.front());
}

TEST(SoftmaxLoss, MatchesDefinitionAndFiniteDifferences) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  const std::size_t classes = 3, dim = 4, rows = 12;
  oracle::Rows x(rows, std::vector<double>(dim));
  std::vector<int> y(rows);
  MatrixXd features(rows, dim);
  for (std::size_t i = 0; i < rows; ++i) {
    y[i] = static_cast<int>(i % classes);
    for (std::size_t j = 0; j < dim; ++j) features(i, j) = x[i][j] = n(rng);
  }
  std::vector<double> theta(classes * dim + classes);
  for (double& t : theta) t = 0.5 * n(rng);
  SoftmaxParams p{MatrixXd(classes, dim), VectorXd(classes)};
  for (std::size_t k = 0; k < classes; ++k) {
    for (std::size_t j = 0; j < dim; ++j) p.weights(k, j) = theta[k * dim + j];
    p.bias(k) = theta[classes * dim + k];
  }
  const double l2 = 0.05;
  const std::vector<ClassId> labels(y.begin(), y.end());
  EXPECT_NEAR(softmax_loss(p, features, labels, l2), oracle::softmax_cross_entropy(theta, x, y, classes, l2), 1e-12);

  const SoftmaxParams grad = softmax_loss_gradient(p, features, labels, l2);
  auto f = [&](const std::vector<double>& t) { return oracle::softmax_cross_entropy(t, x, y, classes, l2); };
  for (std::size_t t = 0; t < theta.size(); ++t) {
    const double numeric = oracle::central_difference(f, theta, t, 1e-5);
    const double analytic = t < classes * dim ? grad.weights(t / dim, t % dim) : grad.bias(t - classes * dim);
    EXPECT_LE(std::abs(analytic - numeric), 1e-5 * std::max(1.0, std::abs(numeric))) << "coordinate " << t;
  }
}

TEST(PredictProba, NormalizedAndFloored) {
  const auto d = separable(7);
  const auto model = train_reference(d, TrainConfig{});
  const MatrixXd p = model.predict_proba(d);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-9);
    EXPECT_GE(p.row(i).minCoeff(), kProbabilityFloor * (1.0 - 1e-9));
    EXPECT_LE(p.row(i).maxCoeff(), 1.0);
  }
}

TEST(PredictProba, PrototypeOfClassZeroIsClassZero) {
  const SynthSpec spec{3, 50, 64, 0.5, 0.1, 8};
  const auto model = train_reference(synth_generate(spec), TrainConfig{});
  const auto proto = synth_prototype(spec, 0);
  EXPECT_EQ(argmax(model.predict_proba(std::span<const double>(proto)).transpose()), 0);
}

TEST(PredictProba, ZeroModelIsUniform) {
  const auto model = ReferenceClassifier::zeros(4, 16, FeatureKind::kSummaryStats);
  std::vector<double> x(16, 0.3);
  const VectorXd p = model.predict_proba(std::span<const double>(x));
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(p(k), 0.25, 1e-15);
}

TEST(PredictProba, LengthMismatch) {
  const auto model = ReferenceClassifier::zeros(2, 16, FeatureKind::kSummaryStats);
  std::vector<double> x(15, 0.0);
  EXPECT_THROW(model.predict_proba(std::span<const double>(x)), InputError);
  EXPECT_THROW(model.features(std::span<const double>(x)), InputError);
}

TEST(Accuracy, ZeroModelPicksLowestIndex) {
  const auto d = synth_generate(SynthSpec{4, 10, 16, 0.5, 0.1, 9});
  const auto model = ReferenceClassifier::zeros(4, 16, FeatureKind::kSummaryStats);
  EXPECT_DOUBLE_EQ(accuracy(model, d), 0.25);
}

TEST(FeatureMap, SummaryStatsShape) {
  const auto d = separable(10);
  const auto model = train_reference(d, TrainConfig{});
  EXPECT_EQ(model.feature_dim(), 8u);
  const MatrixXd f = model.feature_map(d);
  EXPECT_EQ(f.cols(), 8);
  EXPECT_TRUE(f.allFinite());
  EXPECT_EQ(model.features(d.row(3)), model.features(d.row(3)));
}

TEST(FeatureMap, RawSeriesShape) {
  TrainConfig cfg;
  cfg.feature_kind = FeatureKind::kRawSeries;
  cfg.learning_rate = 0.05;
  cfg.epochs = 300;
  const auto model = train_reference(separable(10), cfg);
  EXPECT_EQ(model.feature_dim(), 64u);
  EXPECT_GE(accuracy(model, separable(11)), 0.95);
}

TEST(SummaryStats, HandValues) {
  const std::vector<double> x{1.0, 3.0, 2.0, 0.0};
  const auto s = summary_stats(x);
  // mean 1.5, population variance (0.25 + 2.25 + 0.25 + 2.25) / 4 = 1.25
  EXPECT_DOUBLE_EQ(s[0], 1.5);
  EXPECT_DOUBLE_EQ(s[1], std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(s[2], 0.0);
  EXPECT_DOUBLE_EQ(s[3], 3.0);
  EXPECT_DOUBLE_EQ(s[4], 1.0);
  EXPECT_DOUBLE_EQ(s[5], 0.0);
  EXPECT_DOUBLE_EQ(s[6], (2.0 + 1.0 + 2.0) / 3.0);
  // centred: -0.5, 1.5, 0.5, -1.5 -> two sign changes
  EXPECT_DOUBLE_EQ(s[7], 2.0);
}

TEST(SummaryStats, AmplitudeScaleChangesStd) {
  std::vector<double> x{0.0, 1.0, 0.0, -1.0, 0.0, 1.0};
  std::vector<double> y = x;
  for (double& v : y) v *= 3.0;
  const auto a = summary_stats(x);
  const auto b = summary_stats(y);
  EXPECT_NEAR(b[1], 3.0 * a[1], 1e-14);
  EXPECT_NE(a[1], b[1]);
}

TEST(LoadExternal, AccuracyFromProbabilities) {
  MatrixXd probs(2, 2);
  probs << 0.9, 0.1, 0.2, 0.8;
  const auto m = load_external(probs, std::nullopt, {0, 1});
  EXPECT_DOUBLE_EQ(m.accuracy(), 1.0);
  EXPECT_EQ(m.n_classes(), 2);
  EXPECT_EQ(m.feature_dim(), 0u);
}

TEST(LoadExternal, RejectsUnnormalizedRows) {
  MatrixXd probs(2, 2);
  probs << 0.25, 0.25, 0.2, 0.8;
  EXPECT_THROW(load_external(probs, std::nullopt, {0, 1}), InputError);
}

TEST(LoadExternal, FeatureDimAndRowChecks) {
  const MatrixXd feats = MatrixXd::Random(5, 32);
  const auto m = load_external(std::nullopt, feats, {0, 1, 0, 1, 1});
  EXPECT_EQ(m.feature_dim(), 32u);
  EXPECT_THROW(load_external(std::nullopt, feats, {0, 1}), InputError);
  EXPECT_THROW(m.probabilities(), InputError);
  const TimeSeriesDataset wrong(RowMatrix::Zero(4, 3), {0, 1, 0, 1}, 2);
  EXPECT_THROW(m.feature_map(wrong), InputError);
}

TEST(NumericCsv, HeaderRaggedAndBadCells) {
  std::istringstream with_header("p0,p1\n0.5,0.5\n0.1,0.9\n");
  EXPECT_EQ(parse_numeric_csv(with_header).rows(), 2);
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(parse_numeric_csv(ragged), FormatError);
  std::istringstream bad("1,2\n3,x\n");
  EXPECT_THROW(parse_numeric_csv(bad), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(parse_numeric_csv(empty), EmptyInputError);
}

}  // namespace
}  // namespace tsgeval
