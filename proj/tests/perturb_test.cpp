#include "tsgeval/perturb.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "tsgeval/classifier.hpp"

namespace tsgeval {
namespace {

TimeSeriesDataset small(Seed seed = 1) { return synth_generate(SynthSpec{3, 5, 8, 1.5, 0.1, seed}); }

TEST(Noise, ZeroSigmaIsIdentity) {
  const auto d = small();
  EXPECT_TRUE(add_gaussian_noise(d, 0.0, 99) == d);
}

TEST(Noise, EntrywiseStatistics) {
  const TimeSeriesDataset zeros(RowMatrix::Zero(400, 100), std::vector<ClassId>(400, 0), 1);
  const auto noisy = add_gaussian_noise(zeros, 2.0, 5);
  const auto& x = noisy.samples();
  const double mean = x.mean();
  const double var = (x.array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 4.0, 0.05 * 4.0);
}

TEST(Noise, DeterministicAndSeedSensitive) {
  const auto d = small();
  EXPECT_TRUE(add_gaussian_noise(d, 0.5, 3) == add_gaussian_noise(d, 0.5, 3));
  EXPECT_FALSE(add_gaussian_noise(d, 0.5, 3) == add_gaussian_noise(d, 0.5, 4));
  EXPECT_EQ(add_gaussian_noise(d, 0.5, 3).labels(), d.labels());
  EXPECT_THROW(add_gaussian_noise(d, -1.0, 3), InputError);
}

// Noise on raw values barely moves a dataset whose amplitude dwarfs sigma.
TEST(Noise, LargeAmplitudeIsRobust) {
  auto scaled = [](TimeSeriesDataset d) { return d.with_samples(RowMatrix(1000.0 * d.samples())); };
  const auto train = scaled(synth_generate(SynthSpec{3, 50, 64, 1.5, 0.1, 61}));
  const auto test = scaled(synth_generate(SynthSpec{3, 50, 64, 1.5, 0.1, 62}));
  const auto model = train_reference(train, TrainConfig{});
  const double base = accuracy(model, test);
  EXPECT_LT(base - accuracy(model, add_gaussian_noise(test, 5.0, 1)), 0.02);
}

TEST(SigmaGrid, EndpointsAndSpacing) {
  const auto g = sigma_grid(0.0, 5.0, 11);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 5.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], 0.5 * static_cast<double>(i), 1e-15);
  EXPECT_THROW(sigma_grid(1.0, 0.0, 3), InputError);
  EXPECT_THROW(sigma_grid(0.0, 1.0, 1), InputError);
}

TEST(DropClass, RemovesOnlyThatClass) {
  const auto d = small();
  const auto out = drop_class(d, 1);
  EXPECT_EQ(out.n_samples(), 10u);
  EXPECT_EQ(out.n_classes(), 3);
  for (ClassId y : out.labels()) EXPECT_NE(y, 1);
  EXPECT_THROW(drop_class(out, 1), InputError);
  EXPECT_THROW(drop_class(d, 3), InputError);
  EXPECT_THROW(drop_class(keep_only_class(d, 0), 0), InputError);
}

TEST(KeepOnlyClass, KeepsRowsInOrder) {
  const auto d = small();
  const auto out = keep_only_class(d, 2);
  EXPECT_EQ(out.n_samples(), 5u);
  EXPECT_EQ(present_classes(out), (std::vector<ClassId>{2}));
  EXPECT_EQ(out.samples().row(0), d.samples().row(10));
}

TEST(SuccessiveDrop, PrefixesShrink) {
  const auto d = small();
  const auto sets = successive_drop(d, {2, 0});
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].n_samples(), 10u);
  EXPECT_EQ(sets[1].n_samples(), 5u);
  EXPECT_TRUE(sets[1] == keep_only_class(d, 1));
  EXPECT_TRUE(successive_drop(d, {}).empty());
  EXPECT_THROW(successive_drop(d, {0, 0}), InputError);
  EXPECT_THROW(successive_drop(d, {0, 1, 2}), InputError);
}

TEST(Collapse, TwoRowsAverage) {
  RowMatrix x(2, 2);
  x << 1, 2, 3, 4;
  const auto out = collapse_class(TimeSeriesDataset(x, {0, 0}, 1), 0);
  ASSERT_EQ(out.n_samples(), 1u);
  EXPECT_DOUBLE_EQ(out.samples()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(out.samples()(0, 1), 3.0);
}

TEST(Collapse, PreservesClassMeanAndOthers) {
  const auto d = synth_generate(SynthSpec{3, 20, 16, 1.5, 0.3, 4});
  const auto out = collapse_class(d, 1, 3);
  EXPECT_EQ(out.n_samples(), 43u);
  EXPECT_EQ(class_histogram(out), (std::vector<std::size_t>{20, 3, 20}));
  const Eigen::RowVectorXd before = keep_only_class(d, 1).samples().colwise().mean();
  const Eigen::RowVectorXd after = keep_only_class(out, 1).samples().colwise().mean();
  EXPECT_LE((before - after).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(keep_only_class(out, 0) == keep_only_class(d, 0));
  EXPECT_THROW(collapse_class(d, 1, 0), InputError);
}

TEST(Collapse, AllClassesSizeAndIdempotence) {
  const auto d = small();
  const auto once = collapse_all(d);
  EXPECT_EQ(once.n_samples(), 3u);
  EXPECT_EQ(collapse_all(d, 2).n_samples(), 6u);
  EXPECT_TRUE(collapse_all(once) == once);
}

TEST(ApplyPerturbation, DispatchesAndValidates) {
  const auto d = small();
  PerturbationSpec spec;
  spec.sigma = 0.25;
  spec.seed = 9;
  EXPECT_TRUE(apply_perturbation(d, spec).front() == add_gaussian_noise(d, 0.25, 9));
  spec = {};
  spec.kind = PerturbationKind::kDropClass;
  EXPECT_THROW(apply_perturbation(d, spec), InputError);
  spec.class_id = 0;
  EXPECT_TRUE(apply_perturbation(d, spec).front() == drop_class(d, 0));
  spec.kind = PerturbationKind::kSuccessiveDrop;
  spec.drop_order = {2, 1};
  EXPECT_EQ(apply_perturbation(d, spec).size(), 2u);
  spec = {};
  spec.kind = PerturbationKind::kCollapse;
  spec.replicate = 2;
  EXPECT_EQ(apply_perturbation(d, spec).front().n_samples(), 6u);
  EXPECT_EQ(parse_perturbation_kind("keep_only_class"), PerturbationKind::kKeepOnlyClass);
  EXPECT_THROW(parse_perturbation_kind("warp"), InputError);
}

}  // namespace
}  // namespace tsgeval
