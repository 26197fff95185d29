#ifndef TSGEVAL_METRICS_HPP_
#define TSGEVAL_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "tsgeval/classifier.hpp"
#include "tsgeval/dataset.hpp"
#include "tsgeval/error.hpp"
#include "tsgeval/linalg.hpp"

namespace tsgeval {

// The four scores of one (real, generated) evaluation. Relative fields hold
// base - generated and are set only by rel_score().
struct ScoreReport {
  double its = 1.0;
  double fitd = 0.0;
  std::optional<double> tstr;
  std::optional<double> trts;
  std::optional<double> rel_its;
  std::optional<double> rel_fitd;
  std::optional<double> rel_tstr;
  std::optional<double> rel_trts;
  std::size_t n_real = 0;
  std::size_t n_gen = 0;
  int n_classes = 0;

  bool operator==(const ScoreReport&) const = default;
};

namespace metrics_detail {

// Natural-log entropy; zero probabilities contribute nothing.
inline double entropy(const Eigen::Ref<const Eigen::RowVectorXd>& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) > 0.0) h -= p(k) * std::log(std::max(p(k), kProbabilityFloor));
  }
  return h;
}

}  // namespace metrics_detail

// exp(H(mean row) - mean_i H(row_i)). Rows are conditional class
// distributions p(y|x_i); the marginal p(y) is their column mean.
inline double inception_time_score(const MatrixXd& probs) {
  if (probs.rows() < 1 || probs.cols() < 1) throw InputError("ITS needs a non-empty probability matrix");
  if (!probs.allFinite()) throw InputError("ITS: probability matrix has non-finite entries");
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    const double s = probs.row(i).sum();
    if (probs.row(i).minCoeff() < 0.0 || std::abs(s - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "ITS: row " << i << " is not a distribution (sum " << s << ")";
      throw InputError(os.str());
    }
  }
  const Eigen::RowVectorXd marginal = probs.colwise().mean();
  double conditional = 0.0;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) conditional += metrics_detail::entropy(probs.row(i));
  conditional /= static_cast<double>(probs.rows());
  return std::exp(metrics_detail::entropy(marginal) - conditional);
}

struct FitdResult {
  double value = 0.0;
  // A side had fewer points than feature dimensions + 1, so its covariance
  // estimate is rank deficient.
  bool small_sample = false;
  bool regularized = false;
};

namespace metrics_detail {

inline GaussianSummary summarize_any(const MatrixXd& points) {
  if (points.rows() >= 2) return summarize(points);
  // One point: zero spread around the point itself.
  return {points.row(0).transpose(), MatrixXd::Zero(points.cols(), points.cols()), 1};
}

}  // namespace metrics_detail

// Frechet distance between Gaussians fitted to two feature clouds (n x D).
inline FitdResult fitd_detailed(const MatrixXd& real_feats, const MatrixXd& gen_feats) {
  if (real_feats.cols() != gen_feats.cols()) {
    throw InputError("FITD: feature dimension mismatch (" + std::to_string(real_feats.cols()) + " vs " +
                     std::to_string(gen_feats.cols()) + ")");
  }
  if (real_feats.rows() < 1 || gen_feats.rows() < 1) throw InputError("FITD: empty feature matrix");
  FitdResult out;
  const auto dim = real_feats.cols();
  out.small_sample = real_feats.rows() <= dim || gen_feats.rows() <= dim;
  GaussianSummary r = metrics_detail::summarize_any(real_feats);
  GaussianSummary g = metrics_detail::summarize_any(gen_feats);
  const bool reg_r = regularize(r);
  const bool reg_g = regularize(g);
  out.regularized = reg_r || reg_g;
  out.value = frechet_gaussian_distance(r, g);
  return out;
}

inline double fitd(const MatrixXd& real_feats, const MatrixXd& gen_feats) {
  return fitd_detailed(real_feats, gen_feats).value;
}

// Train on real, test on synthetic.
inline double trts(const ClassifierModel& trained_on_real, const TimeSeriesDataset& synthetic) {
  return accuracy(trained_on_real, synthetic);
}

// Train on synthetic, test on real. Trains a fresh reference classifier with
// cfg.seed.
inline double tstr(const TimeSeriesDataset& synthetic_train, const TimeSeriesDataset& real_eval,
                   const TrainConfig& cfg) {
  if (synthetic_train.n_classes() != real_eval.n_classes() ||
      synthetic_train.series_length() != real_eval.series_length()) {
    throw InputError("TSTR: synthetic and real sets disagree on class count or series length");
  }
  const auto model = train_reference(synthetic_train, cfg);
  return accuracy(model, real_eval);
}

// Copy of `gen` with rel_* = base - gen for every score both reports carry.
inline ScoreReport rel_score(const ScoreReport& base, const ScoreReport& gen) {
  if (base.n_classes != gen.n_classes) {
    throw InputError("rel_score: class count mismatch (" + std::to_string(base.n_classes) + " vs " +
                     std::to_string(gen.n_classes) + ")");
  }
  auto diff = [](const std::optional<double>& a, const std::optional<double>& b) -> std::optional<double> {
    if (a && b) return *a - *b;
    return std::nullopt;
  };
  ScoreReport out = gen;
  out.rel_its = base.its - gen.its;
  out.rel_fitd = base.fitd - gen.fitd;
  out.rel_tstr = diff(base.tstr, gen.tstr);
  out.rel_trts = diff(base.trts, gen.trts);
  return out;
}

}  // namespace tsgeval

#endif  // TSGEVAL_METRICS_HPP_
