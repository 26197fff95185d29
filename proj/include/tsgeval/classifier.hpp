#ifndef TSGEVAL_CLASSIFIER_HPP_
#define TSGEVAL_CLASSIFIER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsgeval/dataset.hpp"
#include "tsgeval/error.hpp"
#include "tsgeval/linalg.hpp"
#include "tsgeval/random.hpp"
#include "tsgeval/text.hpp"

namespace tsgeval {

// Probability floor applied to every predicted class probability.
inline constexpr double kProbabilityFloor = 1e-12;

enum class FeatureKind { kRawSeries, kSummaryStats };

inline std::string_view to_string(FeatureKind k) {
  return k == FeatureKind::kRawSeries ? "raw_series" : "summary_stats";
}

inline FeatureKind parse_feature_kind(std::string_view s) {
  if (s == "raw_series") return FeatureKind::kRawSeries;
  if (s == "summary_stats") return FeatureKind::kSummaryStats;
  throw InputError("unknown feature kind '" + std::string(s) + "'");
}

struct TrainConfig {
  int epochs = 2000;
  double learning_rate = 0.3;
  double l2_penalty = 1e-4;
  Seed seed = 0;
  FeatureKind feature_kind = FeatureKind::kSummaryStats;

  void validate() const {
    if (epochs < 1) throw InputError("epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw InputError("learning_rate must be positive");
    if (!(l2_penalty >= 0.0)) throw InputError("l2_penalty must be non-negative");
  }
};

inline constexpr std::size_t kSummaryStatsDim = 8;

// mean, std, min, max, first, last, mean |x[t+1] - x[t]|, zero crossings of
// the mean-centred series.
inline std::array<double, kSummaryStatsDim> summary_stats(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  double abs_diff = 0.0;
  double crossings = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    abs_diff += std::abs(x[t] - x[t - 1]);
    if ((x[t - 1] - mean < 0.0) != (x[t] - mean < 0.0)) crossings += 1.0;
  }
  if (x.size() > 1) abs_diff /= static_cast<double>(x.size() - 1);
  return {mean, std::sqrt(var / n), *lo, *hi, x.front(), x.back(), abs_diff, crossings};
}

// Unscaled representation of one series.
inline VectorXd represent(std::span<const double> x, FeatureKind kind) {
  if (kind == FeatureKind::kSummaryStats) {
    const auto s = summary_stats(x);
    return Eigen::Map<const VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  }
  VectorXd v = Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  z_normalize_in_place({v.data(), static_cast<std::size_t>(v.size())});
  return v;
}

// Interface every score consumes: conditional class probabilities and the
// pre-logit feature vector for each sample of a dataset.
class ClassifierModel {
 public:
  virtual ~ClassifierModel() = default;
  virtual int n_classes() const = 0;
  virtual std::size_t feature_dim() const = 0;
  // n x n_classes, rows sum to 1, entries >= kProbabilityFloor.
  virtual MatrixXd predict_proba(const TimeSeriesDataset& d) const = 0;
  // n x feature_dim.
  virtual MatrixXd feature_map(const TimeSeriesDataset& d) const = 0;
};

namespace classifier_detail {

inline void floor_and_renormalize(Eigen::Ref<VectorXd> p) {
  p = p.cwiseMax(kProbabilityFloor);
  p /= p.sum();
}

inline VectorXd softmax(const VectorXd& logits) {
  VectorXd p = (logits.array() - logits.maxCoeff()).exp();
  return p / p.sum();
}

}  // namespace classifier_detail

// Parameters of a multinomial logistic regression: logits = W z + b.
struct SoftmaxParams {
  MatrixXd weights;  // n_classes x feature_dim
  VectorXd bias;     // n_classes

  friend bool operator==(const SoftmaxParams& a, const SoftmaxParams& b) {
    return a.weights.rows() == b.weights.rows() && a.weights.cols() == b.weights.cols() &&
           a.weights == b.weights && a.bias == b.bias;
  }
};

// Mean cross-entropy over rows of `features` plus (l2 / 2) * |W|^2.
inline double softmax_loss(const SoftmaxParams& p, const MatrixXd& features,
                           const std::vector<ClassId>& labels, double l2) {
  const MatrixXd logits = (features * p.weights.transpose()).rowwise() + p.bias.transpose();
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    const double lse = m + std::log((logits.row(i).array() - m).exp().sum());
    total += lse - logits(i, labels[static_cast<std::size_t>(i)]);
  }
  return total / static_cast<double>(logits.rows()) + 0.5 * l2 * p.weights.squaredNorm();
}

inline SoftmaxParams softmax_loss_gradient(const SoftmaxParams& p, const MatrixXd& features,
                                           const std::vector<ClassId>& labels, double l2) {
  MatrixXd residual = (features * p.weights.transpose()).rowwise() + p.bias.transpose();
  for (Eigen::Index i = 0; i < residual.rows(); ++i) {
    VectorXd row = classifier_detail::softmax(residual.row(i).transpose());
    row(labels[static_cast<std::size_t>(i)]) -= 1.0;
    residual.row(i) = row.transpose();
  }
  const double inv_n = 1.0 / static_cast<double>(features.rows());
  return {residual.transpose() * features * inv_n + l2 * p.weights,
          residual.colwise().sum().transpose() * inv_n};
}

// Multinomial logistic regression over a fixed series representation. The
// representation is centred and scaled with training-set statistics; that
// scaled vector is the model's feature map.
class ReferenceClassifier final : public ClassifierModel {
 public:
  ReferenceClassifier(int n_classes, std::size_t series_length, FeatureKind kind, VectorXd center,
                      VectorXd scale, SoftmaxParams params)
      : n_classes_(n_classes),
        series_length_(series_length),
        kind_(kind),
        center_(std::move(center)),
        scale_(std::move(scale)),
        params_(std::move(params)) {}

  // All-zero weights: predicts the uniform distribution everywhere.
  static ReferenceClassifier zeros(int n_classes, std::size_t series_length, FeatureKind kind) {
    const auto dim = static_cast<Eigen::Index>(kind == FeatureKind::kSummaryStats ? kSummaryStatsDim
                                                                                  : series_length);
    return {n_classes, series_length, kind, VectorXd::Zero(dim), VectorXd::Ones(dim),
            {MatrixXd::Zero(n_classes, dim), VectorXd::Zero(n_classes)}};
  }

  int n_classes() const override { return n_classes_; }
  std::size_t feature_dim() const override { return static_cast<std::size_t>(center_.size()); }
  std::size_t series_length() const noexcept { return series_length_; }
  FeatureKind feature_kind() const noexcept { return kind_; }
  const SoftmaxParams& params() const noexcept { return params_; }
  const std::vector<double>& loss_history() const noexcept { return loss_history_; }

  VectorXd features(std::span<const double> x) const {
    if (x.size() != series_length_) {
      throw InputError("sample length " + std::to_string(x.size()) + " does not match model length " +
                       std::to_string(series_length_));
    }
    return ((represent(x, kind_) - center_).array() / scale_.array()).matrix();
  }

  VectorXd predict_proba(std::span<const double> x) const {
    VectorXd p = classifier_detail::softmax(params_.weights * features(x) + params_.bias);
    classifier_detail::floor_and_renormalize(p);
    return p;
  }

  MatrixXd predict_proba(const TimeSeriesDataset& d) const override {
    MatrixXd out(static_cast<Eigen::Index>(d.n_samples()), n_classes_);
    for (std::size_t i = 0; i < d.n_samples(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) = predict_proba(d.row(i)).transpose();
    }
    return out;
  }

  MatrixXd feature_map(const TimeSeriesDataset& d) const override {
    MatrixXd out(static_cast<Eigen::Index>(d.n_samples()), static_cast<Eigen::Index>(feature_dim()));
    for (std::size_t i = 0; i < d.n_samples(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) = features(d.row(i)).transpose();
    }
    return out;
  }

 private:
  friend ReferenceClassifier train_reference(const TimeSeriesDataset&, const TrainConfig&);

  int n_classes_;
  std::size_t series_length_;
  FeatureKind kind_;
  VectorXd center_;
  VectorXd scale_;
  SoftmaxParams params_;
  std::vector<double> loss_history_;
};

// Full-batch gradient descent on the regularized cross-entropy. Classes that
// are declared but absent from `train` are still modelled (their logits are
// pushed down).
inline ReferenceClassifier train_reference(const TimeSeriesDataset& train, const TrainConfig& cfg) {
  cfg.validate();
  const auto hist = class_histogram(train);
  int present = 0;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] == 0) continue;
    ++present;
    if (hist[k] < 2) {
      throw DegenerateTrainingError("class " + std::to_string(k) + " has " + std::to_string(hist[k]) +
                                    " training sample(s); at least 2 are required");
    }
  }
  if (present < 2) {
    throw DegenerateTrainingError("training set has " + std::to_string(present) +
                                  " class(es) present; at least 2 are required");
  }

  const auto n = static_cast<Eigen::Index>(train.n_samples());
  MatrixXd raw(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorXd r = represent(train.row(static_cast<std::size_t>(i)), cfg.feature_kind);
    if (i == 0) raw.resize(n, r.size());
    raw.row(i) = r.transpose();
  }
  const Eigen::Index dim = raw.cols();
  VectorXd center = raw.colwise().mean().transpose();
  VectorXd scale = ((raw.rowwise() - center.transpose()).array().square().colwise().mean().sqrt())
                       .matrix()
                       .transpose();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (!(scale(j) > 1e-12)) scale(j) = 1.0;
  }
  const MatrixXd z = ((raw.rowwise() - center.transpose()).array().rowwise() / scale.transpose().array())
                         .matrix();

  Rng rng(cfg.seed);
  std::normal_distribution<double> init(0.0, 0.01);
  SoftmaxParams params{MatrixXd(train.n_classes(), dim), VectorXd::Zero(train.n_classes())};
  for (Eigen::Index r = 0; r < params.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) params.weights(r, c) = init(rng);
  }

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(cfg.epochs) + 1);
  const auto& labels = train.labels();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double loss = softmax_loss(params, z, labels, cfg.l2_penalty);
    if (!std::isfinite(loss)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch) + " (loss " +
                                std::to_string(loss) + ")",
                            epoch);
    }
    history.push_back(loss);
    const SoftmaxParams grad = softmax_loss_gradient(params, z, labels, cfg.l2_penalty);
    params.weights -= cfg.learning_rate * grad.weights;
    params.bias -= cfg.learning_rate * grad.bias;
  }
  const double final_loss = softmax_loss(params, z, labels, cfg.l2_penalty);
  if (!std::isfinite(final_loss) || !params.weights.allFinite()) {
    throw DivergenceError("training diverged at epoch " + std::to_string(cfg.epochs), cfg.epochs);
  }
  history.push_back(final_loss);

  ReferenceClassifier model(train.n_classes(), train.series_length(), cfg.feature_kind,
                            std::move(center), std::move(scale), std::move(params));
  model.loss_history_ = std::move(history);
  return model;
}

// Index of the largest entry; ties go to the lowest index.
inline Eigen::Index argmax(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < row.size(); ++k) {
    if (row(k) > row(best)) best = k;
  }
  return best;
}

inline double accuracy_from_proba(const MatrixXd& probs, const std::vector<ClassId>& labels) {
  if (static_cast<std::size_t>(probs.rows()) != labels.size()) {
    throw InputError("probability rows do not match label count");
  }
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    if (argmax(probs.row(i)) == labels[static_cast<std::size_t>(i)]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

inline double accuracy(const ClassifierModel& m, const TimeSeriesDataset& d) {
  if (m.n_classes() != d.n_classes()) {
    throw InputError("model has " + std::to_string(m.n_classes()) + " classes, dataset declares " +
                     std::to_string(d.n_classes()));
  }
  return accuracy_from_proba(m.predict_proba(d), d.labels());
}

// Accuracy restricted to the samples of one class. NaN when the class is absent.
inline double class_accuracy(const ClassifierModel& m, const TimeSeriesDataset& d, ClassId k) {
  const MatrixXd probs = m.predict_proba(d);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    if (d.label(i) != k) continue;
    ++total;
    if (argmax(probs.row(static_cast<Eigen::Index>(i))) == k) ++hits;
  }
  return total == 0 ? std::nan("") : static_cast<double>(hits) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Externally computed outputs
// ---------------------------------------------------------------------------

// Comma-separated numeric rows. A first line with no numeric field is taken
// as a header and skipped.
inline MatrixXd parse_numeric_csv(std::istream& in, const std::string& what = "csv") {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, ',');
    if (rows.empty() && lineno == 1 &&
        std::none_of(fields.begin(), fields.end(), [](auto f) { return text::to_double(f).has_value(); })) {
      continue;
    }
    if (rows.empty()) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw FormatError(what + " line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                        " columns, found " + std::to_string(fields.size()));
    }
    std::vector<double> values;
    for (auto f : fields) {
      auto v = text::to_double(f);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(what + " line " + std::to_string(lineno) + ": not a finite number: '" +
                         std::string(f) + "'");
      }
      values.push_back(*v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EmptyInputError(what + ": no rows");
  MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return out;
}

inline MatrixXd read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_numeric_csv(in, path);
}

// Answers predict_proba / feature_map by row index from precomputed
// matrices, e.g. the softmax outputs and penultimate activations of a
// separately trained network. It cannot be retrained.
class ExternalModel final : public ClassifierModel {
 public:
  int n_classes() const override { return n_classes_; }
  std::size_t feature_dim() const override { return feats_ ? static_cast<std::size_t>(feats_->cols()) : 0; }
  std::size_t n_rows() const noexcept { return labels_.size(); }
  const std::vector<ClassId>& labels() const noexcept { return labels_; }
  bool has_probabilities() const noexcept { return probs_.has_value(); }
  bool has_features() const noexcept { return feats_.has_value(); }

  const MatrixXd& probabilities() const {
    if (!probs_) throw InputError("no probabilities were imported");
    return *probs_;
  }
  const MatrixXd& features() const {
    if (!feats_) throw InputError("no features were imported");
    return *feats_;
  }

  MatrixXd predict_proba(const TimeSeriesDataset& d) const override {
    check_rows(d);
    return probabilities();
  }
  MatrixXd feature_map(const TimeSeriesDataset& d) const override {
    check_rows(d);
    return features();
  }

  double accuracy() const { return accuracy_from_proba(probabilities(), labels_); }

 private:
  friend ExternalModel load_external(std::optional<MatrixXd>, std::optional<MatrixXd>, std::vector<ClassId>);

  void check_rows(const TimeSeriesDataset& d) const {
    if (d.n_samples() != labels_.size()) {
      throw InputError("external model holds " + std::to_string(labels_.size()) + " rows, dataset has " +
                       std::to_string(d.n_samples()));
    }
  }

  int n_classes_ = 0;
  std::optional<MatrixXd> probs_;
  std::optional<MatrixXd> feats_;
  std::vector<ClassId> labels_;
};

inline ExternalModel load_external(std::optional<MatrixXd> probs, std::optional<MatrixXd> feats,
                                   std::vector<ClassId> labels) {
  if (labels.empty()) throw InputError("external import needs at least one label");
  const auto n = static_cast<Eigen::Index>(labels.size());
  ClassId max_label = 0;
  for (ClassId y : labels) {
    if (y < 0) throw InputError("labels must be non-negative class indices");
    max_label = std::max(max_label, y);
  }
  ExternalModel m;
  if (probs) {
    if (probs->rows() != n) {
      throw InputError("probabilities have " + std::to_string(probs->rows()) + " rows, labels have " +
                       std::to_string(n));
    }
    if (probs->cols() <= max_label) throw InputError("a label exceeds the number of probability columns");
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = probs->row(i).sum();
      if (!probs->row(i).allFinite() || probs->row(i).minCoeff() < 0.0 || std::abs(s - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "probability row " << i << " sums to " << s << " (must be 1 within 1e-6, entries >= 0)";
        throw InputError(os.str());
      }
      VectorXd p = probs->row(i).transpose();
      classifier_detail::floor_and_renormalize(p);
      probs->row(i) = p.transpose();
    }
    m.n_classes_ = static_cast<int>(probs->cols());
  } else {
    m.n_classes_ = max_label + 1;
  }
  if (feats && feats->rows() != n) {
    throw InputError("features have " + std::to_string(feats->rows()) + " rows, labels have " +
                     std::to_string(n));
  }
  m.probs_ = std::move(probs);
  m.feats_ = std::move(feats);
  m.labels_ = std::move(labels);
  return m;
}

// Reads a single-column CSV of integer class indices.
inline std::vector<ClassId> labels_from_matrix(const MatrixXd& col) {
  if (col.cols() != 1) throw FormatError("labels file must have exactly one column");
  std::vector<ClassId> out;
  for (Eigen::Index i = 0; i < col.rows(); ++i) {
    const double v = col(i, 0);
    if (v != std::floor(v)) throw ParseError("label on row " + std::to_string(i) + " is not an integer");
    out.push_back(static_cast<ClassId>(v));
  }
  return out;
}

}  // namespace tsgeval

#endif  // TSGEVAL_CLASSIFIER_HPP_
