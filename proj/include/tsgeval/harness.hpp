#ifndef TSGEVAL_HARNESS_HPP_
#define TSGEVAL_HARNESS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsgeval/classifier.hpp"
#include "tsgeval/dataset.hpp"
#include "tsgeval/error.hpp"
#include "tsgeval/metrics.hpp"
#include "tsgeval/perturb.hpp"
#include "tsgeval/random.hpp"
#include "tsgeval/text.hpp"

namespace tsgeval {

inline constexpr int kReportVersion = 1;

// Structured warning flags carried by points and series.
namespace warning {
inline constexpr std::string_view kSmallSampleFitd = "small_sample_fitd";
inline constexpr std::string_view kSingleClassTstrFallback = "single_class_tstr_fallback";
inline constexpr std::string_view kReplicateRaised = "replicate_raised";
inline constexpr std::string_view kGateFailed = "gate_failed";
inline constexpr std::string_view kSignViolationIts = "sign_violation_its";
inline constexpr std::string_view kSignViolationFitd = "sign_violation_fitd";
inline constexpr std::string_view kSignViolationTstr = "sign_violation_tstr";
inline constexpr std::string_view kSignViolationTrts = "sign_violation_trts";
}  // namespace warning

enum class ExperimentKind { kBase, kNoise, kModeDropSingle, kModeDropExtreme, kModeDropSuccessive, kModeCollapse };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kBase: return "base";
    case ExperimentKind::kNoise: return "noise";
    case ExperimentKind::kModeDropSingle: return "mode_drop_single";
    case ExperimentKind::kModeDropExtreme: return "mode_drop_extreme";
    case ExperimentKind::kModeDropSuccessive: return "mode_drop_successive";
    case ExperimentKind::kModeCollapse: return "mode_collapse";
  }
  return "unknown";
}

inline ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::kBase, ExperimentKind::kNoise, ExperimentKind::kModeDropSingle,
                 ExperimentKind::kModeDropExtreme, ExperimentKind::kModeDropSuccessive,
                 ExperimentKind::kModeCollapse}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown experiment '" + std::string(s) + "'");
}

// What produced a point: a noise level, a set of dropped or kept classes, or
// the collapse replicate count.
struct PointParameter {
  enum class Kind { kSigma, kDropped, kKept, kCollapse };
  Kind kind = Kind::kSigma;
  double sigma = 0.0;
  std::vector<ClassId> classes;
  int replicate = 1;

  static PointParameter noise(double s) { return {Kind::kSigma, s, {}, 1}; }
  static PointParameter dropped(std::vector<ClassId> c) { return {Kind::kDropped, 0.0, std::move(c), 1}; }
  static PointParameter kept(ClassId k) { return {Kind::kKept, 0.0, {k}, 1}; }
  static PointParameter collapse(int r) { return {Kind::kCollapse, 0.0, {}, r}; }

  // Compact text form used in the flat table, e.g. "sigma=0.5", "dropped=2;0".
  std::string label() const {
    switch (kind) {
      case Kind::kSigma: return "sigma=" + text::format_double(sigma);
      case Kind::kCollapse: return "collapse=" + std::to_string(replicate);
      case Kind::kDropped:
      case Kind::kKept: {
        std::string out = kind == Kind::kDropped ? "dropped=" : "kept=";
        for (std::size_t i = 0; i < classes.size(); ++i) {
          if (i) out += ';';
          out += std::to_string(classes[i]);
        }
        return out;
      }
    }
    return {};
  }

  bool operator==(const PointParameter&) const = default;
};

struct SeriesPoint {
  PointParameter parameter;
  ScoreReport report;
  std::vector<std::string> warnings;

  bool operator==(const SeriesPoint&) const = default;
};

struct PointSeeds {
  Seed perturbation = 0;
  Seed tstr = 0;
  bool operator==(const PointSeeds&) const = default;
};

struct SeedRecord {
  Seed master = 0;
  Seed train = 0;
  Seed base_tstr = 0;
  std::vector<PointSeeds> points;
  bool operator==(const SeedRecord&) const = default;
};

struct ExperimentSeries {
  ExperimentKind experiment = ExperimentKind::kBase;
  std::string dataset_name;
  ScoreReport base;
  std::vector<SeriesPoint> points;
  SeedRecord seeds;
  std::vector<std::string> warnings;

  bool operator==(const ExperimentSeries&) const = default;
};

struct HarnessConfig {
  TrainConfig train;
  Seed master_seed = 0;
  // Minimum backbone test accuracy for a dataset to count as classifiable.
  double accuracy_gate = 0.80;
  // Collapse replicate count used for ITS, FITD and TRTS.
  int collapse_replicate = 1;
};

// Keys: epochs, learning_rate, l2_penalty, feature_kind, seed, gate,
// replicate.
inline HarnessConfig parse_harness_config(std::istream& in) {
  HarnessConfig cfg;
  for (const auto& [key, value] : text::parse_key_values(in)) {
    auto as_int = [&] {
      auto v = text::to_int(value);
      if (!v) throw ParseError("config: '" + key + "' is not an integer");
      return *v;
    };
    auto as_real = [&] {
      auto v = text::to_double(value);
      if (!v) throw ParseError("config: '" + key + "' is not a number");
      return *v;
    };
    if (key == "epochs") {
      cfg.train.epochs = static_cast<int>(as_int());
    } else if (key == "learning_rate") {
      cfg.train.learning_rate = as_real();
    } else if (key == "l2_penalty") {
      cfg.train.l2_penalty = as_real();
    } else if (key == "feature_kind") {
      cfg.train.feature_kind = parse_feature_kind(value);
    } else if (key == "seed") {
      cfg.master_seed = static_cast<Seed>(as_int());
    } else if (key == "gate") {
      cfg.accuracy_gate = as_real();
    } else if (key == "replicate") {
      cfg.collapse_replicate = static_cast<int>(as_int());
    } else {
      throw FormatError("config: unknown key '" + key + "'");
    }
  }
  cfg.train.validate();
  if (cfg.collapse_replicate < 1) throw InputError("replicate must be at least 1");
  return cfg;
}

// Scores on the untouched test split plus everything needed to score
// perturbed copies of it against the same backbone.
struct BaseResult {
  ReferenceClassifier model;
  ScoreReport report;
  // Backbone accuracy on the test split; equal to report.trts.
  double accuracy = 0.0;
  bool gate_passed = true;
  MatrixXd test_features;
  Seed train_seed = 0;
  Seed tstr_seed = 0;
};

namespace harness_detail {

enum : std::uint64_t { kPurposeTrain = 1, kPurposeTstr = 2, kPurposePerturb = 3 };

inline std::uint64_t experiment_id(ExperimentKind k) { return static_cast<std::uint64_t>(k) + 1; }

inline void add_unique(std::vector<std::string>& flags, std::string_view f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.emplace_back(f);
}

}  // namespace harness_detail

// TSTR is evaluated on the real training split: the generated set stands in
// for the test split, so the training split is the held-out real data.
inline BaseResult compute_base(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                               const HarnessConfig& cfg) {
  if (train.n_classes() != test.n_classes() || train.series_length() != test.series_length()) {
    throw InputError("train and test splits disagree on class count or series length");
  }
  TrainConfig tc = cfg.train;
  const Seed train_seed = derive_seed(cfg.master_seed, {harness_detail::kPurposeTrain});
  const Seed tstr_seed = derive_seed(cfg.master_seed, {harness_detail::kPurposeTstr});
  tc.seed = train_seed;
  ReferenceClassifier model = train_reference(train, tc);

  ScoreReport r;
  const MatrixXd probs = model.predict_proba(test);
  MatrixXd feats = model.feature_map(test);
  r.its = inception_time_score(probs);
  r.fitd = fitd(feats, feats);
  const double acc = accuracy_from_proba(probs, test.labels());
  r.trts = acc;
  tc.seed = tstr_seed;
  r.tstr = tstr(test, train, tc);
  r.n_real = test.n_samples();
  r.n_gen = test.n_samples();
  r.n_classes = test.n_classes();
  return {std::move(model), r, acc, acc >= cfg.accuracy_gate, std::move(feats), train_seed, tstr_seed};
}

// Runs the experiments of one (train, test) pair against a single base
// evaluation.
class ExperimentRunner {
 public:
  ExperimentRunner(TimeSeriesDataset train, TimeSeriesDataset test, HarnessConfig cfg)
      : train_(std::move(train)), test_(std::move(test)), cfg_(std::move(cfg)),
        base_(compute_base(train_, test_, cfg_)) {}

  const BaseResult& base() const noexcept { return base_; }
  const HarnessConfig& config() const noexcept { return cfg_; }
  const TimeSeriesDataset& train() const noexcept { return train_; }
  const TimeSeriesDataset& test() const noexcept { return test_; }

  ExperimentSeries base_series() const { return start(ExperimentKind::kBase); }

  ExperimentSeries run_noise(const std::vector<double>& grid) const {
    if (grid.empty()) throw InputError("noise grid is empty");
    std::vector<double> sorted = grid;
    std::stable_sort(sorted.begin(), sorted.end());
    ExperimentSeries s = start(ExperimentKind::kNoise);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const PointSeeds seeds = point_seeds(ExperimentKind::kNoise, i);
      const auto gen = add_gaussian_noise(test_, sorted[i], seeds.perturbation);
      add_point(s, PointParameter::noise(sorted[i]), gen, gen, seeds);
    }
    return finish(std::move(s));
  }

  ExperimentSeries run_mode_drop_single() const {
    ExperimentSeries s = start(ExperimentKind::kModeDropSingle);
    const auto classes = present_classes(test_);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const PointSeeds seeds = point_seeds(ExperimentKind::kModeDropSingle, i);
      const auto gen = drop_class(test_, classes[i]);
      add_point(s, PointParameter::dropped({classes[i]}), gen, gen, seeds);
    }
    return finish(std::move(s));
  }

  ExperimentSeries run_mode_drop_extreme() const {
    ExperimentSeries s = start(ExperimentKind::kModeDropExtreme);
    const auto classes = present_classes(test_);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const PointSeeds seeds = point_seeds(ExperimentKind::kModeDropExtreme, i);
      const auto gen = keep_only_class(test_, classes[i]);
      add_point(s, PointParameter::kept(classes[i]), gen, gen, seeds);
    }
    return finish(std::move(s));
  }

  // Descending class index, leaving the lowest present class.
  std::vector<ClassId> default_drop_order() const {
    auto classes = present_classes(test_);
    std::vector<ClassId> order(classes.rbegin(), classes.rend());
    if (!order.empty()) order.pop_back();
    return order;
  }

  ExperimentSeries run_mode_drop_successive(std::optional<std::vector<ClassId>> order = std::nullopt) const {
    const auto drop = order ? *order : default_drop_order();
    ExperimentSeries s = start(ExperimentKind::kModeDropSuccessive);
    const auto sets = successive_drop(test_, drop);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const PointSeeds seeds = point_seeds(ExperimentKind::kModeDropSuccessive, i);
      std::vector<ClassId> removed(drop.begin(), drop.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      add_point(s, PointParameter::dropped(std::move(removed)), sets[i], sets[i], seeds);
    }
    return finish(std::move(s));
  }

  // One averaged sample per class (times the configured replicate) for ITS,
  // FITD and TRTS; TSTR trains on at least two copies per class.
  ExperimentSeries run_mode_collapse() const {
    ExperimentSeries s = start(ExperimentKind::kModeCollapse);
    const int replicate = cfg_.collapse_replicate;
    const PointSeeds seeds = point_seeds(ExperimentKind::kModeCollapse, 0);
    const auto gen = collapse_all(test_, replicate);
    if (replicate < 2) {
      const auto tstr_set = collapse_all(test_, 2);
      add_point(s, PointParameter::collapse(replicate), gen, tstr_set, seeds);
      harness_detail::add_unique(s.points.back().warnings, warning::kReplicateRaised);
    } else {
      add_point(s, PointParameter::collapse(replicate), gen, gen, seeds);
    }
    return finish(std::move(s));
  }

 private:
  PointSeeds point_seeds(ExperimentKind k, std::size_t index) const {
    const auto id = harness_detail::experiment_id(k);
    return {derive_seed(cfg_.master_seed, {id, index, harness_detail::kPurposePerturb}),
            derive_seed(cfg_.master_seed, {id, index, harness_detail::kPurposeTstr})};
  }

  ExperimentSeries start(ExperimentKind k) const {
    ExperimentSeries s;
    s.experiment = k;
    s.dataset_name = test_.name();
    s.base = base_.report;
    s.seeds.master = cfg_.master_seed;
    s.seeds.train = base_.train_seed;
    s.seeds.base_tstr = base_.tstr_seed;
    if (!base_.gate_passed) harness_detail::add_unique(s.warnings, warning::kGateFailed);
    return s;
  }

  // Sign expectations: rel_its, rel_tstr, rel_trts >= 0 and rel_fitd <= 0.
  static ExperimentSeries finish(ExperimentSeries s) {
    constexpr double tol = 1e-12;
    for (auto& p : s.points) {
      const auto& r = p.report;
      if (r.rel_its && *r.rel_its < -tol) harness_detail::add_unique(p.warnings, warning::kSignViolationIts);
      if (r.rel_fitd && *r.rel_fitd > tol) harness_detail::add_unique(p.warnings, warning::kSignViolationFitd);
      if (r.rel_tstr && *r.rel_tstr < -tol) harness_detail::add_unique(p.warnings, warning::kSignViolationTstr);
      if (r.rel_trts && *r.rel_trts < -tol) harness_detail::add_unique(p.warnings, warning::kSignViolationTrts);
    }
    return s;
  }

  void add_point(ExperimentSeries& s, PointParameter param, const TimeSeriesDataset& gen,
                 const TimeSeriesDataset& tstr_train, const PointSeeds& seeds) const {
    SeriesPoint p;
    p.parameter = std::move(param);
    ScoreReport r;
    const MatrixXd probs = base_.model.predict_proba(gen);
    r.its = inception_time_score(probs);
    const FitdResult f = fitd_detailed(base_.test_features, base_.model.feature_map(gen));
    r.fitd = f.value;
    if (f.small_sample) harness_detail::add_unique(p.warnings, warning::kSmallSampleFitd);
    r.trts = accuracy_from_proba(probs, gen.labels());

    const auto present = present_classes(tstr_train);
    if (present.size() == 1) {
      // A one-class trainer predicts its only class everywhere.
      const auto hist = class_histogram(train_);
      r.tstr = static_cast<double>(hist[static_cast<std::size_t>(present.front())]) /
               static_cast<double>(train_.n_samples());
      harness_detail::add_unique(p.warnings, warning::kSingleClassTstrFallback);
    } else {
      TrainConfig tc = cfg_.train;
      tc.seed = seeds.tstr;
      r.tstr = tstr(tstr_train, train_, tc);
    }
    r.n_real = test_.n_samples();
    r.n_gen = gen.n_samples();
    r.n_classes = gen.n_classes();
    p.report = rel_score(base_.report, r);
    s.points.push_back(std::move(p));
    s.seeds.points.push_back(seeds);
  }

  TimeSeriesDataset train_;
  TimeSeriesDataset test_;
  HarnessConfig cfg_;
  BaseResult base_;
};

inline ExperimentSeries run_noise_experiment(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                                             const std::vector<double>& grid, const HarnessConfig& cfg) {
  return ExperimentRunner(train, test, cfg).run_noise(grid);
}

inline ExperimentSeries run_mode_drop_single(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                                             const HarnessConfig& cfg) {
  return ExperimentRunner(train, test, cfg).run_mode_drop_single();
}

inline ExperimentSeries run_mode_drop_extreme(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                                              const HarnessConfig& cfg) {
  return ExperimentRunner(train, test, cfg).run_mode_drop_extreme();
}

inline ExperimentSeries run_mode_drop_successive(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                                                 std::optional<std::vector<ClassId>> order,
                                                 const HarnessConfig& cfg) {
  return ExperimentRunner(train, test, cfg).run_mode_drop_successive(std::move(order));
}

inline ExperimentSeries run_mode_collapse(const TimeSeriesDataset& train, const TimeSeriesDataset& test,
                                          const HarnessConfig& cfg) {
  return ExperimentRunner(train, test, cfg).run_mode_collapse();
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace harness_detail {

inline nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::optional<double> optional_value(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

inline std::string_view to_string(PointParameter::Kind k) {
  switch (k) {
    case PointParameter::Kind::kSigma: return "sigma";
    case PointParameter::Kind::kDropped: return "dropped";
    case PointParameter::Kind::kKept: return "kept";
    case PointParameter::Kind::kCollapse: return "collapse";
  }
  return "unknown";
}

inline PointParameter::Kind parse_parameter_kind(std::string_view s) {
  for (auto k : {PointParameter::Kind::kSigma, PointParameter::Kind::kDropped, PointParameter::Kind::kKept,
                 PointParameter::Kind::kCollapse}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown parameter kind '" + std::string(s) + "'");
}

}  // namespace harness_detail

inline nlohmann::json to_json(const ScoreReport& r) {
  using harness_detail::optional_json;
  return {{"its", r.its},
          {"fitd", r.fitd},
          {"tstr", optional_json(r.tstr)},
          {"trts", optional_json(r.trts)},
          {"rel_its", optional_json(r.rel_its)},
          {"rel_fitd", optional_json(r.rel_fitd)},
          {"rel_tstr", optional_json(r.rel_tstr)},
          {"rel_trts", optional_json(r.rel_trts)},
          {"n_real", r.n_real},
          {"n_gen", r.n_gen},
          {"n_classes", r.n_classes}};
}

inline ScoreReport score_report_from_json(const nlohmann::json& j) {
  using harness_detail::optional_value;
  ScoreReport r;
  r.its = j.at("its").get<double>();
  r.fitd = j.at("fitd").get<double>();
  r.tstr = optional_value(j, "tstr");
  r.trts = optional_value(j, "trts");
  r.rel_its = optional_value(j, "rel_its");
  r.rel_fitd = optional_value(j, "rel_fitd");
  r.rel_tstr = optional_value(j, "rel_tstr");
  r.rel_trts = optional_value(j, "rel_trts");
  r.n_real = j.at("n_real").get<std::size_t>();
  r.n_gen = j.at("n_gen").get<std::size_t>();
  r.n_classes = j.at("n_classes").get<int>();
  return r;
}

inline nlohmann::json to_json(const PointParameter& p) {
  nlohmann::json j = {{"kind", harness_detail::to_string(p.kind)}, {"label", p.label()}};
  switch (p.kind) {
    case PointParameter::Kind::kSigma: j["sigma"] = p.sigma; break;
    case PointParameter::Kind::kDropped:
    case PointParameter::Kind::kKept: j["classes"] = p.classes; break;
    case PointParameter::Kind::kCollapse: j["replicate"] = p.replicate; break;
  }
  return j;
}

inline PointParameter point_parameter_from_json(const nlohmann::json& j) {
  PointParameter p;
  p.kind = harness_detail::parse_parameter_kind(j.at("kind").get<std::string>());
  switch (p.kind) {
    case PointParameter::Kind::kSigma: p.sigma = j.at("sigma").get<double>(); break;
    case PointParameter::Kind::kDropped:
    case PointParameter::Kind::kKept: p.classes = j.at("classes").get<std::vector<ClassId>>(); break;
    case PointParameter::Kind::kCollapse: p.replicate = j.at("replicate").get<int>(); break;
  }
  return p;
}

// Top-level keys: version, experiment, dataset_name, base, points, seeds,
// warnings.
inline nlohmann::json to_json(const ExperimentSeries& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : s.points) {
    points.push_back({{"parameter", to_json(p.parameter)}, {"report", to_json(p.report)}, {"warnings", p.warnings}});
  }
  nlohmann::json point_seeds = nlohmann::json::array();
  for (const auto& ps : s.seeds.points) {
    point_seeds.push_back({{"perturbation", ps.perturbation}, {"tstr", ps.tstr}});
  }
  return {{"version", kReportVersion},
          {"experiment", to_string(s.experiment)},
          {"dataset_name", s.dataset_name},
          {"base", to_json(s.base)},
          {"points", std::move(points)},
          {"seeds",
           {{"master", s.seeds.master},
            {"train", s.seeds.train},
            {"base_tstr", s.seeds.base_tstr},
            {"points", std::move(point_seeds)}}},
          {"warnings", s.warnings}};
}

inline ExperimentSeries series_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kReportVersion) {
      throw FormatError("unsupported report version " + j.at("version").dump());
    }
    ExperimentSeries s;
    s.experiment = parse_experiment_kind(j.at("experiment").get<std::string>());
    s.dataset_name = j.at("dataset_name").get<std::string>();
    s.base = score_report_from_json(j.at("base"));
    for (const auto& p : j.at("points")) {
      s.points.push_back({point_parameter_from_json(p.at("parameter")), score_report_from_json(p.at("report")),
                          p.at("warnings").get<std::vector<std::string>>()});
    }
    const auto& seeds = j.at("seeds");
    s.seeds.master = seeds.at("master").get<Seed>();
    s.seeds.train = seeds.at("train").get<Seed>();
    s.seeds.base_tstr = seeds.at("base_tstr").get<Seed>();
    for (const auto& ps : seeds.at("points")) {
      s.seeds.points.push_back({ps.at("perturbation").get<Seed>(), ps.at("tstr").get<Seed>()});
    }
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed report: ") + e.what());
  }
}

inline std::string serialize_report(const ExperimentSeries& s) { return to_json(s).dump(2) + "\n"; }

inline ExperimentSeries parse_report(std::string_view doc) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report is not valid JSON: ") + e.what());
  }
  return series_from_json(j);
}

inline constexpr std::string_view kFlatTableHeader =
    "parameter,its,fitd,tstr,trts,rel_its,rel_fitd,rel_tstr,rel_trts,warnings";

// One row per point; absent values are empty cells, warnings are
// ';'-separated.
inline void write_flat_table(std::ostream& out, const ExperimentSeries& s) {
  auto cell = [](const std::optional<double>& v) { return v ? text::format_double(*v) : std::string(); };
  out << kFlatTableHeader << '\n';
  for (const auto& p : s.points) {
    const auto& r = p.report;
    std::string flags;
    for (std::size_t i = 0; i < p.warnings.size(); ++i) {
      if (i) flags += ';';
      flags += p.warnings[i];
    }
    out << p.parameter.label() << ',' << text::format_double(r.its) << ',' << text::format_double(r.fitd) << ','
        << cell(r.tstr) << ',' << cell(r.trts) << ',' << cell(r.rel_its) << ',' << cell(r.rel_fitd) << ','
        << cell(r.rel_tstr) << ',' << cell(r.rel_trts) << ',' << flags << '\n';
  }
}

inline std::string serialize_flat_table(const ExperimentSeries& s) {
  std::ostringstream out;
  write_flat_table(out, s);
  return out.str();
}

}  // namespace tsgeval

#endif  // TSGEVAL_HARNESS_HPP_
