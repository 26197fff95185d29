#ifndef TSGEVAL_PERTURB_HPP_
#define TSGEVAL_PERTURB_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tsgeval/dataset.hpp"
#include "tsgeval/error.hpp"
#include "tsgeval/random.hpp"

namespace tsgeval {

// x_t + eta, eta ~ N(0, sigma^2) i.i.d. per entry. Applied to raw values.
inline TimeSeriesDataset add_gaussian_noise(const TimeSeriesDataset& d, double sigma, Seed seed) {
  if (!(sigma >= 0.0)) throw InputError("noise sigma must be non-negative");
  if (sigma == 0.0) return d;
  Rng rng(seed);
  std::normal_distribution<double> eta(0.0, 1.0);
  RowMatrix out = d.samples();
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] += sigma * eta(rng);
  return d.with_samples(std::move(out));
}

// n_points equally spaced values from lo to hi inclusive.
inline std::vector<double> sigma_grid(double lo, double hi, int n_points) {
  if (!(lo <= hi)) throw InputError("sigma grid needs lo <= hi");
  if (n_points < 2) throw InputError("sigma grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(n_points));
  const double step = (hi - lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

namespace perturb_detail {

inline void require_present(const TimeSeriesDataset& d, ClassId k) {
  if (k < 0 || k >= d.n_classes()) {
    throw InputError("class " + std::to_string(k) + " outside [0, " + std::to_string(d.n_classes()) + ")");
  }
  if (class_histogram(d)[static_cast<std::size_t>(k)] == 0) {
    throw InputError("class " + std::to_string(k) + " has no samples");
  }
}

template <typename Keep>
TimeSeriesDataset filter(const TimeSeriesDataset& d, Keep keep) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    if (keep(d.label(i))) idx.push_back(i);
  }
  return d.subset(idx);
}

}  // namespace perturb_detail

// Removes every class-k sample; the class stays declared.
inline TimeSeriesDataset drop_class(const TimeSeriesDataset& d, ClassId k) {
  perturb_detail::require_present(d, k);
  if (present_classes(d).size() < 2) {
    throw InputError("dropping class " + std::to_string(k) + " would empty the dataset");
  }
  return perturb_detail::filter(d, [k](ClassId y) { return y != k; });
}

inline TimeSeriesDataset keep_only_class(const TimeSeriesDataset& d, ClassId k) {
  perturb_detail::require_present(d, k);
  return perturb_detail::filter(d, [k](ClassId y) { return y == k; });
}

// Element j has classes order[0..j] removed.
inline std::vector<TimeSeriesDataset> successive_drop(const TimeSeriesDataset& d,
                                                      const std::vector<ClassId>& order) {
  std::vector<ClassId> seen;
  for (ClassId k : order) {
    perturb_detail::require_present(d, k);
    if (std::find(seen.begin(), seen.end(), k) != seen.end()) {
      throw InputError("class " + std::to_string(k) + " appears twice in the drop order");
    }
    seen.push_back(k);
  }
  if (!order.empty() && order.size() >= present_classes(d).size()) {
    throw InputError("drop order would remove every class");
  }
  std::vector<TimeSeriesDataset> out;
  out.reserve(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    const std::vector<ClassId> removed(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    out.push_back(perturb_detail::filter(d, [&](ClassId y) {
      return std::find(removed.begin(), removed.end(), y) == removed.end();
    }));
  }
  return out;
}

// Replaces the class-k samples with `replicate` copies of their per-timestep
// mean. The collapsed rows take the position of the first class-k row.
inline TimeSeriesDataset collapse_class(const TimeSeriesDataset& d, ClassId k, int replicate = 1) {
  perturb_detail::require_present(d, k);
  if (replicate < 1) throw InputError("replicate must be at least 1");
  const auto& x = d.samples();
  Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    if (d.label(i) != k) continue;
    mean += x.row(static_cast<Eigen::Index>(i));
    ++count;
  }
  mean /= static_cast<double>(count);

  const std::size_t n_out = d.n_samples() - count + static_cast<std::size_t>(replicate);
  RowMatrix out(static_cast<Eigen::Index>(n_out), x.cols());
  std::vector<ClassId> labels;
  labels.reserve(n_out);
  bool emitted = false;
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    if (d.label(i) == k) {
      if (emitted) continue;
      for (int r = 0; r < replicate; ++r) {
        out.row(static_cast<Eigen::Index>(labels.size())) = mean;
        labels.push_back(k);
      }
      emitted = true;
    } else {
      out.row(static_cast<Eigen::Index>(labels.size())) = x.row(static_cast<Eigen::Index>(i));
      labels.push_back(d.label(i));
    }
  }
  return {std::move(out), std::move(labels), d.n_classes(), d.name(), d.label_values()};
}

inline TimeSeriesDataset collapse_all(const TimeSeriesDataset& d, int replicate = 1) {
  TimeSeriesDataset out = d;
  for (ClassId k : present_classes(d)) out = collapse_class(out, k, replicate);
  return out;
}

enum class PerturbationKind { kNoise, kDropClass, kKeepOnlyClass, kSuccessiveDrop, kCollapse };

inline std::string_view to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::kNoise: return "noise";
    case PerturbationKind::kDropClass: return "drop_class";
    case PerturbationKind::kKeepOnlyClass: return "keep_only_class";
    case PerturbationKind::kSuccessiveDrop: return "successive_drop";
    case PerturbationKind::kCollapse: return "collapse";
  }
  return "unknown";
}

inline PerturbationKind parse_perturbation_kind(std::string_view s) {
  for (auto k : {PerturbationKind::kNoise, PerturbationKind::kDropClass, PerturbationKind::kKeepOnlyClass,
                 PerturbationKind::kSuccessiveDrop, PerturbationKind::kCollapse}) {
    if (to_string(k) == s) return k;
  }
  throw InputError("unknown perturbation kind '" + std::string(s) + "'");
}

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::kNoise;
  std::optional<double> sigma;
  // Drop/keep target; for collapse, absent means every class.
  std::optional<ClassId> class_id;
  std::vector<ClassId> drop_order;
  int replicate = 1;
  Seed seed = 0;

  void validate() const {
    switch (kind) {
      case PerturbationKind::kNoise:
        if (!sigma || !(*sigma >= 0.0)) throw InputError("noise perturbation needs sigma >= 0");
        break;
      case PerturbationKind::kDropClass:
      case PerturbationKind::kKeepOnlyClass:
        if (!class_id) throw InputError(std::string(to_string(kind)) + " needs a class id");
        break;
      case PerturbationKind::kSuccessiveDrop:
        break;
      case PerturbationKind::kCollapse:
        if (replicate < 1) throw InputError("replicate must be at least 1");
        break;
    }
  }
};

// Successive drops return one dataset per prefix; every other kind returns one.
inline std::vector<TimeSeriesDataset> apply_perturbation(const TimeSeriesDataset& d,
                                                         const PerturbationSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case PerturbationKind::kNoise: return {add_gaussian_noise(d, *spec.sigma, spec.seed)};
    case PerturbationKind::kDropClass: return {drop_class(d, *spec.class_id)};
    case PerturbationKind::kKeepOnlyClass: return {keep_only_class(d, *spec.class_id)};
    case PerturbationKind::kSuccessiveDrop: return successive_drop(d, spec.drop_order);
    case PerturbationKind::kCollapse:
      if (spec.class_id) return {collapse_class(d, *spec.class_id, spec.replicate)};
      return {collapse_all(d, spec.replicate)};
  }
  return {};
}

}  // namespace tsgeval

#endif  // TSGEVAL_PERTURB_HPP_
