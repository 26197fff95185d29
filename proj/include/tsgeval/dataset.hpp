#ifndef TSGEVAL_DATASET_HPP_
#define TSGEVAL_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsgeval/error.hpp"
#include "tsgeval/random.hpp"
#include "tsgeval/text.hpp"

namespace tsgeval {

using ClassId = int;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Fixed-length univariate series with contiguous class labels in
// [0, n_classes). A declared class may have no samples.
class TimeSeriesDataset {
 public:
  TimeSeriesDataset(RowMatrix samples, std::vector<ClassId> labels, int n_classes,
                    std::string name = {}, std::vector<double> label_values = {})
      : samples_(std::move(samples)),
        labels_(std::move(labels)),
        n_classes_(n_classes),
        name_(std::move(name)),
        label_values_(std::move(label_values)) {
    if (samples_.rows() < 1) throw InputError("dataset must contain at least one sample");
    if (samples_.cols() < 1) throw InputError("series length must be at least 1");
    if (n_classes_ < 1) throw InputError("n_classes must be positive");
    if (static_cast<Eigen::Index>(labels_.size()) != samples_.rows()) {
      throw InputError("label count " + std::to_string(labels_.size()) +
                       " does not match sample count " + std::to_string(samples_.rows()));
    }
    for (ClassId y : labels_) {
      if (y < 0 || y >= n_classes_) {
        throw InputError("label " + std::to_string(y) + " outside [0, " +
                         std::to_string(n_classes_) + ")");
      }
    }
    if (label_values_.empty()) {
      label_values_.resize(static_cast<std::size_t>(n_classes_));
      for (int k = 0; k < n_classes_; ++k) label_values_[static_cast<std::size_t>(k)] = k;
    } else if (static_cast<int>(label_values_.size()) != n_classes_) {
      throw InputError("label_values must have one entry per class");
    }
  }

  std::size_t n_samples() const noexcept { return static_cast<std::size_t>(samples_.rows()); }
  std::size_t series_length() const noexcept { return static_cast<std::size_t>(samples_.cols()); }
  int n_classes() const noexcept { return n_classes_; }
  const std::string& name() const noexcept { return name_; }
  const RowMatrix& samples() const noexcept { return samples_; }
  const std::vector<ClassId>& labels() const noexcept { return labels_; }
  ClassId label(std::size_t i) const { return labels_.at(i); }
  // Original label value for each contiguous class index.
  const std::vector<double>& label_values() const noexcept { return label_values_; }

  std::span<const double> row(std::size_t i) const {
    return {samples_.data() + static_cast<Eigen::Index>(i) * samples_.cols(),
            static_cast<std::size_t>(samples_.cols())};
  }

  TimeSeriesDataset with_samples(RowMatrix samples) const {
    return {std::move(samples), labels_, n_classes_, name_, label_values_};
  }

  // Rows at `indices` in the given order. Class declarations are kept.
  TimeSeriesDataset subset(const std::vector<std::size_t>& indices) const {
    if (indices.empty()) throw InputError("operation would leave the dataset empty");
    RowMatrix out(static_cast<Eigen::Index>(indices.size()), samples_.cols());
    std::vector<ClassId> labels;
    labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = samples_.row(static_cast<Eigen::Index>(indices[r]));
      labels.push_back(labels_.at(indices[r]));
    }
    return {std::move(out), std::move(labels), n_classes_, name_, label_values_};
  }

  friend bool operator==(const TimeSeriesDataset& a, const TimeSeriesDataset& b) {
    return a.n_classes_ == b.n_classes_ && a.labels_ == b.labels_ &&
           a.label_values_ == b.label_values_ && a.samples_.rows() == b.samples_.rows() &&
           a.samples_.cols() == b.samples_.cols() && a.samples_ == b.samples_;
  }

 private:
  RowMatrix samples_;
  std::vector<ClassId> labels_;
  int n_classes_;
  std::string name_;
  std::vector<double> label_values_;
};

inline std::vector<std::size_t> class_histogram(const TimeSeriesDataset& d) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(d.n_classes()), 0);
  for (ClassId y : d.labels()) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

// Classes with at least one sample, ascending.
inline std::vector<ClassId> present_classes(const TimeSeriesDataset& d) {
  std::vector<ClassId> out;
  const auto hist = class_histogram(d);
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] > 0) out.push_back(static_cast<ClassId>(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// UCR TSV
// ---------------------------------------------------------------------------

// One sample per line: label, then values, tab separated. Labels are
// remapped to [0, n_classes) in ascending order of their numeric value.
inline TimeSeriesDataset parse_ucr_tsv(std::istream& in, std::string name = {}) {
  std::vector<double> raw_labels;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, '\t');
    if (rows.empty()) {
      width = fields.size();
      if (width < 2) {
        throw FormatError("line " + std::to_string(lineno) + ": expected a label and at least one value");
      }
    } else if (fields.size() != width) {
      throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                        " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> values;
    values.reserve(width - 1);
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto v = text::to_double(fields[f]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError("line " + std::to_string(lineno) + ", field " + std::to_string(f) +
                         ": not a finite number: '" + std::string(fields[f]) + "'");
      }
      if (f == 0) {
        raw_labels.push_back(*v);
      } else {
        values.push_back(*v);
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EmptyInputError("no samples in input" + (name.empty() ? "" : " '" + name + "'"));

  std::vector<double> vocab = raw_labels;
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

  RowMatrix samples(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width - 1));
  std::vector<ClassId> labels(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c + 1 < width; ++c) {
      samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    labels[r] = static_cast<ClassId>(
        std::lower_bound(vocab.begin(), vocab.end(), raw_labels[r]) - vocab.begin());
  }
  return {std::move(samples), std::move(labels), static_cast<int>(vocab.size()), std::move(name),
          std::move(vocab)};
}

inline TimeSeriesDataset parse_ucr_tsv(std::string_view content, std::string name = {}) {
  std::istringstream in{std::string(content)};
  return parse_ucr_tsv(in, std::move(name));
}

inline TimeSeriesDataset read_ucr_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  auto stem = path.substr(path.find_last_of("/\\") == std::string::npos ? 0 : path.find_last_of("/\\") + 1);
  return parse_ucr_tsv(in, stem.substr(0, stem.find('.')));
}

// Writes original label values, so a parse of the output reproduces `d`.
inline void write_ucr_tsv(std::ostream& out, const TimeSeriesDataset& d) {
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    out << text::format_double(d.label_values()[static_cast<std::size_t>(d.label(i))]);
    for (double v : d.row(i)) out << '\t' << text::format_double(v);
    out << '\n';
  }
}

inline std::string serialize_ucr_tsv(const TimeSeriesDataset& d) {
  std::ostringstream out;
  write_ucr_tsv(out, d);
  return out.str();
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

// Per-row zero mean, unit population std. Constant rows become zeros.
inline void z_normalize_in_place(std::span<double> x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
    std::fill(x.begin(), x.end(), 0.0);
    return;
  }
  for (double& v : x) v = (v - mean) / sd;
}

inline TimeSeriesDataset z_normalize(const TimeSeriesDataset& d) {
  RowMatrix out = d.samples();
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    z_normalize_in_place({out.data() + r * out.cols(), static_cast<std::size_t>(out.cols())});
  }
  return d.with_samples(std::move(out));
}

// ---------------------------------------------------------------------------
// Synthetic generator
// ---------------------------------------------------------------------------

struct SynthSpec {
  int n_classes = 3;
  int samples_per_class = 50;
  int series_length = 64;
  // Class k completes (1 + k * class_separation) cycles over the series.
  double class_separation = 1.5;
  double noise_sigma = 0.1;
  Seed seed = 7;
  std::string name = "synth";

  void validate() const {
    if (n_classes < 1) throw InputError("n_classes must be positive");
    if (samples_per_class < 1) throw InputError("samples_per_class must be positive");
    if (series_length < 1) throw InputError("series_length must be positive");
    if (!(class_separation > 0.0)) throw InputError("class_separation must be positive");
    if (!(noise_sigma >= 0.0)) throw InputError("noise_sigma must be non-negative");
  }
};

inline std::vector<double> synth_prototype(const SynthSpec& spec, ClassId k) {
  const double cycles = 1.0 + k * spec.class_separation;
  std::vector<double> out(static_cast<std::size_t>(spec.series_length));
  for (int t = 0; t < spec.series_length; ++t) {
    out[static_cast<std::size_t>(t)] =
        std::sin(2.0 * std::numbers::pi * cycles * t / spec.series_length);
  }
  return out;
}

// Classes are laid out in contiguous blocks of samples_per_class rows.
inline TimeSeriesDataset synth_generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(spec.n_classes) * spec.samples_per_class;
  RowMatrix samples(n, spec.series_length);
  std::vector<ClassId> labels;
  labels.reserve(static_cast<std::size_t>(n));
  Eigen::Index r = 0;
  for (ClassId k = 0; k < spec.n_classes; ++k) {
    const auto proto = synth_prototype(spec, k);
    for (int s = 0; s < spec.samples_per_class; ++s, ++r) {
      for (int t = 0; t < spec.series_length; ++t) {
        double v = proto[static_cast<std::size_t>(t)];
        if (spec.noise_sigma > 0.0) v += spec.noise_sigma * noise(rng);
        samples(r, t) = v;
      }
      labels.push_back(k);
    }
  }
  return {std::move(samples), std::move(labels), spec.n_classes, spec.name};
}

// Keys: n_classes, samples_per_class, series_length, class_separation,
// noise_sigma, seed, name.
inline SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec spec;
  for (const auto& [key, value] : text::parse_key_values(in)) {
    auto as_int = [&](std::string_view k) {
      auto v = text::to_int(value);
      if (!v) throw ParseError("synth spec: '" + std::string(k) + "' is not an integer");
      return *v;
    };
    auto as_real = [&](std::string_view k) {
      auto v = text::to_double(value);
      if (!v) throw ParseError("synth spec: '" + std::string(k) + "' is not a number");
      return *v;
    };
    if (key == "n_classes") {
      spec.n_classes = static_cast<int>(as_int(key));
    } else if (key == "samples_per_class") {
      spec.samples_per_class = static_cast<int>(as_int(key));
    } else if (key == "series_length") {
      spec.series_length = static_cast<int>(as_int(key));
    } else if (key == "class_separation") {
      spec.class_separation = as_real(key);
    } else if (key == "noise_sigma") {
      spec.noise_sigma = as_real(key);
    } else if (key == "seed") {
      spec.seed = static_cast<Seed>(as_int(key));
    } else if (key == "name") {
      spec.name = value;
    } else {
      throw FormatError("synth spec: unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace tsgeval

#endif  // TSGEVAL_DATASET_HPP_
