// Command-line front end: base scores, the perturbation experiments,
// synthetic data generation and scoring of externally computed outputs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tsgeval/tsgeval.hpp"

namespace fs = std::filesystem;
using namespace tsgeval;

namespace {

struct GlobalOptions {
  std::optional<Seed> seed;
  std::string out_dir;
  std::string format = "json";
};

struct EvalOptions {
  std::string train;
  std::string test;
  std::string config;
  std::string grid = "0:5:11";
  std::string variant = "single";
  std::string order;
  std::optional<int> replicate;
};

struct SynthOptions {
  std::string spec;
  std::string out;
};

struct ImportOptions {
  std::string probs;
  std::string feats;
  std::string labels;
  std::string real_feats;
};

std::vector<double> parse_grid(const std::string& s) {
  const auto parts = text::split(s, ':');
  if (parts.size() != 3) throw InputError("--grid expects lo:hi:n, got '" + s + "'");
  const auto lo = text::to_double(parts[0]);
  const auto hi = text::to_double(parts[1]);
  const auto n = text::to_int(parts[2]);
  if (!lo || !hi || !n) throw InputError("--grid expects lo:hi:n, got '" + s + "'");
  return sigma_grid(*lo, *hi, static_cast<int>(*n));
}

std::vector<ClassId> parse_order(const std::string& s) {
  std::vector<ClassId> out;
  for (auto part : text::split(s, ',')) {
    const auto v = text::to_int(part);
    if (!v) throw InputError("--order expects comma-separated class indices, got '" + s + "'");
    out.push_back(static_cast<ClassId>(*v));
  }
  return out;
}

void emit(const GlobalOptions& g, const std::string& stem, const std::string& json_doc,
          const std::string& csv_doc) {
  const std::string& body = g.format == "csv" ? csv_doc : json_doc;
  if (g.out_dir.empty()) {
    std::cout << body;
    return;
  }
  fs::create_directories(g.out_dir);
  const fs::path path = fs::path(g.out_dir) / (stem + (g.format == "csv" ? ".csv" : ".json"));
  std::ofstream out(path);
  out << body;
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  std::cerr << "wrote " << path.string() << "\n";
}

HarnessConfig load_config(const GlobalOptions& g, const EvalOptions& e) {
  HarnessConfig cfg;
  if (!e.config.empty()) {
    std::ifstream in(e.config);
    if (!in) throw InputError("cannot open '" + e.config + "'");
    cfg = parse_harness_config(in);
  }
  if (g.seed) cfg.master_seed = *g.seed;
  if (e.replicate) {
    if (*e.replicate < 1) throw InputError("--replicate must be at least 1");
    cfg.collapse_replicate = *e.replicate;
  }
  return cfg;
}

void run_eval(const GlobalOptions& g, const EvalOptions& e, ExperimentKind kind) {
  const HarnessConfig cfg = load_config(g, e);
  const auto train = read_ucr_tsv(e.train);
  const auto test = read_ucr_tsv(e.test);
  const ExperimentRunner runner(train, test, cfg);
  if (!runner.base().gate_passed) {
    std::cerr << "warning: backbone test accuracy " << runner.base().accuracy << " is below the gate "
              << cfg.accuracy_gate << "\n";
  }

  ExperimentSeries series;
  switch (kind) {
    case ExperimentKind::kBase: series = runner.base_series(); break;
    case ExperimentKind::kNoise: series = runner.run_noise(parse_grid(e.grid)); break;
    case ExperimentKind::kModeDropSingle: series = runner.run_mode_drop_single(); break;
    case ExperimentKind::kModeDropExtreme: series = runner.run_mode_drop_extreme(); break;
    case ExperimentKind::kModeDropSuccessive:
      series = runner.run_mode_drop_successive(e.order.empty() ? std::nullopt
                                                               : std::optional(parse_order(e.order)));
      break;
    case ExperimentKind::kModeCollapse: series = runner.run_mode_collapse(); break;
  }
  const std::string stem =
      (series.dataset_name.empty() ? std::string("dataset") : series.dataset_name) + "_" +
      std::string(to_string(kind));
  emit(g, stem, serialize_report(series), serialize_flat_table(series));
}

ExperimentKind mode_drop_kind(const std::string& variant) {
  if (variant == "single") return ExperimentKind::kModeDropSingle;
  if (variant == "extreme") return ExperimentKind::kModeDropExtreme;
  if (variant == "successive") return ExperimentKind::kModeDropSuccessive;
  throw InputError("--variant must be single, extreme or successive");
}

void run_synth(const GlobalOptions& g, const SynthOptions& o) {
  std::ifstream in(o.spec);
  if (!in) throw InputError("cannot open '" + o.spec + "'");
  SynthSpec spec = parse_synth_spec(in);
  if (g.seed) spec.seed = *g.seed;
  const auto d = synth_generate(spec);
  const auto parent = fs::path(o.out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(o.out);
  write_ucr_tsv(out, d);
  if (!out) throw InputError("cannot write '" + o.out + "'");
}

void run_import(const GlobalOptions& g, const ImportOptions& o) {
  std::optional<MatrixXd> probs;
  std::optional<MatrixXd> feats;
  if (!o.probs.empty()) probs = read_numeric_csv(o.probs);
  if (!o.feats.empty()) feats = read_numeric_csv(o.feats);
  const auto model = load_external(std::move(probs), std::move(feats), labels_from_matrix(read_numeric_csv(o.labels)));

  nlohmann::json doc = {{"version", kReportVersion},
                        {"experiment", "import"},
                        {"n_rows", model.n_rows()},
                        {"n_classes", model.n_classes()},
                        {"feature_dim", model.feature_dim()},
                        {"its", nullptr},
                        {"accuracy", nullptr},
                        {"fitd", nullptr},
                        {"warnings", nlohmann::json::array()}};
  auto cell = [](const nlohmann::json& v) { return v.is_null() ? std::string() : text::format_double(v.get<double>()); };
  if (model.has_probabilities()) {
    doc["its"] = inception_time_score(model.probabilities());
    doc["accuracy"] = model.accuracy();
  }
  if (!o.real_feats.empty()) {
    if (!model.has_features()) throw InputError("--real-feats needs --feats");
    const FitdResult f = fitd_detailed(read_numeric_csv(o.real_feats), model.features());
    doc["fitd"] = f.value;
    if (f.small_sample) doc["warnings"].push_back(warning::kSmallSampleFitd);
  }
  std::ostringstream csv;
  csv << "n_rows,n_classes,feature_dim,its,accuracy,fitd\n"
      << model.n_rows() << ',' << model.n_classes() << ',' << model.feature_dim() << ',' << cell(doc["its"])
      << ',' << cell(doc["accuracy"]) << ',' << cell(doc["fitd"]) << '\n';
  emit(g, "import", doc.dump(2) + "\n", csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class-conditional scores (ITS, FITD, TSTR, TRTS) for generated time series"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out-dir", g.out_dir, "Write reports here instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  EvalOptions e;
  auto* eval = app.add_subcommand("eval", "Score a test split and its perturbations");
  eval->require_subcommand(1);
  auto add_io = [&e](CLI::App* sub) {
    sub->add_option("--train", e.train, "Training split (UCR TSV)")->required()->check(CLI::ExistingFile);
    sub->add_option("--test", e.test, "Test split (UCR TSV)")->required()->check(CLI::ExistingFile);
    sub->add_option("--config", e.config, "key = value experiment config")->check(CLI::ExistingFile);
  };
  auto* base = eval->add_subcommand("base", "Base scores of the untouched test split");
  add_io(base);
  auto* noise = eval->add_subcommand("noise", "Additive Gaussian noise over a sigma grid");
  add_io(noise);
  noise->add_option("--grid", e.grid, "lo:hi:n")->capture_default_str();
  auto* drop = eval->add_subcommand("mode-drop", "Remove classes from the test split");
  add_io(drop);
  drop->add_option("--variant", e.variant, "single|extreme|successive")
      ->capture_default_str()
      ->check(CLI::IsMember({"single", "extreme", "successive"}));
  drop->add_option("--order", e.order, "Successive drop order, e.g. 2,0");
  auto* collapse = eval->add_subcommand("collapse", "Replace each class by its averaged sample");
  add_io(collapse);
  collapse->add_option("--replicate", e.replicate, "Copies of each averaged sample");

  SynthOptions s;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset as UCR TSV");
  synth->add_option("--spec", s.spec, "key = value synth spec")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", s.out, "Output TSV")->required();

  ImportOptions im;
  auto* import = app.add_subcommand("import", "Score externally computed probabilities/features");
  import->add_option("--probs", im.probs, "n x N probabilities CSV")->check(CLI::ExistingFile);
  import->add_option("--feats", im.feats, "n x D features CSV")->check(CLI::ExistingFile);
  import->add_option("--labels", im.labels, "n x 1 labels CSV")->required()->check(CLI::ExistingFile);
  import->add_option("--real-feats", im.real_feats, "Real features CSV for FITD")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kInput);
  }

  try {
    if (base->parsed()) run_eval(g, e, ExperimentKind::kBase);
    if (noise->parsed()) run_eval(g, e, ExperimentKind::kNoise);
    if (drop->parsed()) run_eval(g, e, mode_drop_kind(e.variant));
    if (collapse->parsed()) run_eval(g, e, ExperimentKind::kModeCollapse);
    if (synth->parsed()) run_synth(g, s);
    if (import->parsed()) run_import(g, im);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(err.code());
  } catch (const fs::filesystem_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(ExitCode::kInput);
  }
  return 0;
}
