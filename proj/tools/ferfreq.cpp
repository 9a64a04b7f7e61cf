// Command-line pipeline driver: synth -> ingest -> kernels -> extract ->
// train -> eval -> report. Logs go to stderr, data goes to files; every
// artifact embeds the pipeline config and its hash for provenance.
#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ferfreq/config.hpp"
#include "ferfreq/decode.hpp"
#include "ferfreq/error.hpp"
#include "ferfreq/feature_table.hpp"
#include "ferfreq/model.hpp"
#include "ferfreq/pgm.hpp"
#include "ferfreq/resize.hpp"
#include "ferfreq/rng.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using namespace ferfreq;

namespace {

// Holds the output-dir lock for the lifetime of a command.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    path_ = dir / ".ferfreq.lock";
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
      if (errno == EEXIST) {
        throw IoError("output dir is locked; remove " + path_.string() + " if stale");
      }
      throw IoError("cannot create lock " + path_.string());
    }
    ::close(fd);
  }
  ~DirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  fs::path path_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError("malformed " + what + ": " + e.what());
  }
}

// Flag values that remember whether they were set, so the precedence is
// defaults < upstream artifact echo < --config file < explicit flags.
struct Flags {
  std::string config_file;

  std::optional<std::string> data_dir, output_dir, model, optimizer, orientation, granularity,
      metrics_mode;
  std::optional<int> image_size, subjects, cutoff, p, b, start, stride, trees, max_depth, mtry,
      min_leaf, epochs, batch;
  std::optional<double> amplitude, noise, ratio, row_fraction, lr;
  std::optional<std::uint64_t> synth_seed, split_seed, rf_seed, mlp_seed;
  std::optional<bool> keep_dc, magnitude, aggregate;
};

void add_config_flag(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its values");
}

template <typename T>
void opt_flag(CLI::App* cmd, const std::string& name, std::optional<T>& slot,
              const std::string& help) {
  auto* opt = cmd->add_option_function<T>(
      name, [&slot](const T& v) { slot = v; }, help);
  opt->expected(1);
}

void opt_bool(CLI::App* cmd, const std::string& name, std::optional<bool>& slot,
              const std::string& help) {
  cmd->add_flag_callback(name, [&slot]() { slot = true; }, help);
}

// Builds the effective config: optional upstream echo, then the config
// file, then explicit flags.
PipelineConfig resolve_config(const Flags& f, const Json* upstream_echo) {
  PipelineConfig cfg;
  if (upstream_echo != nullptr) cfg = config_from_json(upstream_echo->dump(), cfg);
  if (!f.config_file.empty()) cfg = config_from_json(read_text(f.config_file), cfg);

  if (f.data_dir) cfg.data_dir = *f.data_dir;
  if (f.output_dir) cfg.output_dir = *f.output_dir;
  if (f.image_size) {
    cfg.image_size = *f.image_size;
    cfg.synth.image_size = *f.image_size;
  }
  if (f.magnitude) cfg.magnitude = *f.magnitude;
  if (f.subjects) cfg.synth.n_subjects = *f.subjects;
  if (f.cutoff) cfg.synth.lowpass_cutoff = *f.cutoff;
  if (f.amplitude) cfg.synth.amplitude = *f.amplitude;
  if (f.noise) cfg.synth.noise_stddev = *f.noise;
  if (f.synth_seed) cfg.synth.seed = *f.synth_seed;
  if (f.p) cfg.kernels.p = *f.p;
  if (f.b) cfg.kernels.b = *f.b;
  if (f.start) cfg.kernels.start = *f.start;
  if (f.stride) cfg.kernels.stride = *f.stride;
  if (f.orientation) cfg.kernels.orientation_policy = orientation_policy_from_name(*f.orientation);
  if (f.keep_dc) cfg.kernels.keep_dc = *f.keep_dc;
  if (f.ratio) cfg.split.ratio = *f.ratio;
  if (f.split_seed) cfg.split.seed = *f.split_seed;
  if (f.granularity) cfg.split.granularity = granularity_from_name(*f.granularity);
  if (f.row_fraction) cfg.row_fraction = *f.row_fraction;
  if (f.model) cfg.model = *f.model;
  if (f.trees) cfg.rf.n_trees = *f.trees;
  if (f.max_depth) cfg.rf.max_depth = *f.max_depth;
  if (f.mtry) cfg.rf.features_per_split = *f.mtry;
  if (f.min_leaf) cfg.rf.min_samples_leaf = *f.min_leaf;
  if (f.rf_seed) cfg.rf.seed = *f.rf_seed;
  if (f.epochs) cfg.mlp.epochs = *f.epochs;
  if (f.batch) cfg.mlp.batch_size = *f.batch;
  if (f.lr) cfg.mlp.learning_rate = *f.lr;
  if (f.optimizer) cfg.mlp.optimizer = *f.optimizer;
  if (f.mlp_seed) cfg.mlp.seed = *f.mlp_seed;
  if (f.metrics_mode) cfg.metric_mode = metric_mode_from_name(*f.metrics_mode);
  if (f.aggregate) cfg.aggregate_images = *f.aggregate;
  return cfg;
}

Json config_echo(const PipelineConfig& cfg) { return parse_json(config_to_json(cfg), "config"); }

// The subsample+split schedule shared by train and eval; both must see the
// identical test partition.
Split subsample_and_split(const FeatureTable& table, const PipelineConfig& cfg) {
  if (cfg.row_fraction < 1.0) {
    const std::vector<std::uint32_t> rows =
        stratified_rows(table, cfg.row_fraction, derive_seed(cfg.split.seed, 2));
    return split_domain(take_rows(table, rows), cfg.split);
  }
  return split_domain(table, cfg.split);
}

int cmd_synth(const Flags& f, const std::string& out_dir) {
  PipelineConfig cfg = resolve_config(f, nullptr);
  cfg.data_dir = out_dir;
  const SynthResult result = generate(cfg.synth);
  DirLock lock(out_dir);
  write_corpus(result, out_dir);

  Json doc = parse_json(synth_spec_to_json(cfg.synth), "synth spec");
  doc["config"] = config_echo(cfg);
  doc["config_hash"] = config_hash(cfg);
  write_text((fs::path(out_dir) / "synth.json").string(), doc.dump(2) + "\n");
  std::cerr << "synth: wrote " << result.images.size() << " images to " << out_dir << "\n";
  return 0;
}

int cmd_ingest(const Flags& f, const std::string& out_path) {
  const PipelineConfig cfg = resolve_config(f, nullptr);
  if (cfg.data_dir.empty()) throw ParameterError("ingest requires --data");
  const DatasetManifest m = scan_corpus(cfg.data_dir);

  Json doc = parse_json(manifest_to_json(m), "manifest");
  doc["config"] = config_echo(cfg);
  doc["config_hash"] = config_hash(cfg);
  DirLock lock(fs::path(out_path).parent_path().empty() ? "."
                                                        : fs::path(out_path).parent_path());
  write_text(out_path, doc.dump(2) + "\n");
  std::cerr << "ingest: " << m.entries.size() << " entries -> " << out_path << "\n";
  return 0;
}

int cmd_kernels(const Flags& f, const std::string& out_path, const std::string& masks_dir) {
  const PipelineConfig cfg = resolve_config(f, nullptr);
  const std::vector<BandKernel> kernels =
      make_kernels(cfg.kernels, cfg.image_size, cfg.image_size);
  DirLock lock(fs::path(out_path).parent_path().empty() ? "."
                                                        : fs::path(out_path).parent_path());
  write_text(out_path, kernel_spec_to_json(cfg.kernels));
  if (!masks_dir.empty()) {
    std::error_code ec;
    fs::create_directories(masks_dir, ec);
    if (ec) throw IoError("cannot create directory " + masks_dir + ": " + ec.message());
    for (const BandKernel& k : kernels) {
      char name[32];
      std::snprintf(name, sizeof(name), "kernel_%02d.pgm", k.index);
      write_pgm(mask_plane(k), (fs::path(masks_dir) / name).string());
    }
  }
  std::cerr << "kernels: " << kernels.size() << " kernels -> " << out_path << "\n";
  return 0;
}

int cmd_extract(const Flags& f, const std::string& manifest_path, const std::string& kernels_path,
                const std::string& out_path, const std::string& csv_path) {
  const Json manifest_doc = parse_json(read_text(manifest_path), "manifest");
  const Json* echo = manifest_doc.contains("config") ? &manifest_doc.at("config") : nullptr;
  PipelineConfig cfg = resolve_config(f, echo);
  if (!kernels_path.empty()) {
    cfg.kernels = kernel_spec_from_json(read_text(kernels_path));
  }

  const DatasetManifest manifest = manifest_from_json(manifest_doc.dump());
  const std::vector<BandKernel> kernels =
      make_kernels(cfg.kernels, cfg.image_size, cfg.image_size);
  const FeatureTable table =
      build_feature_table(manifest, kernels, {cfg.image_size, cfg.magnitude});

  DirLock lock(fs::path(out_path).parent_path().empty() ? "."
                                                        : fs::path(out_path).parent_path());
  save_table(table, out_path);
  Json meta;
  meta["n_rows"] = table.n_rows();
  meta["p"] = table.p;
  meta["config"] = config_echo(cfg);
  meta["config_hash"] = config_hash(cfg);
  write_text(out_path + ".meta.json", meta.dump(2) + "\n");
  if (!csv_path.empty()) export_csv(table, csv_path);
  std::cerr << "extract: " << table.n_rows() << " rows x " << table.p << " features -> "
            << out_path << "\n";
  return 0;
}

PipelineConfig config_from_meta(const Flags& f, const std::string& features_path) {
  const std::string meta_path = features_path + ".meta.json";
  if (fs::exists(meta_path)) {
    const Json meta = parse_json(read_text(meta_path), "features meta");
    if (meta.contains("config")) {
      const Json& echo = meta.at("config");
      return resolve_config(f, &echo);
    }
  }
  return resolve_config(f, nullptr);
}

int cmd_train(const Flags& f, const std::string& features_path, const std::string& out_path) {
  const PipelineConfig cfg = config_from_meta(f, features_path);
  if (cfg.model != "rf" && cfg.model != "mlp") {
    throw ParameterError("model must be rf or mlp");
  }

  const FeatureTable table = load_table(features_path);
  const Split split = subsample_and_split(table, cfg);
  std::cerr << "train: " << split.train.n_rows() << " train rows / " << split.test.n_rows()
            << " test rows, model " << cfg.model << "\n";

  TrainedModel model = cfg.model == "rf" ? train_forest_model(split.train, cfg.rf)
                                         : train_network_model(split.train, cfg.mlp);
  model.config_echo = config_to_json(cfg);

  DirLock lock(fs::path(out_path).parent_path().empty() ? "."
                                                        : fs::path(out_path).parent_path());
  save_model(model, out_path);
  std::cerr << "train: wrote " << out_path << "\n";
  std::cerr << describe(model);
  return 0;
}

int cmd_eval(const Flags& f, const std::string& features_path, const std::string& model_path,
             const std::string& out_dir) {
  const TrainedModel model = load_model(model_path);
  std::optional<Json> model_echo;
  if (!model.config_echo.empty()) {
    model_echo = parse_json(model.config_echo, "model config echo");
  }
  const PipelineConfig cfg = resolve_config(f, model_echo ? &*model_echo : nullptr);

  const std::string meta_path = features_path + ".meta.json";
  if (fs::exists(meta_path)) {
    const Json meta = parse_json(read_text(meta_path), "features meta");
    if (meta.contains("config_hash") && meta.at("config_hash").get<std::string>() != config_hash(cfg)) {
      std::cerr << "warning: feature store hash " << meta.at("config_hash").get<std::string>()
                << " differs from the effective config hash " << config_hash(cfg) << "\n";
    }
  }

  const FeatureTable table = load_table(features_path);
  const Split split = subsample_and_split(table, cfg);
  if (split.test.n_rows() == 0) throw ParameterError("test partition is empty");

  const Prediction pred = predict(model, split.test);
  ConfusionCounts counts;
  if (cfg.aggregate_images) {
    std::vector<std::uint8_t> image_preds;
    std::vector<std::uint8_t> image_truth;
    aggregate_by_image(split.test, pred.labels, image_preds, image_truth);
    counts = confusion(image_preds, image_truth);
  } else {
    counts = confusion(pred.labels, split.test.labels);
  }
  const MetricsReport report = metrics(counts, cfg.metric_mode);

  DirLock lock(out_dir);
  const std::string kind = model.kind == ModelKind::kForest ? "rf" : "mlp";
  Json doc;
  doc["model"] = kind;
  doc["mode"] = metric_mode_name(cfg.metric_mode);
  doc["aggregate_images"] = cfg.aggregate_images;
  doc["test_rows"] = counts.total;
  doc["config_hash"] = config_hash(cfg);
  Json count_rows = Json::array();
  for (std::size_t i = 0; i < counts.labels.size(); ++i) {
    const LabelCounts& lc = counts.counts[i];
    count_rows.push_back({{"emotion", std::string(emotion_name(*emotion_from_id(counts.labels[i])))},
                          {"tp", lc.tp},
                          {"fp", lc.fp},
                          {"tn", lc.tn},
                          {"fn", lc.fn}});
  }
  doc["counts"] = std::move(count_rows);
  doc["metrics"] = parse_json(render_json(report), "metrics");
  doc["config"] = config_echo(cfg);
  write_text((fs::path(out_dir) / "metrics.json").string(), doc.dump(2) + "\n");
  write_text((fs::path(out_dir) / "metrics.txt").string(), render_text(report));
  std::cerr << "eval: " << counts.total << " " << (cfg.aggregate_images ? "images" : "rows")
            << " scored -> " << out_dir << "\n";
  return 0;
}

MetricsReport report_from_doc(const Json& doc) {
  MetricsReport r;
  r.mode = metric_mode_from_name(doc.at("mode").get<std::string>());
  for (const Json& row : doc.at("metrics")) {
    LabelMetrics m;
    const std::optional<Emotion> e = emotion_from_name(row.at("emotion").get<std::string>());
    if (!e) throw FormatError("unknown emotion in metrics: " + row.at("emotion").dump());
    m.label = static_cast<std::uint8_t>(emotion_id(*e));
    auto cell = [&row](const char* key) -> std::optional<double> {
      if (row.at(key).is_null()) return std::nullopt;
      return row.at(key).get<double>() / 100.0;
    };
    m.accuracy = cell("accuracy");
    m.precision = cell("precision");
    m.specificity = cell("specificity");
    m.sensitivity = cell("sensitivity");
    r.per_label.push_back(m);
  }
  return r;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out_path, bool force) {
  if (inputs.empty()) throw ParameterError("report requires at least one metrics file");

  std::vector<Json> docs;
  std::string first_hash;
  for (const std::string& path : inputs) {
    Json doc = parse_json(read_text(path), "metrics file");
    const std::string hash =
        doc.contains("config_hash") ? doc.at("config_hash").get<std::string>() : "";
    if (docs.empty()) {
      first_hash = hash;
    } else if (hash != first_hash && !force) {
      throw ParameterError("config hash mismatch between " + inputs.front() + " and " + path +
                           "; pass --force to combine");
    }
    docs.push_back(std::move(doc));
  }

  std::string rendered;
  if (format == "text") {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      rendered += "model: " + docs[i].at("model").get<std::string>() + "  (config " +
                  docs[i].at("config_hash").get<std::string>() + ")\n";
      rendered += render_text(report_from_doc(docs[i]));
      if (i + 1 < docs.size()) rendered += "\n";
    }
  } else if (format == "csv") {
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const std::string csv = render_csv(report_from_doc(docs[i]));
      rendered += i == 0 ? csv : csv.substr(csv.find('\n') + 1);
    }
  } else if (format == "json") {
    Json all = Json::array();
    for (const Json& doc : docs) {
      all.push_back({{"model", doc.at("model")},
                     {"config_hash", doc.at("config_hash")},
                     {"metrics", doc.at("metrics")}});
    }
    rendered = all.dump(2) + "\n";
  } else {
    throw ParameterError("unknown report format: " + format);
  }

  DirLock lock(fs::path(out_path).parent_path().empty() ? "."
                                                        : fs::path(out_path).parent_path());
  write_text(out_path, rendered);
  std::cerr << "report: " << docs.size() << " input(s) -> " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrow-band spectral facial expression pipeline"};
  app.require_subcommand(1);
  Flags f;

  auto* synth = app.add_subcommand("synth", "Generate the synthetic corpus");
  std::string synth_out = "corpus";
  add_config_flag(synth, f);
  synth->add_option("--out", synth_out, "Corpus output directory");
  opt_flag<int>(synth, "--subjects", f.subjects, "Number of subjects");
  opt_flag<int>(synth, "--image-size", f.image_size, "Square image size");
  opt_flag<int>(synth, "--cutoff", f.cutoff, "Face low-pass cutoff");
  opt_flag<double>(synth, "--amplitude", f.amplitude, "Signature amplitude");
  opt_flag<double>(synth, "--noise", f.noise, "Pixel noise stddev");
  opt_flag<std::uint64_t>(synth, "--seed", f.synth_seed, "Generator seed");

  auto* ingest = app.add_subcommand("ingest", "Scan a corpus directory into a manifest");
  std::string ingest_out = "manifest.json";
  add_config_flag(ingest, f);
  opt_flag<std::string>(ingest, "--data", f.data_dir, "Corpus directory");
  ingest->add_option("--out", ingest_out, "Manifest output path");

  auto* kernels = app.add_subcommand("kernels", "Emit the band kernel set");
  std::string kernels_out = "kernels.json";
  std::string masks_dir;
  add_config_flag(kernels, f);
  kernels->add_option("--out", kernels_out, "Kernel JSON output path");
  kernels->add_option("--masks", masks_dir, "Directory for mask PGM exports");
  opt_flag<int>(kernels, "--p", f.p, "Kernel count");
  opt_flag<int>(kernels, "--b", f.b, "Band width in bins");
  opt_flag<int>(kernels, "--start", f.start, "First band offset");
  opt_flag<int>(kernels, "--stride", f.stride, "Offset stride");
  opt_flag<int>(kernels, "--image-size", f.image_size, "Square image size");
  opt_flag<std::string>(kernels, "--orientation", f.orientation,
                        "all-horizontal | all-vertical | alternating");
  opt_bool(kernels, "--keep-dc", f.keep_dc, "Keep the DC bin");

  auto* extract = app.add_subcommand("extract", "Build the per-pixel feature store");
  std::string manifest_path = "manifest.json";
  std::string kernels_path;
  std::string extract_out = "features.bin";
  std::string csv_path;
  add_config_flag(extract, f);
  extract->add_option("--manifest", manifest_path, "Manifest path");
  extract->add_option("--kernels", kernels_path, "Kernel JSON path (else config values)");
  extract->add_option("--out", extract_out, "Feature store output path");
  extract->add_option("--csv", csv_path, "Optional CSV export path");
  opt_bool(extract, "--magnitude", f.magnitude, "Store |band value| instead of the real part");
  opt_flag<int>(extract, "--image-size", f.image_size, "Square image size");

  auto* train = app.add_subcommand("train", "Train a classifier on the train partition");
  std::string features_path = "features.bin";
  std::string model_out = "model.bin";
  add_config_flag(train, f);
  train->add_option("--features", features_path, "Feature store path");
  train->add_option("--out", model_out, "Model output path");
  opt_flag<std::string>(train, "--model", f.model, "rf | mlp");
  opt_flag<double>(train, "--ratio", f.ratio, "Train fraction of the split");
  opt_flag<std::uint64_t>(train, "--split-seed", f.split_seed, "Split seed");
  opt_flag<std::string>(train, "--granularity", f.granularity, "pixel | image | subject");
  opt_flag<double>(train, "--row-fraction", f.row_fraction, "Stratified row subsample");
  opt_flag<int>(train, "--trees", f.trees, "Forest size");
  opt_flag<int>(train, "--max-depth", f.max_depth, "Tree depth bound (0 = none)");
  opt_flag<int>(train, "--mtry", f.mtry, "Features per split (0 = ceil(sqrt(p)))");
  opt_flag<int>(train, "--min-leaf", f.min_leaf, "Minimum samples per leaf");
  opt_flag<std::uint64_t>(train, "--rf-seed", f.rf_seed, "Forest seed");
  opt_flag<int>(train, "--epochs", f.epochs, "Training epochs");
  opt_flag<int>(train, "--batch", f.batch, "Mini-batch size");
  opt_flag<double>(train, "--lr", f.lr, "Learning rate");
  opt_flag<std::string>(train, "--optimizer", f.optimizer, "adam | sgd");
  opt_flag<std::uint64_t>(train, "--mlp-seed", f.mlp_seed, "Network seed");

  auto* eval = app.add_subcommand("eval", "Score the test partition");
  std::string model_path = "model.bin";
  std::string eval_out = ".";
  add_config_flag(eval, f);
  eval->add_option("--features", features_path, "Feature store path");
  eval->add_option("--model-file", model_path, "Trained model path");
  eval->add_option("--out", eval_out, "Output directory for metrics.{json,txt}");
  opt_flag<std::string>(eval, "--metrics", f.metrics_mode, "paper | standard");
  opt_bool(eval, "--aggregate-images", f.aggregate, "Score per-image majority votes");

  auto* report = app.add_subcommand("report", "Render one or more metrics files");
  std::vector<std::string> report_inputs;
  std::string report_format = "text";
  std::string report_out = "report.txt";
  bool report_force = false;
  report->add_option("--inputs", report_inputs, "metrics.json files")->expected(-1);
  report->add_option("--format", report_format, "text | csv | json");
  report->add_option("--out", report_out, "Report output path");
  report->add_flag("--force", report_force, "Combine inputs with mismatched config hashes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(f, synth_out);
    if (ingest->parsed()) return cmd_ingest(f, ingest_out);
    if (kernels->parsed()) return cmd_kernels(f, kernels_out, masks_dir);
    if (extract->parsed()) {
      return cmd_extract(f, manifest_path, kernels_path, extract_out, csv_path);
    }
    if (train->parsed()) return cmd_train(f, features_path, model_out);
    if (eval->parsed()) return cmd_eval(f, features_path, model_path, eval_out);
    if (report->parsed()) {
      return cmd_report(report_inputs, report_format, report_out, report_force);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: parameter: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: format: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 4;
  } catch (const EmptyCorpusError& e) {
    std::cerr << "error: empty-corpus: " << e.what() << "\n";
    return 5;
  } catch (const TrainingError& e) {
    std::cerr << "error: training: " << e.what() << "\n";
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
