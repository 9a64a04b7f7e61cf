// Acceptance gate: one line per criterion, nonzero exit when any fail.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "ferfreq/config.hpp"
#include "ferfreq/error.hpp"
#include "ferfreq/feature_table.hpp"
#include "ferfreq/kernels.hpp"
#include "ferfreq/manifest.hpp"
#include "ferfreq/metrics.hpp"
#include "ferfreq/model.hpp"
#include "ferfreq/rng.hpp"
#include "ferfreq/spectrum.hpp"
#include "ferfreq/split.hpp"
#include "ferfreq/synth.hpp"

using namespace ferfreq;

namespace {

namespace fs = std::filesystem;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("ferfreq_accept_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.generic_string(); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

void run_cli(const std::string& args, const fs::path& scratch) {
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd =
      std::string(FERFREQ_CLI_PATH) + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (code != 0) {
    throw Failure("command '" + args + "' exited " + std::to_string(code) + ": " +
                  read_file(err));
  }
}

// --- criterion 1: spectral correctness ------------------------------------

std::string check_spectral() {
  double max_rt = 0.0;
  double max_im = 0.0;
  double max_parseval = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Plane p = oracles::random_plane(128, 128, 1000 + i);
    const Spectrum s = fft2(p);
    const InversePlane inv = ifft2(s);
    max_rt = std::max(max_rt, oracles::max_abs_diff(inv.plane.data, p.data));
    max_im = std::max(max_im, inv.max_imag);

    double pix = 0.0;
    for (double v : p.data) pix += v * v;
    double spec = 0.0;
    for (const std::complex<double>& c : s.data) spec += std::norm(c);
    spec /= static_cast<double>(p.size());
    max_parseval = std::max(max_parseval, std::fabs(spec - pix) / pix);
  }
  require(max_rt < 1e-9, "roundtrip max diff " + fmt(max_rt));
  require(max_im < 1e-9, "roundtrip imaginary residue " + fmt(max_im));
  require(max_parseval < 1e-6, "parseval relative error " + fmt(max_parseval));

  double max_dft = 0.0;
  for (int seed = 0; seed < 5; ++seed) {
    const Plane p = oracles::random_plane(16, 16, 2000 + seed);
    const Spectrum s = fft2(p);
    const std::vector<std::complex<double>> ref = oracles::dft2(p);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      max_dft = std::max(max_dft, std::abs(s.data[i] - ref[i]));
    }
  }
  require(max_dft < 1e-9, "brute-force DFT mismatch " + fmt(max_dft));
  return "roundtrip " + fmt(max_rt) + ", parseval " + fmt(max_parseval) + ", dft " + fmt(max_dft);
}

// --- criterion 2: kernel algebra -------------------------------------------

std::string check_kernels() {
  const std::vector<BandKernel> defaults = make_kernels(KernelSpec{}, 128, 128);
  require(defaults.size() == 25, "default kernel count");
  for (std::size_t i = 0; i < defaults.size(); ++i) {
    const BandKernel& k = defaults[i];
    require(k.offset == 14 + 2 * static_cast<int>(i), "offset progression");
    require(k.offset >= 14 && k.offset <= 62, "offset range");
    require(k.offset + k.band_width <= 64, "band inside Nyquist");
  }

  Spectrum s = fftshift(fft2(oracles::random_plane(128, 128, 42)));
  for (std::size_t i : {std::size_t{0}, std::size_t{12}, std::size_t{24}}) {
    const Spectrum once = apply_mask(s, defaults[i]);
    const Spectrum twice = apply_mask(once, defaults[i]);
    require(once.data == twice.data, "mask idempotence");
  }

  for (std::size_t i = 0; i < defaults.size(); ++i) {
    for (std::size_t j = i + 1; j < defaults.size(); ++j) {
      for (std::size_t n = 0; n < defaults[i].mask.size(); ++n) {
        require((defaults[i].mask[n] & defaults[j].mask[n]) == 0, "disjoint band product");
      }
    }
  }

  KernelSpec tiling;
  tiling.p = 4;
  tiling.b = 2;
  tiling.start = 0;
  tiling.stride = 2;
  tiling.keep_dc = true;
  const std::vector<BandKernel> tiles = make_kernels(tiling, 16, 16);
  double max_tile = 0.0;
  for (int seed = 0; seed < 3; ++seed) {
    const Plane p = oracles::random_plane(16, 16, 3000 + seed);
    Plane sum(16, 16);
    for (const BandKernel& k : tiles) {
      const BandImage bi = band_image(p, k);
      for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += bi.plane.data[i];
    }
    max_tile = std::max(max_tile, oracles::max_abs_diff(sum.data, p.data));
  }
  require(max_tile < 1e-6, "half-spectrum tiling residual " + fmt(max_tile));
  return "25 defaults in [14,62], tiling residual " + fmt(max_tile);
}

// --- criterion 3: metric verbatim reproduction ------------------------------

ConfusionCounts one_label(std::uint64_t tp, std::uint64_t fp, std::uint64_t tn,
                          std::uint64_t fn) {
  ConfusionCounts c;
  c.labels = {1};
  c.counts = {LabelCounts{tp, fp, tn, fn}};
  c.total = tp + fp + tn + fn;
  return c;
}

std::string check_metrics() {
  const MetricsReport example = metrics(one_label(95, 5, 890, 10), MetricMode::kPaper);
  require(std::fabs(*example.per_label[0].precision - 0.95) < 1e-12, "example precision");
  require(std::fabs(*example.per_label[0].accuracy - 0.985) < 1e-12, "example accuracy");

  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t tp = 1 + rng.below(60);
    const std::uint64_t fp = 1 + rng.below(60);
    const std::uint64_t tn = 1 + rng.below(60);
    const std::uint64_t fn = 1 + rng.below(60);
    const ConfusionCounts c = one_label(tp, fp, tn, fn);
    const LabelMetrics p = metrics(c, MetricMode::kPaper).per_label[0];
    const LabelMetrics s = metrics(c, MetricMode::kStandard).per_label[0];

    const double dtp = static_cast<double>(tp), dfp = static_cast<double>(fp);
    const double dtn = static_cast<double>(tn), dfn = static_cast<double>(fn);
    require(std::fabs(*p.accuracy - 1.0 / (1.0 + (dfp + dfn) / (dtp + dtn))) < 1e-12,
            "verbatim accuracy");
    require(std::fabs(*p.precision - 1.0 / (1.0 + dfp / dtp)) < 1e-12, "verbatim precision");
    require(std::fabs(*p.sensitivity - 1.0 / (1.0 + dfp / dtn)) < 1e-12, "verbatim sensitivity");
    require(std::fabs(*p.specificity - 1.0 / (1.0 + dfn / dtp)) < 1e-12, "verbatim specificity");
    require(p.accuracy == s.accuracy && p.precision == s.precision, "shared metrics");
    require(p.sensitivity == s.specificity && p.specificity == s.sensitivity, "naming swap");
  }
  return "Eq. 11-12 verbatim, naming swap on 1000 tuples";
}

// --- criterion 4: learner sanity --------------------------------------------

std::string check_learners() {
  Mlp net;
  const std::vector<int> layers = {4, 5, 4, 3};
  Rng rng(11);
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    Eigen::MatrixXd w(layers[l + 1], layers[l]);
    Eigen::VectorXd b(layers[l + 1]);
    for (int i = 0; i < w.size(); ++i) w.data()[i] = rng.gaussian() * 0.7;
    for (int i = 0; i < b.size(); ++i) b.data()[i] = rng.gaussian() * 0.3;
    net.w.push_back(std::move(w));
    net.b.push_back(std::move(b));
  }
  net.classes = {1, 2, 3};

  Eigen::MatrixXd x(4, 10);
  std::vector<int> y(10);
  for (int i = 0; i < x.size(); ++i) x.data()[i] = rng.gaussian();
  for (int i = 0; i < 10; ++i) y[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(3));

  std::vector<Eigen::MatrixXd> dw;
  std::vector<Eigen::VectorXd> db;
  mlp_batch_gradients(net, x, y, dw, db);
  const double h = 1e-6;
  double max_rel = 0.0;
  auto probe = [&](double& slot, double analytic) {
    const double keep = slot;
    slot = keep + h;
    const double up = mlp_batch_loss(net, x, y);
    slot = keep - h;
    const double down = mlp_batch_loss(net, x, y);
    slot = keep;
    const double fd = (up - down) / (2.0 * h);
    const double scale = std::max({std::fabs(analytic), std::fabs(fd), 1e-8});
    max_rel = std::max(max_rel, std::fabs(analytic - fd) / scale);
  };
  for (std::size_t l = 0; l < net.w.size(); ++l) {
    for (int i = 0; i < net.w[l].size(); ++i) probe(net.w[l].data()[i], dw[l].data()[i]);
    for (int i = 0; i < net.b[l].size(); ++i) probe(net.b[l].data()[i], db[l].data()[i]);
  }
  require(max_rel < 1e-4, "gradient check relative error " + fmt(max_rel));

  const FeatureTable toy = oracles::separable_table(30, 5, 0.1, 4);
  RFConfig rf_cfg;
  rf_cfg.n_trees = 15;
  rf_cfg.features_per_split = 5;
  rf_cfg.seed = 5;
  const Forest fa = train_forest(toy, rf_cfg);
  const Forest fb = train_forest(toy, rf_cfg);
  const ForestVotes va = forest_predict(fa, toy);
  const ForestVotes vb = forest_predict(fb, toy);
  require(va.labels == vb.labels && va.votes == vb.votes, "forest determinism");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < toy.n_rows(); ++i) hits += va.labels[i] == toy.labels[i];
  require(hits == toy.n_rows(), "forest training accuracy");

  MLPConfig mlp_cfg;
  mlp_cfg.hidden = {16};
  mlp_cfg.epochs = 60;
  mlp_cfg.batch_size = 16;
  mlp_cfg.seed = 2;
  const TrainedModel nm = train_network_model(toy, mlp_cfg);
  const Prediction np = predict(nm, toy);
  hits = 0;
  for (std::size_t i = 0; i < toy.n_rows(); ++i) hits += np.labels[i] == toy.labels[i];
  require(hits == toy.n_rows(), "network training accuracy");
  return "gradients " + fmt(max_rel) + ", deterministic forest, separable toys 100%";
}

// --- criterion 5: end-to-end synthetic reproduction -------------------------

double min_precision(const TrainedModel& model, const FeatureTable& test) {
  const Prediction pred = predict(model, test);
  const MetricsReport r = metrics(confusion(pred.labels, test.labels), MetricMode::kPaper);
  double lo = 1.0;
  for (const LabelMetrics& m : r.per_label) {
    lo = std::min(lo, m.precision ? *m.precision : 0.0);
  }
  return lo;
}

Split default_subsampled_split(const FeatureTable& table, double row_fraction) {
  const SplitSpec spec;  // 80:20, pixel granularity, seed 0
  if (row_fraction < 1.0) {
    const std::vector<std::uint32_t> rows =
        stratified_rows(table, row_fraction, derive_seed(spec.seed, 2));
    return split_domain(take_rows(table, rows), spec);
  }
  return split_domain(table, spec);
}

std::string check_synthetic_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  const TempDir dir("synth");
  const SynthResult corpus = generate(SynthSpec{});
  const DatasetManifest manifest = write_corpus(corpus, dir.str());
  const std::vector<BandKernel> kernels = make_kernels(KernelSpec{}, 128, 128);
  FeatureTable table = build_feature_table(manifest, kernels);
  const Split split = default_subsampled_split(table, 0.1);
  table = FeatureTable{};

  const TrainedModel rf = train_forest_model(split.train, RFConfig{});
  const double rf_lo = min_precision(rf, split.test);
  require(rf_lo >= 0.95, "rf per-class precision " + fmt(rf_lo));

  const TrainedModel ann = train_network_model(split.train, MLPConfig{});
  const double ann_lo = min_precision(ann, split.test);
  require(ann_lo >= 0.90, "ann per-class precision " + fmt(ann_lo));

  const double elapsed = seconds_since(t0);
  require(elapsed < 300.0, "elapsed " + fmt(elapsed) + "s");
  return "rf precision >= " + fmt(rf_lo) + ", ann >= " + fmt(ann_lo) + ", " + fmt(elapsed) + "s";
}

// --- criterion 6: Yale reproduction (conditional) ----------------------------

double mean_precision(const TrainedModel& model, const FeatureTable& test) {
  const Prediction pred = predict(model, test);
  const MetricsReport r = metrics(confusion(pred.labels, test.labels), MetricMode::kPaper);
  double sum = 0.0;
  for (const LabelMetrics& m : r.per_label) sum += m.precision ? *m.precision : 0.0;
  return sum / static_cast<double>(r.per_label.size());
}

std::string check_yale(const char* root) {
  const DatasetManifest manifest = scan_corpus(root);
  const std::vector<BandKernel> kernels = make_kernels(KernelSpec{}, 128, 128);
  FeatureTable table = build_feature_table(manifest, kernels);
  const Split split = default_subsampled_split(table, 1.0);
  table = FeatureTable{};

  const TrainedModel rf = train_forest_model(split.train, RFConfig{});
  const double rf_avg = mean_precision(rf, split.test);
  require(rf_avg >= 0.85, "rf mean precision " + fmt(rf_avg));

  const TrainedModel ann = train_network_model(split.train, MLPConfig{});
  const double ann_avg = mean_precision(ann, split.test);
  require(ann_avg >= 0.88, "ann mean precision " + fmt(ann_avg));
  return "rf mean precision " + fmt(rf_avg) + ", ann " + fmt(ann_avg);
}

// --- criterion 7: determinism ------------------------------------------------

std::string check_determinism() {
  const TempDir dir("determinism");
  const fs::path cfg = dir.path / "cfg.json";
  write_file(cfg, R"({
  "image_size": 32,
  "synth": {
    "n_subjects": 2,
    "band_low": {"happy": 5, "sad": 7, "sleepy": 9, "surprised": 11, "wink": 13},
    "band_width": 2,
    "amplitude": 0.15,
    "lowpass_cutoff": 3,
    "noise_stddev": 0.01,
    "image_size": 32,
    "seed": 7
  },
  "kernels": {"p": 5, "b": 2, "start": 5, "stride": 2,
              "orientation_policy": "all-horizontal", "keep_dc": false},
  "split": {"ratio": 0.8, "seed": 9, "granularity": "pixel"},
  "row_fraction": 0.2
})");

  const fs::path corpus = dir.path / "corpus";
  for (const char* run : {"a", "b"}) {
    const fs::path r = dir.path / run;
    fs::create_directories(r);
    run_cli("synth --config " + cfg.string() + " --out " + corpus.string(), dir.path);
    run_cli("ingest --config " + cfg.string() + " --data " + corpus.string() + " --out " +
                (r / "manifest.json").string(),
            dir.path);
    run_cli("extract --manifest " + (r / "manifest.json").string() + " --out " +
                (r / "features.bin").string(),
            dir.path);
    run_cli("train --features " + (r / "features.bin").string() + " --out " +
                (r / "model.bin").string() + " --model rf --trees 15 --rf-seed 1",
            dir.path);
    run_cli("eval --features " + (r / "features.bin").string() + " --model-file " +
                (r / "model.bin").string() + " --out " + (r / "eval").string(),
            dir.path);
    run_cli("report --inputs " + (r / "eval/metrics.json").string() + " --out " +
                (r / "report.txt").string(),
            dir.path);
  }

  const std::string fa = read_file(dir.path / "a/features.bin");
  require(!fa.empty() && fa == read_file(dir.path / "b/features.bin"),
          "feature stores differ");
  require(read_file(dir.path / "a/eval/metrics.json") ==
              read_file(dir.path / "b/eval/metrics.json"),
          "metrics differ");
  const std::string ra = read_file(dir.path / "a/report.txt");
  require(!ra.empty() && ra == read_file(dir.path / "b/report.txt"), "reports differ");
  return "feature stores, metrics, and reports byte-identical";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1. spectral correctness", check_spectral},
      {"2. kernel algebra", check_kernels},
      {"3. metric verbatim reproduction", check_metrics},
      {"4. learner sanity", check_learners},
      {"5. synthetic end-to-end reproduction", check_synthetic_end_to_end},
      {"6. yale reproduction", [] {
         const char* root = std::getenv("FERFREQ_YALE_DIR");
         if (root == nullptr || *root == '\0') return std::string();
         return check_yale(root);
       }},
      {"7. determinism", check_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      const std::string detail = c.run();
      if (detail.empty()) {
        std::cout << "[SKIP] " << c.name << ": set FERFREQ_YALE_DIR to run\n";
      } else {
        std::cout << "[PASS] " << c.name << ": " << detail << "\n";
      }
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[FAIL] " << c.name << ": " << e.what() << "\n";
    }
    std::cout.flush();
  }
  return failures;
}
