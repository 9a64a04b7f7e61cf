#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "ferfreq/config.hpp"
#include "ferfreq/decode.hpp"
#include "ferfreq/error.hpp"
#include "ferfreq/feature_table.hpp"
#include "ferfreq/kernels.hpp"
#include "ferfreq/labels.hpp"
#include "ferfreq/manifest.hpp"
#include "ferfreq/metrics.hpp"
#include "ferfreq/model.hpp"
#include "ferfreq/pgm.hpp"
#include "ferfreq/resize.hpp"
#include "ferfreq/spectrum.hpp"
#include "ferfreq/split.hpp"
#include "ferfreq/synth.hpp"

namespace py = pybind11;
using namespace ferfreq;

namespace {

using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

Plane to_plane(const DArray& a) {
  if (a.ndim() != 2) throw ParameterError("expected a 2-D array");
  Plane p(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::memcpy(p.data.data(), a.data(), p.size() * sizeof(double));
  return p;
}

py::array_t<double> from_plane(const Plane& p) {
  py::array_t<double> a(std::vector<py::ssize_t>{p.height, p.width});
  std::memcpy(a.mutable_data(), p.data.data(), p.size() * sizeof(double));
  return a;
}

Spectrum to_spectrum(const CArray& a, bool centered) {
  if (a.ndim() != 2) throw ParameterError("expected a 2-D array");
  Spectrum s(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)), centered);
  std::memcpy(s.data.data(), a.data(), s.size() * sizeof(std::complex<double>));
  return s;
}

py::array_t<std::complex<double>> from_spectrum(const Spectrum& s) {
  py::array_t<std::complex<double>> a(std::vector<py::ssize_t>{s.height, s.width});
  std::memcpy(a.mutable_data(), s.data.data(), s.size() * sizeof(std::complex<double>));
  return a;
}

template <typename T>
py::array_t<T> from_vector(const std::vector<T>& v) {
  py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
  std::memcpy(a.mutable_data(), v.data(), v.size() * sizeof(T));
  return a;
}

py::array_t<double> matrix_array(const std::vector<double>& v, std::size_t cols) {
  const py::ssize_t rows = cols == 0 ? 0 : static_cast<py::ssize_t>(v.size() / cols);
  py::array_t<double> a(std::vector<py::ssize_t>{rows, static_cast<py::ssize_t>(cols)});
  std::memcpy(a.mutable_data(), v.data(), v.size() * sizeof(double));
  return a;
}

std::string emotion_str(Emotion e) { return std::string(emotion_name(e)); }

FeatureTable table_from_arrays(const DArray& features, const std::vector<std::uint8_t>& labels,
                               const std::vector<std::uint8_t>& subjects,
                               const std::vector<std::uint16_t>& image_ids,
                               const std::vector<std::uint32_t>& pixel_indices) {
  if (features.ndim() != 2) throw ParameterError("expected a 2-D feature array");
  const std::size_t n = static_cast<std::size_t>(features.shape(0));
  if (labels.size() != n || subjects.size() != n || image_ids.size() != n ||
      pixel_indices.size() != n) {
    throw ParameterError("column lengths must match the feature row count");
  }
  FeatureTable t;
  t.p = static_cast<int>(features.shape(1));
  t.features.assign(features.data(), features.data() + features.size());
  for (double& v : t.features) v = static_cast<float>(v);
  t.labels = labels;
  t.subjects = subjects;
  t.image_ids = image_ids;
  t.pixel_indices = pixel_indices;
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Narrow-band spectral facial expression pipeline";
  m.attr("__version__") = "0.1.0";
  m.attr("EMOTIONS") = std::vector<std::string>{"happy", "sad", "sleepy", "surprised", "wink"};

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<EmptyCorpusError>(m, "EmptyCorpusError", PyExc_RuntimeError);
  py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);

  // --- spectral ------------------------------------------------------------
  m.def("fft2", [](const DArray& a) { return from_spectrum(fft2(to_plane(a))); },
        py::arg("plane"), "Unnormalized forward DFT; DC at [0, 0].");
  m.def("ifft2",
        [](const CArray& a) { return from_plane(ifft2(to_spectrum(a, false)).plane); },
        py::arg("spectrum"), "Inverse DFT scaled by 1/(w*h) of an uncentered spectrum.");
  m.def("fftshift", [](const CArray& a) { return from_spectrum(fftshift(to_spectrum(a, false))); },
        py::arg("spectrum"), "Quadrant swap moving DC to (h/2, w/2).");
  m.def("unshift", [](const CArray& a) { return from_spectrum(unshift(to_spectrum(a, true))); },
        py::arg("spectrum"), "Exact inverse of fftshift.");

  // --- kernels ---------------------------------------------------------------
  py::class_<KernelSpec>(m, "KernelSpec")
      .def(py::init([](int p, int b, int start, int stride, const std::string& policy,
                       bool keep_dc) {
             KernelSpec s;
             s.p = p;
             s.b = b;
             s.start = start;
             s.stride = stride;
             s.orientation_policy = orientation_policy_from_name(policy);
             s.keep_dc = keep_dc;
             return s;
           }),
           py::arg("p") = 25, py::arg("b") = 2, py::arg("start") = 14, py::arg("stride") = 2,
           py::arg("orientation_policy") = "all-horizontal", py::arg("keep_dc") = false)
      .def_readwrite("p", &KernelSpec::p)
      .def_readwrite("b", &KernelSpec::b)
      .def_readwrite("start", &KernelSpec::start)
      .def_readwrite("stride", &KernelSpec::stride)
      .def_readwrite("keep_dc", &KernelSpec::keep_dc)
      .def_property(
          "orientation_policy",
          [](const KernelSpec& s) { return orientation_policy_name(s.orientation_policy); },
          [](KernelSpec& s, const std::string& name) {
            s.orientation_policy = orientation_policy_from_name(name);
          });

  py::class_<BandKernel>(m, "BandKernel")
      .def_readonly("index", &BandKernel::index)
      .def_readonly("offset", &BandKernel::offset)
      .def_readonly("band_width", &BandKernel::band_width)
      .def_readonly("width", &BandKernel::width)
      .def_readonly("height", &BandKernel::height)
      .def_readonly("keep_dc", &BandKernel::keep_dc)
      .def_property_readonly("orientation",
                             [](const BandKernel& k) {
                               return k.orientation == Orientation::kHorizontal ? "horizontal"
                                                                                : "vertical";
                             })
      .def_property_readonly("mask", [](const BandKernel& k) {
        py::array_t<std::uint8_t> a(std::vector<py::ssize_t>{k.height, k.width});
        std::memcpy(a.mutable_data(), k.mask.data(), k.mask.size());
        return a;
      });

  m.def("make_kernels", &make_kernels, py::arg("spec"), py::arg("width"), py::arg("height"));
  m.def("band_image",
        [](const DArray& a, const BandKernel& k) {
          return from_plane(band_image(to_plane(a), k).plane);
        },
        py::arg("plane"), py::arg("kernel"),
        "ifft2(unshift(mask * fftshift(fft2(plane)))), the per-kernel feature image.");

  // --- ingest ----------------------------------------------------------------
  m.def("decode_to_gray", [](const std::string& path) { return from_plane(decode_to_gray(path)); },
        py::arg("path"), "GIF/PGM/PNG to a [0,1] grayscale array (BT.601 luma).");
  m.def("resize_bicubic",
        [](const DArray& a, int width, int height) {
          return from_plane(resize_bicubic(to_plane(a), width, height));
        },
        py::arg("plane"), py::arg("width"), py::arg("height"));
  m.def("write_pgm", [](const DArray& a, const std::string& path) { write_pgm(to_plane(a), path); },
        py::arg("plane"), py::arg("path"));

  py::class_<CorpusEntry>(m, "CorpusEntry")
      .def_readonly("path", &CorpusEntry::path)
      .def_readonly("subject", &CorpusEntry::subject)
      .def_property_readonly("label", [](const CorpusEntry& e) { return emotion_str(e.label); })
      .def("__repr__", [](const CorpusEntry& e) {
        return "CorpusEntry(subject=" + std::to_string(e.subject) + ", label=" +
               emotion_str(e.label) + ")";
      });
  py::class_<DatasetManifest>(m, "DatasetManifest")
      .def_readonly("entries", &DatasetManifest::entries)
      .def("__len__", [](const DatasetManifest& d) { return d.entries.size(); });
  m.def("scan_corpus", &scan_corpus, py::arg("root"));

  // --- synth -------------------------------------------------------------------
  py::class_<SynthSpec>(m, "SynthSpec")
      .def(py::init<>())
      .def_readwrite("n_subjects", &SynthSpec::n_subjects)
      .def_readwrite("band_low", &SynthSpec::band_low)
      .def_readwrite("band_width", &SynthSpec::band_width)
      .def_readwrite("amplitude", &SynthSpec::amplitude)
      .def_readwrite("lowpass_cutoff", &SynthSpec::lowpass_cutoff)
      .def_readwrite("noise_stddev", &SynthSpec::noise_stddev)
      .def_readwrite("image_size", &SynthSpec::image_size)
      .def_readwrite("seed", &SynthSpec::seed);
  py::class_<SynthImage>(m, "SynthImage")
      .def_readonly("subject", &SynthImage::subject)
      .def_property_readonly("label", [](const SynthImage& i) { return emotion_str(i.label); })
      .def_property_readonly("plane", [](const SynthImage& i) { return from_plane(i.plane); });
  py::class_<SynthResult>(m, "SynthResult")
      .def_readonly("images", &SynthResult::images)
      .def_readonly("manifest", &SynthResult::manifest)
      .def_readonly("clamped_pixels", &SynthResult::clamped_pixels)
      .def_readonly("total_pixels", &SynthResult::total_pixels);
  m.def("generate", &generate, py::arg("spec"), py::call_guard<py::gil_scoped_release>());
  m.def("write_corpus", &write_corpus, py::arg("result"), py::arg("dir"));

  // --- feature store -------------------------------------------------------------
  py::class_<FeatureTable>(m, "FeatureTable")
      .def(py::init(&table_from_arrays), py::arg("features"), py::arg("labels"),
           py::arg("subjects"), py::arg("image_ids"), py::arg("pixel_indices"))
      .def_readonly("p", &FeatureTable::p)
      .def_property_readonly("n_rows", &FeatureTable::n_rows)
      .def_property_readonly(
          "features",
          [](const FeatureTable& t) { return matrix_array(t.features, static_cast<std::size_t>(t.p)); })
      .def_property_readonly("labels", [](const FeatureTable& t) { return from_vector(t.labels); })
      .def_property_readonly("subjects",
                             [](const FeatureTable& t) { return from_vector(t.subjects); })
      .def_property_readonly("image_ids",
                             [](const FeatureTable& t) { return from_vector(t.image_ids); })
      .def_property_readonly("pixel_indices",
                             [](const FeatureTable& t) { return from_vector(t.pixel_indices); })
      .def("__len__", &FeatureTable::n_rows);
  m.def("build_feature_table",
        [](const DatasetManifest& manifest, const std::vector<BandKernel>& kernels, int image_size,
           bool magnitude) {
          return build_feature_table(manifest, kernels, {image_size, magnitude});
        },
        py::arg("manifest"), py::arg("kernels"), py::arg("image_size") = 128,
        py::arg("magnitude") = false, py::call_guard<py::gil_scoped_release>());
  m.def("save_table", &save_table, py::arg("table"), py::arg("path"));
  m.def("load_table", &load_table, py::arg("path"));
  m.def("export_csv", &export_csv, py::arg("table"), py::arg("path"));

  // --- split -----------------------------------------------------------------------
  py::class_<SplitSpec>(m, "SplitSpec")
      .def(py::init([](double ratio, std::uint64_t seed, const std::string& granularity) {
             SplitSpec s;
             s.ratio = ratio;
             s.seed = seed;
             s.granularity = granularity_from_name(granularity);
             return s;
           }),
           py::arg("ratio") = 0.8, py::arg("seed") = 0, py::arg("granularity") = "pixel")
      .def_readwrite("ratio", &SplitSpec::ratio)
      .def_readwrite("seed", &SplitSpec::seed)
      .def_property(
          "granularity",
          [](const SplitSpec& s) { return granularity_name(s.granularity); },
          [](SplitSpec& s, const std::string& name) {
            s.granularity = granularity_from_name(name);
          });
  m.def("split_domain",
        [](const FeatureTable& t, const SplitSpec& s) {
          Split out = split_domain(t, s);
          return py::make_tuple(std::move(out.train), std::move(out.test));
        },
        py::arg("table"), py::arg("spec"), "Returns the (train, test) tables.");
  m.def("stratified_rows", &stratified_rows, py::arg("table"), py::arg("fraction"),
        py::arg("seed"));
  m.def("take_rows", &take_rows, py::arg("table"), py::arg("rows"));

  // --- learners ---------------------------------------------------------------------
  py::class_<RFConfig>(m, "RFConfig")
      .def(py::init([](int n_trees, int max_depth, int features_per_split, int min_samples_leaf,
                       std::uint64_t seed) {
             return RFConfig{n_trees, max_depth, features_per_split, min_samples_leaf, seed};
           }),
           py::arg("n_trees") = 100, py::arg("max_depth") = 0, py::arg("features_per_split") = 0,
           py::arg("min_samples_leaf") = 1, py::arg("seed") = 0)
      .def_readwrite("n_trees", &RFConfig::n_trees)
      .def_readwrite("max_depth", &RFConfig::max_depth)
      .def_readwrite("features_per_split", &RFConfig::features_per_split)
      .def_readwrite("min_samples_leaf", &RFConfig::min_samples_leaf)
      .def_readwrite("seed", &RFConfig::seed);
  py::class_<MLPConfig>(m, "MLPConfig")
      .def(py::init([](std::vector<int> hidden, int epochs, int batch_size, double learning_rate,
                       const std::string& optimizer, std::uint64_t seed) {
             return MLPConfig{std::move(hidden), epochs, batch_size, learning_rate, optimizer,
                              seed};
           }),
           py::arg("hidden") = std::vector<int>{64, 32}, py::arg("epochs") = 75,
           py::arg("batch_size") = 256, py::arg("learning_rate") = 1e-3,
           py::arg("optimizer") = "adam", py::arg("seed") = 0)
      .def_readwrite("hidden", &MLPConfig::hidden)
      .def_readwrite("epochs", &MLPConfig::epochs)
      .def_readwrite("batch_size", &MLPConfig::batch_size)
      .def_readwrite("learning_rate", &MLPConfig::learning_rate)
      .def_readwrite("optimizer", &MLPConfig::optimizer)
      .def_readwrite("seed", &MLPConfig::seed);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_property_readonly("kind",
                             [](const TrainedModel& t) {
                               return t.kind == ModelKind::kForest ? "rf" : "mlp";
                             })
      .def_property_readonly("classes", [](const TrainedModel& t) { return t.classes(); })
      .def_property_readonly("feature_width", &TrainedModel::feature_width)
      .def("describe", [](const TrainedModel& t) { return describe(t); });
  m.def("train_forest_model", &train_forest_model, py::arg("train"), py::arg("config") = RFConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("train_network_model", &train_network_model, py::arg("train"),
        py::arg("config") = MLPConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("predict",
        [](const TrainedModel& model, const FeatureTable& rows) {
          Prediction p;
          {
            py::gil_scoped_release release;
            p = predict(model, rows);
          }
          return py::make_tuple(from_vector(p.labels), matrix_array(p.scores, p.classes.size()));
        },
        py::arg("model"), py::arg("rows"),
        "Returns (labels, scores); score columns follow model.classes.");
  m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
  m.def("load_model", &load_model, py::arg("path"));

  // --- metrics -----------------------------------------------------------------------
  py::class_<LabelCounts>(m, "LabelCounts")
      .def_readonly("tp", &LabelCounts::tp)
      .def_readonly("fp", &LabelCounts::fp)
      .def_readonly("tn", &LabelCounts::tn)
      .def_readonly("fn", &LabelCounts::fn);
  py::class_<ConfusionCounts>(m, "ConfusionCounts")
      .def_readonly("labels", &ConfusionCounts::labels)
      .def_readonly("counts", &ConfusionCounts::counts)
      .def_readonly("total", &ConfusionCounts::total);
  m.def("confusion", &confusion, py::arg("preds"), py::arg("truth"));

  py::class_<LabelMetrics>(m, "LabelMetrics")
      .def_readonly("label", &LabelMetrics::label)
      .def_property_readonly("emotion",
                             [](const LabelMetrics& l) {
                               return emotion_str(*emotion_from_id(l.label));
                             })
      .def_readonly("accuracy", &LabelMetrics::accuracy)
      .def_readonly("precision", &LabelMetrics::precision)
      .def_readonly("specificity", &LabelMetrics::specificity)
      .def_readonly("sensitivity", &LabelMetrics::sensitivity);
  py::class_<MetricsReport>(m, "MetricsReport")
      .def_property_readonly("mode",
                             [](const MetricsReport& r) { return metric_mode_name(r.mode); })
      .def_readonly("per_label", &MetricsReport::per_label);
  m.def("metrics",
        [](const ConfusionCounts& c, const std::string& mode) {
          return metrics(c, metric_mode_from_name(mode));
        },
        py::arg("counts"), py::arg("mode") = "paper");
  m.def("render_text", &render_text, py::arg("report"));
  m.def("render_csv", &render_csv, py::arg("report"));
  m.def("render_json", &render_json, py::arg("report"));
  m.def("aggregate_by_image",
        [](const FeatureTable& rows, const std::vector<std::uint8_t>& preds) {
          std::vector<std::uint8_t> image_preds;
          std::vector<std::uint8_t> image_truth;
          aggregate_by_image(rows, preds, image_preds, image_truth);
          return py::make_tuple(from_vector(image_preds), from_vector(image_truth));
        },
        py::arg("rows"), py::arg("preds"),
        "Returns (image_preds, image_truth) ordered by image id.");

  // --- config ------------------------------------------------------------------------
  m.def("default_config_json", [] { return config_to_json(PipelineConfig{}); });
  m.def("config_hash", [](const std::string& text) { return config_hash(config_from_json(text)); },
        py::arg("config_json"),
        "Identity hash of a pipeline config document (model and metric mode excluded).");
}
