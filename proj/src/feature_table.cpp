#include "ferfreq/feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "binio.hpp"
#include "ferfreq/decode.hpp"
#include "ferfreq/error.hpp"
#include "ferfreq/resize.hpp"

namespace ferfreq {
namespace {

constexpr char kMagic[7] = {'F', 'E', 'R', 'F', 'S', '1', '\0'};

// Running compensated sum; keeps column statistics stable at millions of
// rows.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

FeatureTable build_feature_table(const DatasetManifest& manifest,
                                 const std::vector<BandKernel>& kernels,
                                 const ExtractOptions& options) {
  if (manifest.entries.empty()) throw EmptyCorpusError("manifest has no entries");
  if (kernels.empty()) throw ParameterError("at least one kernel required");
  const int n = options.image_size;
  for (const BandKernel& k : kernels) {
    if (k.width != n || k.height != n) {
      throw ParameterError("kernel dimensions do not match image size");
    }
  }
  if (manifest.entries.size() > 65536) throw ParameterError("too many images for u16 image ids");

  FeatureTable t;
  t.p = static_cast<int>(kernels.size());
  const std::size_t pixels = static_cast<std::size_t>(n) * n;
  const std::size_t rows = pixels * manifest.entries.size();
  t.features.resize(rows * kernels.size());
  t.labels.resize(rows);
  t.subjects.resize(rows);
  t.image_ids.resize(rows);
  t.pixel_indices.resize(rows);

  for (std::size_t img = 0; img < manifest.entries.size(); ++img) {
    const CorpusEntry& entry = manifest.entries[img];
    const Plane plane = resize_bicubic(decode_to_gray(entry.path), n, n);
    const Spectrum centered = fftshift(fft2(plane));

    const std::size_t base = img * pixels;
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      const InversePlane inv = ifft2(unshift(apply_mask(centered, kernels[k])));
      for (std::size_t q = 0; q < pixels; ++q) {
        // Symmetric masks keep the reconstruction real, so the magnitude is
        // the absolute real part.
        const double v = options.magnitude ? std::abs(inv.plane.data[q]) : inv.plane.data[q];
        t.features[(base + q) * kernels.size() + k] = static_cast<float>(v);
      }
    }
    for (std::size_t q = 0; q < pixels; ++q) {
      const std::size_t r = base + q;
      t.labels[r] = static_cast<std::uint8_t>(emotion_id(entry.label));
      t.subjects[r] = entry.subject;
      t.image_ids[r] = static_cast<std::uint16_t>(img);
      t.pixel_indices[r] = static_cast<std::uint32_t>(q);
    }
  }
  return t;
}

void save_table(const FeatureTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);

  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  binio::put_u32(buf, static_cast<std::uint32_t>(t.n_rows()));
  binio::put_u16(buf, static_cast<std::uint16_t>(t.p));
  binio::put_u16(buf, 0);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));

  const std::size_t p = static_cast<std::size_t>(t.p);
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    buf.clear();
    binio::put_u8(buf, t.labels[r]);
    binio::put_u8(buf, t.subjects[r]);
    binio::put_u16(buf, t.image_ids[r]);
    binio::put_u32(buf, t.pixel_indices[r]);
    for (std::size_t k = 0; k < p; ++k) {
      binio::put_f32(buf, static_cast<float>(t.features[r * p + k]));
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw IoError("write failed: " + path);
}

FeatureTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  binio::Reader r(in, path);

  char magic[7];
  r.bytes(magic, 7);
  if (!std::equal(magic, magic + 7, kMagic)) throw FormatError("bad magic: " + path);
  const std::uint32_t n_rows = r.u32();
  const std::uint16_t p = r.u16();
  r.u16();  // reserved
  if (p == 0) throw FormatError("feature store with zero features: " + path);

  FeatureTable t;
  t.p = p;
  t.features.resize(static_cast<std::size_t>(n_rows) * p);
  t.labels.resize(n_rows);
  t.subjects.resize(n_rows);
  t.image_ids.resize(n_rows);
  t.pixel_indices.resize(n_rows);
  for (std::size_t row = 0; row < n_rows; ++row) {
    t.labels[row] = r.u8();
    if (t.labels[row] < 1 || t.labels[row] > 5) throw FormatError("label out of range: " + path);
    t.subjects[row] = r.u8();
    t.image_ids[row] = r.u16();
    t.pixel_indices[row] = r.u32();
    for (std::size_t k = 0; k < p; ++k) t.features[row * p + k] = r.f32();
  }
  return t;
}

void export_csv(const FeatureTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "label,subject,image,pixel";
  for (int k = 1; k <= t.p; ++k) out << ",f" << k;
  out << "\n";
  const std::size_t p = static_cast<std::size_t>(t.p);
  char num[32];
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    out << static_cast<int>(t.labels[r]) << ',' << static_cast<int>(t.subjects[r]) << ','
        << t.image_ids[r] << ',' << t.pixel_indices[r];
    for (std::size_t k = 0; k < p; ++k) {
      std::snprintf(num, sizeof(num), "%.9g", t.features[r * p + k]);
      out << ',' << num;
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::pair<FeatureTable, Standardization> standardize(const FeatureTable& t) {
  if (t.n_rows() < 2) throw ParameterError("standardize requires at least 2 rows");
  const std::size_t p = static_cast<std::size_t>(t.p);
  const std::size_t n = t.n_rows();

  Standardization s;
  s.mean.assign(p, 0.0);
  s.stddev.assign(p, 1.0);
  s.is_constant.assign(p, 0);

  std::vector<NeumaierSum> sums(p);
  std::vector<double> lo(p, std::numeric_limits<double>::infinity());
  std::vector<double> hi(p, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = t.row(r);
    for (std::size_t k = 0; k < p; ++k) {
      sums[k].add(row[k]);
      lo[k] = std::min(lo[k], row[k]);
      hi[k] = std::max(hi[k], row[k]);
    }
  }
  for (std::size_t k = 0; k < p; ++k) s.mean[k] = sums[k].value() / static_cast<double>(n);

  std::vector<NeumaierSum> sq(p);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = t.row(r);
    for (std::size_t k = 0; k < p; ++k) {
      const double d = row[k] - s.mean[k];
      sq[k].add(d * d);
    }
  }
  for (std::size_t k = 0; k < p; ++k) {
    const double sd = std::sqrt(sq[k].value() / static_cast<double>(n));
    if (lo[k] == hi[k] || sd == 0.0) {
      s.is_constant[k] = 1;
      s.mean[k] = 0.0;
      s.stddev[k] = 1.0;
    } else {
      s.stddev[k] = sd;
    }
  }

  FeatureTable out = t;
  apply_standardization(out, s);
  return {std::move(out), std::move(s)};
}

void apply_standardization(FeatureTable& t, const Standardization& s) {
  const std::size_t p = static_cast<std::size_t>(t.p);
  if (s.mean.size() != p) throw ParameterError("standardization width mismatch");
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    double* row = t.features.data() + r * p;
    for (std::size_t k = 0; k < p; ++k) {
      if (s.is_constant[k] == 0) row[k] = (row[k] - s.mean[k]) / s.stddev[k];
    }
  }
}

}  // namespace ferfreq
