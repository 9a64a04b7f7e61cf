#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "ferfreq/error.hpp"
#include "ferfreq/spectrum.hpp"
#include "oracles.hpp"

using namespace ferfreq;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("constant image transforms to a single DC bin") {
  Plane img(8, 8);
  for (double& v : img.data) v = 0.7;
  const Spectrum s = fft2(img);
  CHECK(s.centered == false);
  CHECK(std::abs(s.at(0, 0) - std::complex<double>(0.7 * 64.0, 0.0)) < 1e-9);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      if (y == 0 && x == 0) continue;
      CHECK(std::abs(s.at(y, x)) < 1e-9);
    }
  }
}

TEST_CASE("impulse at the origin transforms to all ones") {
  Plane img(16, 16);
  img.data[0] = 1.0;
  const Spectrum s = fft2(img);
  for (const std::complex<double>& c : s.data) {
    CHECK(std::abs(c - std::complex<double>(1.0, 0.0)) < 1e-9);
  }
}

TEST_CASE("horizontal cosine concentrates in two bins of magnitude n*n/2") {
  const int n = 128;
  Plane img(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      img.data[static_cast<std::size_t>(y) * n + x] = std::cos(2.0 * oracles::kPi * 8.0 * x / n);
    }
  }
  const Spectrum s = fft2(img);
  const double expect = n * n / 2.0;
  CHECK(std::abs(s.at(0, 8) - std::complex<double>(expect, 0.0)) < 1e-6);
  CHECK(std::abs(s.at(0, n - 8) - std::complex<double>(expect, 0.0)) < 1e-6);
  double residue = 0.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (y == 0 && (x == 8 || x == n - 8)) continue;
      residue = std::max(residue, std::abs(s.at(y, x)));
    }
  }
  CHECK(residue < 1e-6);
}

TEST_CASE("forward transform matches the direct O(N^4) DFT on 16x16 images") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Plane img = oracles::random_plane(16, 16, seed);
    const Spectrum fast = fft2(img);
    const std::vector<std::complex<double>> slow = oracles::dft2(img);
    for (std::size_t i = 0; i < slow.size(); ++i) {
      CHECK(std::abs(fast.data[i] - slow[i]) < 1e-9);
    }
  }
}

TEST_CASE("roundtrip recovers the input within 1e-9 over random 128x128 images") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Plane img = oracles::random_plane(128, 128, 1000 + seed);
    const InversePlane back = ifft2(fft2(img));
    CHECK(oracles::max_abs_diff(back.plane.data, img.data) < 1e-9);
    CHECK(back.max_imag < 1e-9);
  }
}

TEST_CASE("Parseval holds within 1e-6 relative") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Plane img = oracles::random_plane(64, 64, 7000 + seed);
    double spatial = 0.0;
    for (double v : img.data) spatial += v * v;
    const Spectrum s = fft2(img);
    double spectral = 0.0;
    for (const std::complex<double>& c : s.data) spectral += std::norm(c);
    spectral /= static_cast<double>(img.data.size());
    CHECK(std::fabs(spectral - spatial) < 1e-6 * spatial);
  }
}

TEST_CASE("centered spectrum of a real image is conjugate symmetric") {
  const Plane img = oracles::random_plane(32, 32, 42);
  const Spectrum s = fftshift(fft2(img));
  REQUIRE(s.centered);
  const int w = s.width;
  const int h = s.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Negation about the center in centered coordinates.
      const int ny = (h - y) % h;
      const int nx = (w - x) % w;
      const std::complex<double> a = s.at(y, x);
      const std::complex<double> b = std::conj(s.at(ny, nx));
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("all-zero spectrum inverts to an all-zero plane") {
  Spectrum s;
  s.width = 8;
  s.height = 8;
  s.centered = false;
  s.data.assign(64, {0.0, 0.0});
  const InversePlane p = ifft2(s);
  CHECK(max_abs(p.plane.data) == 0.0);
}

TEST_CASE("cosine masked to its own two bins reconstructs exactly") {
  const int n = 32;
  Plane img(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      img.data[static_cast<std::size_t>(y) * n + x] = std::cos(2.0 * oracles::kPi * 5.0 * x / n);
    }
  }
  Spectrum s = fft2(img);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (!(y == 0 && (x == 5 || x == n - 5))) s.at(y, x) = {0.0, 0.0};
    }
  }
  const InversePlane back = ifft2(s);
  CHECK(oracles::max_abs_diff(back.plane.data, img.data) < 1e-9);
}

TEST_CASE("fftshift swaps the quadrants of a 2x2 spectrum") {
  Spectrum s;
  s.width = 2;
  s.height = 2;
  s.centered = false;
  s.data = {{1, 0}, {2, 0}, {3, 0}, {4, 0}};
  const Spectrum t = fftshift(s);
  CHECK(t.centered);
  CHECK(t.at(0, 0) == std::complex<double>(4, 0));
  CHECK(t.at(0, 1) == std::complex<double>(3, 0));
  CHECK(t.at(1, 0) == std::complex<double>(2, 0));
  CHECK(t.at(1, 1) == std::complex<double>(1, 0));
}

TEST_CASE("unshift undoes fftshift exactly") {
  const Plane img = oracles::random_plane(16, 8, 9);
  const Spectrum s = fft2(img);
  const Spectrum back = unshift(fftshift(s));
  CHECK(back.centered == false);
  for (std::size_t i = 0; i < s.data.size(); ++i) CHECK(back.data[i] == s.data[i]);
}

TEST_CASE("fftshift moves DC to the center bin") {
  const Plane img = oracles::random_plane(16, 16, 11);
  const Spectrum s = fft2(img);
  const Spectrum c = fftshift(s);
  CHECK(std::abs(c.at(8, 8) - s.at(0, 0)) == 0.0);
}

TEST_CASE("non-power-of-two dimensions are rejected") {
  Plane img(12, 16);
  CHECK_THROWS_AS(fft2(img), ParameterError);
  Plane empty;
  CHECK_THROWS_AS(fft2(empty), ParameterError);
}

TEST_CASE("ifft2 requires an uncentered spectrum") {
  const Plane img = oracles::random_plane(8, 8, 3);
  Spectrum s = fftshift(fft2(img));
  CHECK_THROWS_AS(ifft2(s), ParameterError);
}

}  // TEST_SUITE
