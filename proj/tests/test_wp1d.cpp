#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qwp/wp1d.hpp"
#include "test_util.hpp"

using namespace qwp;
using testutil::dot;
using testutil::energy;
using testutil::max_abs_diff;
using testutil::random_image;
using testutil::random_signal;

TEST_CASE("band order is a gray-code permutation") {
  // level 2 order: channel paths 00,01,11,10 land on frequencies 0,1,2,3
  CHECK(band_order_rho(0, 0) == 0);
  CHECK(band_order_rho(0, 1) == 1);
  CHECK(band_order_rho(1, 0) == 3);
  CHECK(band_order_rho(1, 1) == 2);

  for (unsigned m = 1; m <= 5; ++m) {
    const std::uint32_t count = 1u << m;
    std::set<std::uint32_t> seen;
    for (std::uint32_t lambda = 0; lambda < count / 2; ++lambda)
      for (std::uint32_t mu = 0; mu < 2; ++mu) {
        const std::uint32_t rho = band_order_rho(lambda, mu);
        CHECK(rho / 2 == lambda);  // children of lambda stay adjacent
        seen.insert(rho);
      }
    CHECK(seen.size() == count);
  }
}

TEST_CASE("band channel inverts the ordering") {
  for (std::uint32_t rho = 0; rho < 64; ++rho)
    CHECK(band_order_rho(rho / 2, band_channel_mu(rho)) == rho);
}

TEST_CASE("modulation matrices are unitary up to sqrt(2)") {
  const std::size_t n = 64;
  const FilterSpectra fs = beta_alpha(n, 4);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const auto a = analysis_mod_matrix(fs, k);
    // A^H A = 2 I
    const cplx g00 = std::conj(a[0]) * a[0] + std::conj(a[2]) * a[2];
    const cplx g01 = std::conj(a[0]) * a[1] + std::conj(a[2]) * a[3];
    const cplx g11 = std::conj(a[1]) * a[1] + std::conj(a[3]) * a[3];
    CHECK(std::abs(g00 - 2.0) < 1e-12);
    CHECK(std::abs(g01) < 1e-12);
    CHECK(std::abs(g11 - 2.0) < 1e-12);

    const auto s = synthesis_mod_matrix(fs, k);
    CHECK(s[0] == a[0]);
    CHECK(s[1] == a[2]);
    CHECK(s[2] == a[1]);
    CHECK(s[3] == a[3]);
  }
}

TEST_CASE("step filters subsample the level-1 spectra") {
  const std::size_t n = 64;
  const unsigned r = 3;
  const FilterSpectra fs = beta_alpha(n, r);
  for (unsigned level = 1; level <= 3; ++level) {
    const std::size_t band_len = n >> (level - 1);
    const StepFilters sf = wp_step_filters(n, r, level);
    REQUIRE(sf.h0.size() == band_len);
    const std::size_t stride = std::size_t(1) << (level - 1);
    for (std::size_t v = 0; v < band_len; ++v) {
      CHECK(std::abs(sf.h0[v] - cplx(fs.beta[(v * stride) % n], 0.0)) < 1e-15);
      CHECK(std::abs(sf.h1[v] - fs.alpha[(v * stride) % n]) < 1e-15);
    }
  }
}

TEST_CASE("one level round trip and energy split") {
  for (std::size_t n : {16u, 64u, 256u}) {
    for (unsigned r = 1; r <= 6; ++r) {
      const rvec x = random_signal(n, 100 * n + r);
      const auto [y0, y1] = one_level_forward(x, r);
      REQUIRE(y0.size() == n / 2);
      CHECK(energy(y0) + energy(y1) == doctest::Approx(energy(x)).epsilon(1e-12));
      CHECK(max_abs_diff(one_level_inverse(y0, y1, r), x) < 1e-11);
    }
  }
}

TEST_CASE("multi level transform is orthonormal and invertible") {
  const std::size_t n = 128;
  for (unsigned m = 1; m <= 4; ++m) {
    WpParams p{6, m};
    const rvec x = random_signal(n, 40 + m);
    const Wp1dForest forest = multi_level_forward(x, p);
    REQUIRE(forest.levels.size() == m);
    for (unsigned level = 1; level <= m; ++level) {
      double total = 0.0;
      for (std::size_t l = 0; l < (std::size_t(1) << level); ++l)
        total += energy(forest.band(level, l));
      CHECK(total == doctest::Approx(energy(x)).epsilon(1e-11));
    }
    for (unsigned from = 1; from <= m; ++from)
      CHECK(max_abs_diff(multi_level_inverse(forest, from), x) < 1e-10);
  }
}

TEST_CASE("waveform spectrum matches the dft of the waveform") {
  const std::size_t n = 64;
  WpParams p{8, 3};
  for (std::size_t l = 0; l < 8; ++l) {
    const cvec spec = waveform_spectrum(n, p, 3, l);
    const rvec w = waveform(n, p, 3, l);
    const cvec direct = dft(w);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(spec[k] - direct[k]) < 1e-10);
  }
}

TEST_CASE("band frequency centers increase in band order") {
  const std::size_t n = 128;
  WpParams p{10, 3};
  double prev = -1.0;
  for (std::size_t l = 0; l < 8; ++l) {
    const cvec spec = waveform_spectrum(n, p, 3, l);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double mag2 = std::norm(spec[k]) + (k > 0 && k < n / 2 ? std::norm(spec[n - k]) : 0.0);
      num += double(k) * mag2;
      den += mag2;
    }
    const double center = num / den;
    CHECK(center > prev);
    prev = center;
  }
}

TEST_CASE("waveform shifts form an orthonormal basis") {
  const std::size_t n = 128;
  for (unsigned m = 1; m <= 3; ++m) {
    WpParams p{8, m};
    const std::size_t bands = std::size_t(1) << m;
    const std::size_t shifts = n >> m;
    std::vector<rvec> atoms;
    for (std::size_t l = 0; l < bands; ++l) {
      const rvec w = waveform(n, p, m, l);
      for (std::size_t q = 0; q < shifts; ++q) {
        rvec shifted(n);
        const std::size_t off = q << m;
        for (std::size_t k = 0; k < n; ++k) shifted[(k + off) % n] = w[k];
        atoms.push_back(std::move(shifted));
      }
    }
    REQUIRE(atoms.size() == n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double g = dot(atoms[i], atoms[j]);
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("level-1 waveforms have the expected symmetry centers") {
  const std::size_t n = 64;
  WpParams p{6, 1};
  const rvec w0 = waveform(n, p, 1, 0);
  const rvec w1 = waveform(n, p, 1, 1);
  for (std::size_t t = 0; t < n; ++t) {
    CHECK(w0[t] == doctest::Approx(w0[(n - t) % n]).epsilon(1e-10));  // even about 0
    // the high channel carries a one-sample phase, even about n-1
    CHECK(w1[(n - 1 + t) % n] == doctest::Approx(w1[(2 * n - 1 - t) % n]).epsilon(1e-10));
  }
}

TEST_CASE("coefficients are correlations with the shifted waveforms") {
  const std::size_t n = 64;
  WpParams p{8, 2};
  const rvec x = random_signal(n, 77);
  const Wp1dForest forest = multi_level_forward(x, p);
  for (std::size_t l = 0; l < 4; ++l) {
    const rvec w = waveform(n, p, 2, l);
    const rvec& c = forest.band(2, l);
    for (std::size_t q = 0; q < n / 4; ++q) {
      rvec shifted(n);
      for (std::size_t k = 0; k < n; ++k) shifted[(k + 4 * q) % n] = w[k];
      CHECK(c[q] == doctest::Approx(dot(x, shifted)).epsilon(1e-9));
    }
  }
}

TEST_CASE("tensor 2d transform conserves energy and inverts") {
  const std::size_t n = 32;
  WpParams p{4, 2};
  const rmat img = random_image(n, 5);
  const Wp2dForest forest = wp2d_forward(img, p);
  for (unsigned level = 1; level <= 2; ++level) {
    double total = 0.0;
    const std::size_t side = std::size_t(1) << level;
    for (std::size_t j = 0; j < side; ++j)
      for (std::size_t l = 0; l < side; ++l) total += energy(forest.band(level, j, l));
    CHECK(total == doctest::Approx(energy(img)).epsilon(1e-11));
  }
  for (unsigned from = 1; from <= 2; ++from)
    CHECK(max_abs_diff(wp2d_inverse(forest, from), img) < 1e-10);
}

TEST_CASE("2d bands match row-column filtering of the image") {
  // the (0,0) block after one level equals column-lowpass of row-lowpass
  const std::size_t n = 16;
  WpParams p{6, 1};
  const rmat img = random_image(n, 9, -1.0, 1.0);
  const Wp2dForest forest = wp2d_forward(img, p);

  const unsigned r = p.r();
  std::vector<rvec> row_low(n);
  for (std::size_t rr = 0; rr < n; ++rr) {
    rvec row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = img(rr, c);
    row_low[rr] = one_level_forward(row, r).first;
  }
  for (std::size_t c = 0; c < n / 2; ++c) {
    rvec col(n);
    for (std::size_t rr = 0; rr < n; ++rr) col[rr] = row_low[rr][c];
    const rvec low = one_level_forward(col, r).first;
    for (std::size_t rr = 0; rr < n / 2; ++rr)
      CHECK(forest.band(1, 0, 0)(rr, c) == doctest::Approx(low[rr]).epsilon(1e-10));
  }
}

TEST_CASE("parameter validation rejects bad shapes") {
  const WpParams odd_order{3, 2};
  const WpParams too_high{14, 2};
  const WpParams too_deep{8, 5};
  const WpParams good{8, 4};
  CHECK_THROWS_AS(odd_order.validate(64), Error);
  CHECK_THROWS_AS(too_high.validate(64), Error);
  CHECK_THROWS_AS(too_deep.validate(64), Error);
  CHECK_THROWS_AS(good.validate(60), Error);  // not a power of two
  CHECK_NOTHROW(good.validate(64));
}
