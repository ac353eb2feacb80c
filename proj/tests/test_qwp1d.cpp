#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwp/qwp1d.hpp"
#include "test_util.hpp"

using namespace qwp;
using testutil::dot;
using testutil::energy;
using testutil::max_abs_diff;
using testutil::random_signal;

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

TEST_CASE("complementary filter spectra endpoints and magnitudes") {
  const std::size_t n = 64;
  for (unsigned r : {1u, 3u, 4u, 6u}) {
    const FilterSpectra fs = beta_alpha(n, r);
    const CwpFilterSpectra cs = cwp_filter_spectra(n, r);
    CHECK(std::abs(cs.g0[0] - cplx(kSqrt2, 0.0)) < 1e-12);
    CHECK(std::abs(cs.g0[n / 2]) < 1e-12);
    CHECK(std::abs(cs.g1[0]) < 1e-12);
    CHECK(std::abs(cs.g1[n / 2] - cplx(-kSqrt2, 0.0)) < 1e-12);
    for (std::size_t k = 0; k < n; ++k) {
      // the multiplier is unimodular away from its kept bins, so the
      // complementary pair inherits the power identity
      CHECK(std::abs(cs.g0[k]) == doctest::Approx(std::abs(fs.beta[k])).epsilon(1e-12));
      CHECK(std::abs(cs.g1[k]) == doctest::Approx(std::abs(fs.alpha[k])).epsilon(1e-12));
      CHECK(std::norm(cs.g0[k]) + std::norm(cs.g1[k]) == doctest::Approx(2.0).epsilon(1e-12));
    }
    // checked sequences follow the -i convention away from their real bins
    for (std::size_t k = 1; k < n; ++k)
      CHECK(std::abs(cs.beta_check[k] - cplx(0.0, -1.0) * fs.beta[k]) < 1e-12);
    CHECK(std::abs(cs.beta_check[0] - cplx(kSqrt2, 0.0)) < 1e-12);
    CHECK(std::abs(cs.alpha_check[n / 2] - cplx(-kSqrt2, 0.0)) < 1e-12);
  }
}

TEST_CASE("complementary spectrum equals the independent cascade") {
  for (std::size_t n : {64u, 128u}) {
    for (unsigned r : {2u, 4u, 5u}) {
      for (unsigned m = 1; m <= 3; ++m) {
        WpParams p{2 * r, m};
        for (std::size_t l = 0; l < (std::size_t(1) << m); ++l) {
          const cvec direct = cwp_spectrum(n, p, m, l);
          const cvec cascade = cwp_cascade(n, p, m, l);
          CHECK(max_abs_diff(direct, cascade) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("complementary waveform shifts are orthonormal") {
  const std::size_t n = 128;
  for (unsigned m = 1; m <= 3; ++m) {
    WpParams p{8, m};
    const std::size_t bands = std::size_t(1) << m;
    const std::size_t shifts = n >> m;
    std::vector<rvec> atoms;
    for (std::size_t l = 0; l < bands; ++l) {
      const rvec w = cwp_waveform(n, p, m, l);
      for (std::size_t q = 0; q < shifts; ++q) {
        rvec shifted(n);
        for (std::size_t k = 0; k < n; ++k) shifted[(k + (q << m)) % n] = w[k];
        atoms.push_back(std::move(shifted));
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        worst = std::max(worst, std::abs(dot(atoms[i], atoms[j]) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("quasi-analytic filters have one-sided support") {
  const std::size_t n = 128;
  const QwpFilters f = qwp_filters(n, 4);
  CHECK(std::abs(f.q0p[0] - cplx(kSqrt2, kSqrt2)) < 1e-12);
  CHECK(std::abs(f.q1p[n / 2] - cplx(-kSqrt2, -kSqrt2)) < 1e-12);
  CHECK(std::abs(f.q0m[0] - cplx(kSqrt2, -kSqrt2)) < 1e-12);
  CHECK(std::abs(f.q1m[n / 2] - cplx(-kSqrt2, kSqrt2)) < 1e-12);
  for (std::size_t k = n / 2 + 1; k < n; ++k) {
    CHECK(std::abs(f.q0p[k]) < 1e-12);
    CHECK(std::abs(f.q1p[k]) < 1e-12);
  }
  for (std::size_t k = 1; k < n / 2; ++k) {
    CHECK(std::abs(f.q0m[k]) < 1e-12);
    CHECK(std::abs(f.q1m[k]) < 1e-12);
  }
  // minus filters are the mirrored conjugates of the plus filters
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(f.q0m[k] - std::conj(f.q0p[(n - k) % n])) < 1e-12);
    CHECK(std::abs(f.q1m[k] - std::conj(f.q1p[(n - k) % n])) < 1e-12);
  }
}

TEST_CASE("one level energy identity holds exactly") {
  for (std::size_t n : {16u, 64u, 256u}) {
    for (unsigned r = 1; r <= 6; ++r) {
      // include awkward inputs: random, constant, delta
      std::vector<rvec> inputs;
      inputs.push_back(random_signal(n, n + r));
      inputs.push_back(rvec(n, 1.0));
      rvec delta(n, 0.0);
      delta[3] = 1.0;
      inputs.push_back(delta);
      for (const rvec& x : inputs) {
        const QwpLevel1 z = qwp_one_level_forward(x, r);
        const double ex = energy(x);
        CHECK(energy(z.z0p) + energy(z.z1p) == doctest::Approx(2.0 * ex).epsilon(1e-9));
        CHECK(energy(z.z0m) + energy(z.z1m) == doctest::Approx(2.0 * ex).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("minus coefficients conjugate the plus coefficients for real input") {
  const std::size_t n = 64;
  const rvec x = random_signal(n, 15);
  const QwpLevel1 z = qwp_one_level_forward(x, 3);
  for (std::size_t k = 0; k < n / 2; ++k) {
    CHECK(std::abs(z.z0m[k] - std::conj(z.z0p[k])) < 1e-11);
    CHECK(std::abs(z.z1m[k] - std::conj(z.z1p[k])) < 1e-11);
  }
}

TEST_CASE("tree synthesis after analysis yields the analytic branches") {
  for (std::size_t n : {64u, 256u, 1024u}) {
    const rvec x = random_signal(n, 2 * n + 1);
    const auto [want_plus, want_minus] = analytic_pair(x);

    SUBCASE("one level") {
      const QwpLevel1 z = qwp_one_level_forward(x, 5);
      const cvec sp = qwp_one_level_synthesis(z.z0p, z.z1p, 5, +1);
      const cvec sm = qwp_one_level_synthesis(z.z0m, z.z1m, 5, -1);
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        worst = std::max(worst, std::abs(sp[k] - 2.0 * want_plus[k]));
        worst = std::max(worst, std::abs(sm[k] - 2.0 * want_minus[k]));
      }
      CHECK(worst < 1e-9);
    }

    SUBCASE("multi level") {
      WpParams p{10, 3};
      const Qwp1dForest forest = qwp_multi_level_forward(x, p);
      const cvec sp = qwp_tree_synthesis(forest, 0, 3);
      const cvec sm = qwp_tree_synthesis(forest, 1, 3);
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        worst = std::max(worst, std::abs(sp[k] - 2.0 * want_plus[k]));
        worst = std::max(worst, std::abs(sm[k] - 2.0 * want_minus[k]));
      }
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("dual tree transform reconstructs the input") {
  const std::size_t n = 256;
  for (unsigned m = 1; m <= 4; ++m) {
    WpParams p{8, m};
    const rvec x = random_signal(n, 31 + m);
    const Qwp1dForest forest = qwp_multi_level_forward(x, p);
    for (unsigned from = 1; from <= m; ++from)
      CHECK(max_abs_diff(qwp_multi_level_inverse(forest, from), x) < 1e-10);
  }
}

TEST_CASE("per-level tight frame factor two in each tree") {
  const std::size_t n = 128;
  WpParams p{6, 3};
  const rvec x = random_signal(n, 90);
  const Qwp1dForest forest = qwp_multi_level_forward(x, p);
  for (int tree = 0; tree < 2; ++tree)
    for (unsigned level = 1; level <= 3; ++level) {
      double total = 0.0;
      for (std::size_t l = 0; l < (std::size_t(1) << level); ++l)
        total += energy(forest.band(tree, level, l));
      CHECK(total == doctest::Approx(2.0 * energy(x)).epsilon(1e-9));
    }
}

TEST_CASE("waveform spectra combine the real and complementary parts") {
  const std::size_t n = 128;
  WpParams p{8, 2};
  for (std::size_t l = 0; l < 4; ++l) {
    const cvec psi = waveform_spectrum(n, p, 2, l);
    const cvec phi = cwp_spectrum(n, p, 2, l);
    const cvec plus = qwp_waveform_spectrum(n, p, 2, l, +1);
    const cvec minus = qwp_waveform_spectrum(n, p, 2, l, -1);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(plus[k] - (psi[k] + cplx(0.0, 1.0) * phi[k])) < 1e-12);
      CHECK(std::abs(minus[k] - (psi[k] - cplx(0.0, 1.0) * phi[k])) < 1e-12);
    }
  }
}

TEST_CASE("interior band spectra live on one side only") {
  const std::size_t n = 256;
  for (unsigned m : {2u, 3u}) {
    WpParams p{10, m};
    for (std::size_t l = 0; l < (std::size_t(1) << m); ++l) {
      const cvec plus = qwp_waveform_spectrum(n, p, m, l, +1);
      const cvec minus = qwp_waveform_spectrum(n, p, m, l, -1);
      double total_p = 0.0, upper_p = 0.0, total_m = 0.0, lower_m = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        total_p += std::norm(plus[k]);
        total_m += std::norm(minus[k]);
        if (k > n / 2) upper_p += std::norm(plus[k]);
        if (k > 0 && k < n / 2) lower_m += std::norm(minus[k]);
      }
      CHECK(upper_p / total_p < 1e-10);
      CHECK(lower_m / total_m < 1e-10);
    }
  }
}

TEST_CASE("real and complementary parts of the analytic waveform") {
  const std::size_t n = 64;
  WpParams p{6, 2};
  for (std::size_t l = 0; l < 4; ++l) {
    const cvec wave = qwp_waveform(n, p, 2, l, +1);
    const rvec psi = waveform(n, p, 2, l);
    const rvec phi = cwp_waveform(n, p, 2, l);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(wave[k].real() == doctest::Approx(psi[k]).epsilon(1e-10));
      CHECK(wave[k].imag() == doctest::Approx(phi[k]).epsilon(1e-10));
    }
  }
}
