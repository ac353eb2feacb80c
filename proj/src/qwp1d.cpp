#include "qwp/qwp1d.hpp"

#include <cmath>

namespace qwp {

namespace {

// Signed multiplier with the two shared bins kept: this is what turns a
// symmetric packet into its antisymmetric counterpart while leaving the
// endpoint bands consistent with the cascade construction.
cvec keep_endpoint_hilbert(const cvec& spec) {
  const std::size_t n = spec.size();
  const std::size_t half = n / 2;
  cvec out(n);
  out[0] = spec[0];
  out[half] = spec[half];
  for (std::size_t k = 1; k < half; ++k) out[k] = cplx(0.0, -1.0) * spec[k];
  for (std::size_t k = half + 1; k < n; ++k) out[k] = cplx(0.0, 1.0) * spec[k];
  return out;
}

cvec to_cvec(const rvec& x) { return cvec(x.begin(), x.end()); }

}  // namespace

CwpFilterSpectra cwp_filter_spectra(std::size_t n, unsigned r) {
  const FilterSpectra f = beta_alpha(n, r);
  CwpFilterSpectra out;
  out.beta_check.resize(n);
  out.alpha_check.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.beta_check[k] = k == 0 ? cplx(f.beta[0]) : cplx(0.0, -1.0) * f.beta[k];
    out.alpha_check[k] = k == n / 2 ? f.alpha[n / 2] : cplx(0.0, -1.0) * f.alpha[k];
  }
  out.g0 = keep_endpoint_hilbert(cvec(f.beta.begin(), f.beta.end()));
  out.g1 = keep_endpoint_hilbert(f.alpha);
  return out;
}

cvec cwp_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l) {
  return keep_endpoint_hilbert(waveform_spectrum(n, params, m, l));
}

cvec cwp_cascade(std::size_t n, const WpParams& params, unsigned m, std::size_t l) {
  params.validate(n);
  require(m >= 1 && m <= params.levels, Status::invalid_argument, "cascade level out of range");
  require(l < (std::size_t(1) << m), Status::invalid_argument, "cascade band out of range");

  // Channel choices along the path from the root to band l.
  std::vector<std::uint32_t> mu_at_level(m);
  std::uint32_t rho = static_cast<std::uint32_t>(l);
  for (unsigned level = m; level >= 1; --level) {
    mu_at_level[level - 1] = band_channel_mu(rho);
    rho /= 2;
  }

  const CwpFilterSpectra cf = cwp_filter_spectra(n, params.r());
  const FilterSpectra base = beta_alpha(n, params.r());
  cvec spec = mu_at_level[0] == 0 ? cf.g0 : cf.g1;
  for (unsigned level = 2; level <= m; ++level) {
    const std::size_t stride = std::size_t(1) << (level - 1);
    const bool low = mu_at_level[level - 1] == 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (k * stride) % n;
      spec[k] *= low ? cplx(base.beta[idx]) : base.alpha[idx];
    }
  }
  return spec;
}

rvec cwp_waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l) {
  return idft_real(cwp_spectrum(n, params, m, l));
}

QwpFilters qwp_filters(std::size_t n, unsigned r) {
  const FilterSpectra f = beta_alpha(n, r);
  const CwpFilterSpectra cf = cwp_filter_spectra(n, r);
  QwpFilters out;
  out.q0p.resize(n);
  out.q1p.resize(n);
  out.q0m.resize(n);
  out.q1m.resize(n);
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.q0p[k] = f.beta[k] + i * cf.g0[k];
    out.q1p[k] = f.alpha[k] + i * cf.g1[k];
    out.q0m[k] = f.beta[k] - i * cf.g0[k];
    out.q1m[k] = f.alpha[k] - i * cf.g1[k];
  }
  return out;
}

std::array<cplx, 4> qwp_analysis_matrix(const QwpFilters& f, std::size_t n, int sign) {
  require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
  const std::size_t len = f.q0p.size();
  const std::size_t lo = n % len;
  const std::size_t hi = (n + len / 2) % len;
  const cvec& q0 = sign > 0 ? f.q0p : f.q0m;
  const cvec& q1 = sign > 0 ? f.q1p : f.q1m;
  return {q0[lo], q0[hi], q1[lo], q1[hi]};
}

std::array<cplx, 4> qwp_synthesis_matrix(const QwpFilters& f, std::size_t n, int sign) {
  auto m = qwp_analysis_matrix(f, n, sign);
  std::swap(m[1], m[2]);
  return m;
}

QwpLevel1 qwp_one_level_forward(const rvec& x, unsigned r) {
  const QwpFilters f = qwp_filters(x.size(), r);
  const cvec xc = to_cvec(x);
  QwpLevel1 out;
  auto plus = fb_forward_step(xc, f.q0p, f.q1p);
  auto minus = fb_forward_step(xc, f.q0m, f.q1m);
  out.z0p = std::move(plus.first);
  out.z1p = std::move(plus.second);
  out.z0m = std::move(minus.first);
  out.z1m = std::move(minus.second);
  return out;
}

cvec qwp_one_level_synthesis(const cvec& z0, const cvec& z1, unsigned r, int sign) {
  require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
  const QwpFilters f = qwp_filters(z0.size() * 2, r);
  return sign > 0 ? fb_inverse_step(z0, z1, f.q0p, f.q1p)
                  : fb_inverse_step(z0, z1, f.q0m, f.q1m);
}

Qwp1dForest qwp_multi_level_forward(const rvec& x, const WpParams& params) {
  params.validate(x.size());
  Qwp1dForest forest;
  forest.n = x.size();
  forest.params = params;

  QwpLevel1 level1 = qwp_one_level_forward(x, params.r());
  for (int tree = 0; tree < 2; ++tree) {
    forest.trees[tree].resize(params.levels);
    forest.trees[tree][0] = {tree == 0 ? level1.z0p : level1.z0m,
                             tree == 0 ? level1.z1p : level1.z1m};
    for (unsigned m = 2; m <= params.levels; ++m) {
      const StepFilters f = wp_step_filters(forest.n, params.r(), m);
      const auto& parents = forest.trees[tree][m - 2];
      std::vector<cvec> children(std::size_t(1) << m);
      for (std::uint32_t lambda = 0; lambda < parents.size(); ++lambda) {
        auto [c0, c1] = fb_forward_step(parents[lambda], f.h0, f.h1);
        children[band_order_rho(lambda, 0)] = std::move(c0);
        children[band_order_rho(lambda, 1)] = std::move(c1);
      }
      forest.trees[tree][m - 1] = std::move(children);
    }
  }
  return forest;
}

cvec qwp_tree_synthesis(const Qwp1dForest& forest, int tree, unsigned from_level) {
  require(tree == 0 || tree == 1, Status::invalid_argument, "tree index must be 0 or 1");
  require(from_level >= 1 && from_level <= forest.trees[tree].size(), Status::invalid_argument,
          "reconstruction level out of range");
  std::vector<cvec> bands = forest.trees[tree][from_level - 1];
  for (unsigned m = from_level; m >= 2; --m) {
    const StepFilters f = wp_step_filters(forest.n, forest.params.r(), m);
    std::vector<cvec> parents(bands.size() / 2);
    for (std::uint32_t lambda = 0; lambda < parents.size(); ++lambda) {
      parents[lambda] = fb_inverse_step(bands[band_order_rho(lambda, 0)],
                                        bands[band_order_rho(lambda, 1)], f.h0, f.h1);
    }
    bands = std::move(parents);
  }
  return qwp_one_level_synthesis(bands[0], bands[1], forest.params.r(), tree == 0 ? 1 : -1);
}

rvec qwp_multi_level_inverse(const Qwp1dForest& forest, unsigned from_level) {
  const cvec splus = qwp_tree_synthesis(forest, 0, from_level);
  const cvec sminus = qwp_tree_synthesis(forest, 1, from_level);
  rvec out(forest.n);
  for (std::size_t k = 0; k < forest.n; ++k)
    out[k] = 0.25 * (splus[k].real() + sminus[k].real());
  return out;
}

cvec qwp_waveform_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l,
                           int sign) {
  require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
  const cvec psi = waveform_spectrum(n, params, m, l);
  const cvec phi = cwp_spectrum(n, params, m, l);
  cvec out(n);
  const cplx is(0.0, sign > 0 ? 1.0 : -1.0);
  for (std::size_t k = 0; k < n; ++k) out[k] = psi[k] + is * phi[k];
  return out;
}

cvec qwp_waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l, int sign) {
  return idft(qwp_waveform_spectrum(n, params, m, l, sign));
}

}  // namespace qwp
