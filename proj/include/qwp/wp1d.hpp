#pragma once

#include <array>
#include <cstdint>

#include "qwp/core.hpp"

namespace qwp {

// Transform parameters shared by every packet transform in the library.
// `order` is the spline order 2r (even, 2..12); `levels` is the decomposition
// depth M.  Bands must keep at least 4 samples, so 2^levels <= N/4.
struct WpParams {
  unsigned order = 8;
  unsigned levels = 3;

  unsigned r() const { return order / 2; }
  void validate(std::size_t n) const;
};

// Frequency (Gray-code) band index at the next level: band lambda filtered by
// channel mu lands at rho = 2*lambda + mu for even lambda and rho = 2*lambda +
// (1 - mu) for odd lambda.  In this ordering the children of band lambda are
// always {2*lambda, 2*lambda + 1} and band centers increase monotonically.
std::uint32_t band_order_rho(std::uint32_t lambda, std::uint32_t mu);

// Channel index mu that produced frequency-ordered child rho of parent rho/2.
std::uint32_t band_channel_mu(std::uint32_t rho);

// 2x2 modulation matrices at bin n, row-major {a00, a01, a10, a11}:
//   analysis  Mt[n] = [[beta[n], beta[n+N/2]], [alpha[n], alpha[n+N/2]]]
//   synthesis M[n]  = Mt[n]^T
// Mt[n]/sqrt(2) is unitary for every n.
std::array<cplx, 4> analysis_mod_matrix(const FilterSpectra& f, std::size_t n);
std::array<cplx, 4> synthesis_mod_matrix(const FilterSpectra& f, std::size_t n);

// Filter spectra used by the level-m step (stride 2^{m-1} subsampling of the
// level-1 pair), on the grid of the band being split.
struct StepFilters {
  cvec h0;
  cvec h1;
};
StepFilters wp_step_filters(std::size_t n, unsigned r, unsigned level);

// One analysis/synthesis step of the real packet transform.  The outputs are
// in channel order (h0, h1); multi-level drivers reorder by band_order_rho.
std::pair<rvec, rvec> one_level_forward(const rvec& x, unsigned r);
rvec one_level_inverse(const rvec& y0, const rvec& y1, unsigned r);

// All levels are stored; level m holds 2^m bands of N/2^m samples each, in
// frequency order.
struct Wp1dForest {
  std::size_t n = 0;
  WpParams params;
  std::vector<std::vector<rvec>> levels;  // levels[m-1][l]

  const rvec& band(unsigned m, std::size_t l) const { return levels[m - 1][l]; }
  rvec& band(unsigned m, std::size_t l) { return levels[m - 1][l]; }
};

Wp1dForest multi_level_forward(const rvec& x, const WpParams& params);
rvec multi_level_inverse(const Wp1dForest& forest, unsigned from_level);

// Waveform psi_{[m],l} (zero shift) and its full-grid spectrum, built by the
// cascade product of strided level-1 filter spectra.
cvec waveform_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l);
rvec waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l);

// Tensor-product 2D packet transform (separable, both axes real).  Level m
// holds 2^m x 2^m blocks of (N/2^m)^2 samples; block (j, l) sits at flat index
// j * 2^m + l, j indexing the column (vertical) axis.
struct Wp2dForest {
  std::size_t n = 0;
  WpParams params;
  std::vector<std::vector<rmat>> levels;

  const rmat& band(unsigned m, std::size_t j, std::size_t l) const {
    return levels[m - 1][j * (std::size_t(1) << m) + l];
  }
  rmat& band(unsigned m, std::size_t j, std::size_t l) {
    return levels[m - 1][j * (std::size_t(1) << m) + l];
  }
};

Wp2dForest wp2d_forward(const rmat& x, const WpParams& params);
rmat wp2d_inverse(const Wp2dForest& forest, unsigned from_level);

}  // namespace qwp
