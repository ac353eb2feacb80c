#pragma once

#include "qwp/core.hpp"
#include "qwp/wp1d.hpp"

namespace qwp {

// Checked level-1 sequences for the complementary filter pair.  beta_check[0]
// and alpha_check[N/2] stay real (sqrt(2) and -sqrt(2)); every other entry is
// -i times the corresponding real-pair entry.  The matrix entries themselves
// are taken from the filter spectra g0/g1 below, which differ from the checked
// shorthand at one endpoint bin.
struct CwpFilterSpectra {
  cvec beta_check;
  cvec alpha_check;
  cvec g0;  // level-1 complementary lowpass spectrum, full grid
  cvec g1;  // level-1 complementary highpass spectrum, full grid
};
CwpFilterSpectra cwp_filter_spectra(std::size_t n, unsigned r);

// Spectrum of the complementary waveform phi_{[m],l}: the signed Hilbert
// multiplier applied to the packet spectrum, with the n = 0 and n = N/2 bins
// kept instead of zeroed.
cvec cwp_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l);

// Same waveform by the independent cascade route: the level-1 complementary
// filter spectrum of the band's ancestor times strided real filter spectra
// for the deeper levels.
cvec cwp_cascade(std::size_t n, const WpParams& params, unsigned m, std::size_t l);

rvec cwp_waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l);

// Level-1 quasi-analytic filter spectra q^mu_pm = psi_hat^mu +- i g^mu.  The
// plus pair is supported on [0, N/2], the minus pair on [N/2, N] union {0}.
struct QwpFilters {
  cvec q0p, q1p;
  cvec q0m, q1m;
};
QwpFilters qwp_filters(std::size_t n, unsigned r);

// Analysis matrices Mt_pm[n] (row-major 2x2), evaluated from the q spectra.
std::array<cplx, 4> qwp_analysis_matrix(const QwpFilters& f, std::size_t n, int sign);
std::array<cplx, 4> qwp_synthesis_matrix(const QwpFilters& f, std::size_t n, int sign);

struct QwpLevel1 {
  cvec z0p, z1p;
  cvec z0m, z1m;
};
QwpLevel1 qwp_one_level_forward(const rvec& x, unsigned r);

// Synthesis of one tree from its level-1 pair.  Applied right after analysis
// it returns 2 * (x +- i H(x)).
cvec qwp_one_level_synthesis(const cvec& z0, const cvec& z1, unsigned r, int sign);

// Dual-tree coefficient forest; trees[0] is the plus tree, trees[1] the minus
// tree, both frequency ordered and stored at every level.
struct Qwp1dForest {
  std::size_t n = 0;
  WpParams params;
  std::vector<std::vector<cvec>> trees[2];

  const cvec& band(int tree, unsigned m, std::size_t l) const { return trees[tree][m - 1][l]; }
  cvec& band(int tree, unsigned m, std::size_t l) { return trees[tree][m - 1][l]; }
};

Qwp1dForest qwp_multi_level_forward(const rvec& x, const WpParams& params);

// Per-tree synthesis up to the full length, from a chosen level.
cvec qwp_tree_synthesis(const Qwp1dForest& forest, int tree, unsigned from_level);

// x = Re(S_plus + S_minus) / 4, the constant being fixed by perfect
// reconstruction of the two analytic branches.
rvec qwp_multi_level_inverse(const Qwp1dForest& forest, unsigned from_level);

// Quasi-analytic waveform Psi_pm,{[m],l} and its spectrum.
cvec qwp_waveform_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l,
                           int sign);
cvec qwp_waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l, int sign);

}  // namespace qwp
