#pragma once

#include "qwp/core.hpp"
#include "qwp/qwp1d.hpp"
#include "qwp/wp1d.hpp"

namespace qwp {

// Identifies a stored block: level m, vertical band j, horizontal band l.
struct BandKey {
  unsigned m = 1;
  std::size_t j = 0;
  std::size_t l = 0;
  bool operator==(const BandKey& o) const { return m == o.m && j == o.j && l == o.l; }
};

// Dual-tree 2D coefficient forest.  trees[0] carries the ++ combination,
// trees[1] the +- one.  Block (j, l) of level m sits at flat index j*2^m + l;
// every level is stored.  When built with symmetric extension, `n` is the
// doubled working size and `orig_n` the caller's image size.
struct DualTreeForest2D {
  std::size_t n = 0;
  std::size_t orig_n = 0;
  bool extended = false;
  WpParams params;
  std::vector<std::vector<cmat>> trees[2];

  const cmat& band(int tree, unsigned m, std::size_t j, std::size_t l) const {
    return trees[tree][m - 1][j * (std::size_t(1) << m) + l];
  }
  cmat& band(int tree, unsigned m, std::size_t j, std::size_t l) {
    return trees[tree][m - 1][j * (std::size_t(1) << m) + l];
  }
};

// Half-point mirror to double size; the inverse crops the top-left corner.
rmat extend_symmetric(const rmat& x);
rmat crop_topleft(const rmat& x, std::size_t n);

// Merges the four frequency-ordered children of parent (pj, pl) back into the
// parent block with the strided real filter pair of `level` (the level the
// children live on).  children are indexed [a*2 + b] for child
// (2*pj + a, 2*pl + b).  Valid for every level except the quasi-analytic
// level-1 stage, which branches_from_level1 handles.
cmat merge_child_blocks(const std::array<const cmat*, 4>& children, std::size_t pj,
                        std::size_t pl, std::size_t n, unsigned r, unsigned level);

// Branch synthesis from explicit level-1 blocks (flat index j*2 + l per tree).
std::pair<cmat, cmat> branches_from_level1(const std::vector<cmat>& plus,
                                           const std::vector<cmat>& minus, std::size_t n,
                                           unsigned r);

DualTreeForest2D forward2d(const rmat& x, const WpParams& params, bool extend = false);

// Branch images before mixing: X_pm = 4 (X +- i Hh X + i Hv X -+ Hh Hv X),
// at the working (possibly extended) size.
std::pair<cmat, cmat> inverse2d_branches(const DualTreeForest2D& forest, unsigned from_level);

// X = Re(X_plus + X_minus) / 8, cropped back when the forest was built with
// extension.  from_level = 0 picks the deepest stored level.
rmat inverse2d(const DualTreeForest2D& forest, unsigned from_level = 0);

// Directional atom: real and imaginary waveform parts, spectrum magnitude,
// and the spectral-centroid orientation vector (kappa0, nu0).  nu0 is
// negative on the minus tree, matching its lower half-plane support.
struct DirectionalAtom {
  rmat vartheta;
  rmat theta;
  rmat mag_spectrum;
  long kappa0 = 0;
  long nu0 = 0;
};
DirectionalAtom atom2d(std::size_t n, const WpParams& params, unsigned m, std::size_t j,
                       std::size_t l, int sign);

struct AtomOrientation {
  int sign = 1;
  std::size_t j = 0;
  std::size_t l = 0;
  long kappa = 0;
  long nu = 0;
  std::size_t class_id = 0;
};

// Counts distinct orientations at level m.  Atoms on one diagonal of a
// tree's band grid, (j, l) ~ (j+1, l+1), share an orientation class; their
// centroid vectors line up along a common direction.  With 2^{m+1} - 1
// diagonals per tree the count comes out as 2 (2^{m+1} - 1).
struct Census {
  std::size_t classes = 0;
  std::vector<AtomOrientation> atoms;
};
Census orientation_census(std::size_t n, const WpParams& params, unsigned m);

}  // namespace qwp
