#include "qwp/qwp2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

namespace qwp {

namespace {

// Splits every block of a level into its four children with the strided real
// filter pair; `level` is the level being created (>= 2).
std::vector<cmat> split_level(const std::vector<cmat>& parents, std::size_t n, unsigned r,
                              unsigned level) {
  const StepFilters f = wp_step_filters(n, r, level);
  const std::size_t side = std::size_t(1) << level;
  const std::size_t parent_side = side / 2;
  std::vector<cmat> children(side * side);
  for (std::size_t pj = 0; pj < parent_side; ++pj) {
    for (std::size_t pl = 0; pl < parent_side; ++pl) {
      const cmat& block = parents[pj * parent_side + pl];
      auto [row0, row1] = fb_forward_rows(block, f.h0, f.h1);
      for (std::uint32_t mu_row = 0; mu_row < 2; ++mu_row) {
        const cmat& half = mu_row == 0 ? row0 : row1;
        auto [col0, col1] = fb_forward_rows(half.transposed(), f.h0, f.h1);
        const std::size_t cl = band_order_rho(static_cast<std::uint32_t>(pl), mu_row);
        for (std::uint32_t mu_col = 0; mu_col < 2; ++mu_col) {
          const std::size_t cj = band_order_rho(static_cast<std::uint32_t>(pj), mu_col);
          children[cj * side + cl] = (mu_col == 0 ? col0 : col1).transposed();
        }
      }
    }
  }
  return children;
}

// Merges the blocks of `level` back into their parents.
std::vector<cmat> merge_level(const std::vector<cmat>& bands, std::size_t n, unsigned r,
                              unsigned level) {
  const std::size_t side = std::size_t(1) << level;
  const std::size_t parent_side = side / 2;
  std::vector<cmat> parents(parent_side * parent_side);
  for (std::size_t pj = 0; pj < parent_side; ++pj) {
    for (std::size_t pl = 0; pl < parent_side; ++pl) {
      std::array<const cmat*, 4> children{};
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          children[a * 2 + b] = &bands[(2 * pj + a) * side + (2 * pl + b)];
      parents[pj * parent_side + pl] = merge_child_blocks(children, pj, pl, n, r, level);
    }
  }
  return parents;
}

cmat conj_mat(const cmat& x) {
  cmat out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.raw()[i] = std::conj(x.raw()[i]);
  return out;
}

}  // namespace

cmat merge_child_blocks(const std::array<const cmat*, 4>& children, std::size_t pj,
                        std::size_t pl, std::size_t n, unsigned r, unsigned level) {
  const StepFilters f = wp_step_filters(n, r, level);
  // Local child offsets holding filter channel 0 on each axis; the Gray-code
  // ordering swaps them for odd parents.
  const std::size_t b0 = band_order_rho(static_cast<std::uint32_t>(pl), 0) - 2 * pl;
  const std::size_t a0 = band_order_rho(static_cast<std::uint32_t>(pj), 0) - 2 * pj;
  std::array<cmat, 2> rows_merged;  // indexed by local horizontal offset
  for (std::size_t b = 0; b < 2; ++b) {
    const cmat c0 = children[a0 * 2 + b]->transposed();
    const cmat c1 = children[(1 - a0) * 2 + b]->transposed();
    rows_merged[b] = fb_inverse_rows(c0, c1, f.h0, f.h1).transposed();
  }
  return fb_inverse_rows(rows_merged[b0], rows_merged[1 - b0], f.h0, f.h1);
}

std::pair<cmat, cmat> branches_from_level1(const std::vector<cmat>& plus,
                                           const std::vector<cmat>& minus, std::size_t n,
                                           unsigned r) {
  require(plus.size() == 4 && minus.size() == 4, Status::invalid_argument,
          "level-1 synthesis expects four blocks per tree");
  const QwpFilters qf = qwp_filters(n, r);
  std::array<cmat, 2> branches;
  for (int tree = 0; tree < 2; ++tree) {
    const std::vector<cmat>& blocks = tree == 0 ? plus : minus;
    std::array<cmat, 2> w;
    for (std::size_t l = 0; l < 2; ++l) {
      w[l] = fb_inverse_rows(blocks[0 * 2 + l].transposed(), blocks[1 * 2 + l].transposed(),
                             qf.q0p, qf.q1p)
                 .transposed();
    }
    branches[tree] = tree == 0 ? fb_inverse_rows(w[0], w[1], qf.q0p, qf.q1p)
                               : fb_inverse_rows(w[0], w[1], qf.q0m, qf.q1m);
  }
  return {branches[0], branches[1]};
}

rmat extend_symmetric(const rmat& x) {
  const std::size_t n = x.rows();
  require(n == x.cols(), Status::invalid_argument, "extension expects a square input");
  rmat out(2 * n, 2 * n);
  auto mirror = [n](std::size_t i) { return i < n ? i : 2 * n - 1 - i; };
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) out(i, j) = x(mirror(i), mirror(j));
  return out;
}

rmat crop_topleft(const rmat& x, std::size_t n) {
  require(n <= x.rows() && n <= x.cols(), Status::invalid_argument, "crop size too large");
  rmat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x(i, j);
  return out;
}

DualTreeForest2D forward2d(const rmat& x, const WpParams& params, bool extend) {
  require(x.rows() == x.cols(), Status::invalid_argument, "2D transform expects a square input");
  const rmat work = extend ? extend_symmetric(x) : x;
  params.validate(work.rows());
  const std::size_t n = work.rows();

  DualTreeForest2D forest;
  forest.n = n;
  forest.orig_n = x.rows();
  forest.extended = extend;
  forest.params = params;

  const QwpFilters qf = qwp_filters(n, params.r());

  // Level 1: rows with the plus/minus pair (the minus rows are conjugates of
  // the plus rows for real input), then columns with the plus pair for both
  // trees.
  auto [zeta0, zeta1] = fb_forward_rows(to_cmat(work), qf.q0p, qf.q1p);
  for (int tree = 0; tree < 2; ++tree) {
    const cmat z0 = tree == 0 ? zeta0 : conj_mat(zeta0);
    const cmat z1 = tree == 0 ? zeta1 : conj_mat(zeta1);
    std::vector<cmat> level1(4);
    for (std::size_t l = 0; l < 2; ++l) {
      const cmat& zl = l == 0 ? z0 : z1;
      auto [c0, c1] = fb_forward_rows(zl.transposed(), qf.q0p, qf.q1p);
      level1[0 * 2 + l] = c0.transposed();
      level1[1 * 2 + l] = c1.transposed();
    }
    forest.trees[tree].resize(params.levels);
    forest.trees[tree][0] = std::move(level1);
    for (unsigned m = 2; m <= params.levels; ++m)
      forest.trees[tree][m - 1] = split_level(forest.trees[tree][m - 2], n, params.r(), m);
  }
  return forest;
}

std::pair<cmat, cmat> inverse2d_branches(const DualTreeForest2D& forest, unsigned from_level) {
  require(from_level >= 1 && from_level <= forest.params.levels, Status::invalid_argument,
          "reconstruction level out of range");
  // Merge each tree up to its level-1 blocks; the column stage then uses the
  // plus pair on both trees while the row stage carries the tree's sign.
  std::array<std::vector<cmat>, 2> level1;
  for (int tree = 0; tree < 2; ++tree) {
    std::vector<cmat> bands = forest.trees[tree][from_level - 1];
    for (unsigned m = from_level; m >= 2; --m)
      bands = merge_level(bands, forest.n, forest.params.r(), m);
    level1[tree] = std::move(bands);
  }
  return branches_from_level1(level1[0], level1[1], forest.n, forest.params.r());
}

rmat inverse2d(const DualTreeForest2D& forest, unsigned from_level) {
  if (from_level == 0) from_level = forest.params.levels;
  auto [xp, xm] = inverse2d_branches(forest, from_level);
  rmat out(forest.n, forest.n);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.raw()[i] = 0.125 * (xp.raw()[i].real() + xm.raw()[i].real());
  return forest.extended ? crop_topleft(out, forest.orig_n) : out;
}

namespace {

long spectral_centroid(const cvec& spectrum) {
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < spectrum.size(); ++p) {
    const double w = std::norm(spectrum[p]);
    num += static_cast<double>(p) * w;
    den += w;
  }
  return std::lround(num / den);
}

}  // namespace

DirectionalAtom atom2d(std::size_t n, const WpParams& params, unsigned m, std::size_t j,
                       std::size_t l, int sign) {
  require(sign == 1 || sign == -1, Status::invalid_argument, "sign must be +1 or -1");
  require(j < (std::size_t(1) << m) && l < (std::size_t(1) << m), Status::invalid_argument,
          "atom band out of range");
  const cvec spec_j = qwp_waveform_spectrum(n, params, m, j, 1);
  const cvec spec_l = qwp_waveform_spectrum(n, params, m, l, 1);
  const cvec wave_j = idft(spec_j);
  cvec wave_l = idft(spec_l);
  if (sign < 0)
    for (auto& v : wave_l) v = std::conj(v);

  DirectionalAtom atom;
  atom.vartheta = rmat(n, n);
  atom.theta = rmat(n, n);
  atom.mag_spectrum = rmat(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      const cplx v = wave_j[k] * wave_l[q];
      atom.vartheta(k, q) = v.real();
      atom.theta(k, q) = v.imag();
      const std::size_t qq = sign > 0 ? q : (n - q) % n;
      atom.mag_spectrum(k, q) = std::abs(spec_j[k]) * std::abs(spec_l[qq]);
    }
  }
  atom.kappa0 = spectral_centroid(spec_j);
  const long nu = spectral_centroid(spec_l);
  atom.nu0 = sign > 0 ? nu : -nu;
  return atom;
}

Census orientation_census(std::size_t n, const WpParams& params, unsigned m) {
  params.validate(n);
  require(m >= 1 && m <= params.levels, Status::invalid_argument, "census level out of range");
  const std::size_t side = std::size_t(1) << m;

  // Per-band centroids are separable, so compute the 1D values once.
  std::vector<long> centroid(side);
  for (std::size_t b = 0; b < side; ++b)
    centroid[b] = spectral_centroid(qwp_waveform_spectrum(n, params, m, b, 1));

  Census census;
  const std::size_t total = 2 * side * side;
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  auto id = [side](int tree, std::size_t j, std::size_t l) {
    return static_cast<std::size_t>(tree) * side * side + j * side + l;
  };

  for (int tree = 0; tree < 2; ++tree) {
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t l = 0; l < side; ++l) {
        AtomOrientation a;
        a.sign = tree == 0 ? 1 : -1;
        a.j = j;
        a.l = l;
        a.kappa = centroid[j];
        a.nu = tree == 0 ? centroid[l] : -centroid[l];
        census.atoms.push_back(a);

        // Atoms along one diagonal of the band grid share an orientation;
        // their centroid vectors are scalar multiples of a common direction.
        // Reduced-ratio matching across arbitrary band pairs is not a safe
        // merge rule: unrelated diagonals can collide on the exact ratio.
        if (j + 1 < side && l + 1 < side) unite(id(tree, j, l), id(tree, j + 1, l + 1));
      }
    }
  }

  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < total; ++v) {
    const std::size_t root = find(v);
    if (std::find(roots.begin(), roots.end(), root) == roots.end()) roots.push_back(root);
  }
  census.classes = roots.size();
  for (std::size_t v = 0; v < total; ++v) {
    const std::size_t root = find(v);
    census.atoms[v].class_id =
        static_cast<std::size_t>(std::find(roots.begin(), roots.end(), root) - roots.begin());
  }
  return census;
}

}  // namespace qwp
