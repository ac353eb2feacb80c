#pragma once

#include "qwp/qwp2d.hpp"

namespace qwp {

enum class CostKind { entropy, l1 };

// Additive sparsity cost of one coefficient block.  l1 sums magnitudes.
// entropy sums -p ln p with p = |z|^2 / total_energy, so that costs of
// sibling blocks add up against their parent; total_energy is the energy of
// the whole tree and is ignored by l1.
double cost(const double* mags, std::size_t count, CostKind kind, double total_energy);
double cost(const rvec& band, CostKind kind, double total_energy);
double cost(const cvec& band, CostKind kind, double total_energy);

struct Band1 {
  unsigned m = 1;
  std::size_t l = 0;
  bool operator==(const Band1&) const = default;
};

// Coifman-Wickerhauser bottom-up sweep over the stored levels: a parent is
// kept when its cost does not exceed the summed cost of its children (ties
// keep the parent).  Returns the selected cover together with its total cost.
struct BestBasis1 {
  std::vector<Band1> bands;
  double total_cost = 0.0;
};
BestBasis1 best_basis(const Wp1dForest& forest, CostKind kind);
BestBasis1 best_basis(const Qwp1dForest& forest, int tree, CostKind kind);

struct BestBasis2 {
  std::vector<BandKey> bands;
  double total_cost = 0.0;
};
BestBasis2 best_basis(const Wp2dForest& forest, CostKind kind);
BestBasis2 best_basis(const DualTreeForest2D& forest, int tree, CostKind kind);

// T = A[L] where A is the ascending sort of the magnitudes and L is 1-based.
double threshold_from_rank(std::vector<double> magnitudes, std::uint64_t rank);

// Kills |v| < t and keeps the boundary |v| == t.
void hard_threshold(rvec& values, double t);
void hard_threshold(cvec& values, double t);

// Reconstruction from a basis cover, with the stored coefficients.
rvec reconstruct(const Wp1dForest& forest, const std::vector<Band1>& basis);
rmat reconstruct(const Wp2dForest& forest, const std::vector<BandKey>& basis);
rmat reconstruct(const DualTreeForest2D& forest, const std::vector<BandKey>& basis_plus,
                 const std::vector<BandKey>& basis_minus);

struct DenoiseParams {
  WpParams wp;
  CostKind cost = CostKind::entropy;
  std::uint64_t rank = 0;    // 1-based position in the ascending magnitude sort
  bool directional = true;   // dual-tree when set, tensor packets otherwise
  bool extend = false;
};

struct DenoiseResult {
  rmat image;
  double threshold_plus = 0.0;
  double threshold_minus = 0.0;  // unused by the tensor path
  std::vector<BandKey> basis_plus;
  std::vector<BandKey> basis_minus;
  double psnr_vs_ref = -1.0;  // only set when a reference is supplied
};

// Transform, per-tree best basis, one rank threshold per tree, reconstruct.
DenoiseResult denoise(const rmat& noisy, const DenoiseParams& params, const rmat* ref = nullptr);

}  // namespace qwp
