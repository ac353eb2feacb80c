#include "qwp/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qwp {

double cost(const double* mags, std::size_t count, CostKind kind, double total_energy) {
  double acc = 0.0;
  if (kind == CostKind::l1) {
    for (std::size_t i = 0; i < count; ++i) acc += mags[i];
    return acc;
  }
  if (total_energy <= 0.0) return 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double p = mags[i] * mags[i] / total_energy;
    if (p > 0.0) acc -= p * std::log(p);
  }
  return acc;
}

double cost(const rvec& band, CostKind kind, double total_energy) {
  rvec mags(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) mags[i] = std::abs(band[i]);
  return cost(mags.data(), mags.size(), kind, total_energy);
}

double cost(const cvec& band, CostKind kind, double total_energy) {
  rvec mags(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) mags[i] = std::abs(band[i]);
  return cost(mags.data(), mags.size(), kind, total_energy);
}

namespace {

double energy_r(const rvec& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

double energy_c(const cvec& v) {
  double e = 0.0;
  for (const cplx& x : v) e += std::norm(x);
  return e;
}

// Shared bottom-up sweep; band_cost(m, index) prices one block, `arity` is 2
// for signals and 4 for images.
struct Sweep {
  unsigned max_level;
  std::size_t arity;
  std::vector<std::vector<double>> value;
  std::vector<std::vector<bool>> keep;

  template <class CostFn>
  void run(CostFn band_cost) {
    value.resize(max_level);
    keep.resize(max_level);
    for (unsigned m = max_level; m >= 1; --m) {
      std::size_t count = 1;
      for (unsigned i = 0; i < m; ++i) count *= arity;
      value[m - 1].resize(count);
      keep[m - 1].assign(count, true);
      for (std::size_t idx = 0; idx < count; ++idx) {
        const double own = band_cost(m, idx);
        if (m == max_level) {
          value[m - 1][idx] = own;
          continue;
        }
        double child_sum = 0.0;
        for (std::size_t c = 0; c < arity; ++c) child_sum += value[m][idx * arity + c];
        if (own <= child_sum) {
          value[m - 1][idx] = own;
        } else {
          value[m - 1][idx] = child_sum;
          keep[m - 1][idx] = false;
        }
      }
    }
  }

  template <class Emit>
  void collect(unsigned m, std::size_t idx, Emit emit) const {
    if (keep[m - 1][idx]) {
      emit(m, idx);
      return;
    }
    for (std::size_t c = 0; c < arity; ++c) collect(m + 1, idx * arity + c, emit);
  }

  double total() const {
    double t = 0.0;
    for (double v : value[0]) t += v;
    return t;
  }
};

}  // namespace

BestBasis1 best_basis(const Wp1dForest& forest, CostKind kind) {
  const double total = energy_r(forest.levels[0][0]) + energy_r(forest.levels[0][1]);
  Sweep sweep{forest.params.levels, 2, {}, {}};
  sweep.run([&](unsigned m, std::size_t idx) {
    return cost(forest.band(m, idx), kind, total);
  });
  BestBasis1 out;
  for (std::size_t l = 0; l < 2; ++l)
    sweep.collect(1, l, [&](unsigned m, std::size_t idx) {
      out.bands.push_back({m, idx});
    });
  out.total_cost = sweep.total();
  return out;
}

BestBasis1 best_basis(const Qwp1dForest& forest, int tree, CostKind kind) {
  require(tree == 0 || tree == 1, Status::invalid_argument, "tree index must be 0 or 1");
  const double total =
      energy_c(forest.trees[tree][0][0]) + energy_c(forest.trees[tree][0][1]);
  Sweep sweep{forest.params.levels, 2, {}, {}};
  sweep.run([&](unsigned m, std::size_t idx) {
    return cost(forest.band(tree, m, idx), kind, total);
  });
  BestBasis1 out;
  for (std::size_t l = 0; l < 2; ++l)
    sweep.collect(1, l, [&](unsigned m, std::size_t idx) {
      out.bands.push_back({m, idx});
    });
  out.total_cost = sweep.total();
  return out;
}

namespace {

// The sweep works on a linear quadtree index; translate to (j, l) by peeling
// two bits per level, most significant level first.
BandKey quad_index_to_key(unsigned m, std::size_t idx) {
  std::size_t j = 0, l = 0;
  for (unsigned level = 0; level < m; ++level) {
    const std::size_t digit = (idx >> (2 * (m - 1 - level))) & 3;
    j = j * 2 + (digit >> 1);
    l = l * 2 + (digit & 1);
  }
  return BandKey{m, j, l};
}

}  // namespace

BestBasis2 best_basis(const Wp2dForest& forest, CostKind kind) {
  double total = 0.0;
  for (const rmat& block : forest.levels[0]) total += energy_r(block.raw());
  Sweep sweep{forest.params.levels, 4, {}, {}};
  sweep.run([&](unsigned m, std::size_t idx) {
    const BandKey key = quad_index_to_key(m, idx);
    return cost(forest.band(m, key.j, key.l).raw(), kind, total);
  });
  BestBasis2 out;
  for (std::size_t c = 0; c < 4; ++c)
    sweep.collect(1, c, [&](unsigned m, std::size_t idx) {
      out.bands.push_back(quad_index_to_key(m, idx));
    });
  out.total_cost = sweep.total();
  return out;
}

BestBasis2 best_basis(const DualTreeForest2D& forest, int tree, CostKind kind) {
  require(tree == 0 || tree == 1, Status::invalid_argument, "tree index must be 0 or 1");
  double total = 0.0;
  for (const cmat& block : forest.trees[tree][0]) total += energy_c(block.raw());
  Sweep sweep{forest.params.levels, 4, {}, {}};
  sweep.run([&](unsigned m, std::size_t idx) {
    const BandKey key = quad_index_to_key(m, idx);
    return cost(forest.band(tree, m, key.j, key.l).raw(), kind, total);
  });
  BestBasis2 out;
  for (std::size_t c = 0; c < 4; ++c)
    sweep.collect(1, c, [&](unsigned m, std::size_t idx) {
      out.bands.push_back(quad_index_to_key(m, idx));
    });
  out.total_cost = sweep.total();
  return out;
}

double threshold_from_rank(std::vector<double> magnitudes, std::uint64_t rank) {
  require(!magnitudes.empty(), Status::invalid_argument, "threshold: empty magnitude set");
  require(rank >= 1 && rank <= magnitudes.size(), Status::invalid_argument,
          "threshold rank out of range");
  std::nth_element(magnitudes.begin(), magnitudes.begin() + (rank - 1), magnitudes.end());
  return magnitudes[rank - 1];
}

void hard_threshold(rvec& values, double t) {
  for (double& v : values)
    if (std::abs(v) < t) v = 0.0;
}

void hard_threshold(cvec& values, double t) {
  for (cplx& v : values)
    if (std::abs(v) < t) v = 0.0;
}

namespace {

bool contains1(const std::vector<Band1>& basis, unsigned m, std::size_t l) {
  return std::find(basis.begin(), basis.end(), Band1{m, l}) != basis.end();
}

bool contains2(const std::vector<BandKey>& basis, unsigned m, std::size_t j, std::size_t l) {
  return std::find(basis.begin(), basis.end(), BandKey{m, j, l}) != basis.end();
}

cvec cover1(const Wp1dForest& forest, const std::vector<Band1>& basis, unsigned m,
            std::size_t l) {
  if (contains1(basis, m, l)) {
    const rvec& band = forest.band(m, l);
    return cvec(band.begin(), band.end());
  }
  require(m < forest.params.levels, Status::invalid_argument,
          "basis does not cover the signal space");
  const StepFilters f = wp_step_filters(forest.n, forest.params.r(), m + 1);
  const cvec c0 = cover1(forest, basis, m + 1, band_order_rho(static_cast<std::uint32_t>(l), 0));
  const cvec c1 = cover1(forest, basis, m + 1, band_order_rho(static_cast<std::uint32_t>(l), 1));
  return fb_inverse_step(c0, c1, f.h0, f.h1);
}

template <class Forest, class FetchBand>
cmat cover2(const Forest& forest, const std::vector<BandKey>& basis, unsigned m, std::size_t j,
            std::size_t l, FetchBand fetch) {
  if (contains2(basis, m, j, l)) return fetch(m, j, l);
  require(m < forest.params.levels, Status::invalid_argument,
          "basis does not cover the image space");
  std::array<cmat, 4> kids;
  std::array<const cmat*, 4> ptrs{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      kids[a * 2 + b] = cover2(forest, basis, m + 1, 2 * j + a, 2 * l + b, fetch);
      ptrs[a * 2 + b] = &kids[a * 2 + b];
    }
  return merge_child_blocks(ptrs, j, l, forest.n, forest.params.r(), m + 1);
}

}  // namespace

rvec reconstruct(const Wp1dForest& forest, const std::vector<Band1>& basis) {
  const StepFilters f = wp_step_filters(forest.n, forest.params.r(), 1);
  const cvec c0 = cover1(forest, basis, 1, 0);
  const cvec c1 = cover1(forest, basis, 1, 1);
  const cvec x = fb_inverse_step(c0, c1, f.h0, f.h1);
  rvec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
  return out;
}

rmat reconstruct(const Wp2dForest& forest, const std::vector<BandKey>& basis) {
  auto fetch = [&](unsigned m, std::size_t j, std::size_t l) {
    return to_cmat(forest.band(m, j, l));
  };
  std::array<cmat, 4> kids;
  std::array<const cmat*, 4> ptrs{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      kids[a * 2 + b] = cover2(forest, basis, 1, a, b, fetch);
      ptrs[a * 2 + b] = &kids[a * 2 + b];
    }
  return re(merge_child_blocks(ptrs, 0, 0, forest.n, forest.params.r(), 1));
}

rmat reconstruct(const DualTreeForest2D& forest, const std::vector<BandKey>& basis_plus,
                 const std::vector<BandKey>& basis_minus) {
  std::array<std::vector<cmat>, 2> level1;
  for (int tree = 0; tree < 2; ++tree) {
    const auto& basis = tree == 0 ? basis_plus : basis_minus;
    auto fetch = [&](unsigned m, std::size_t j, std::size_t l) {
      return forest.band(tree, m, j, l);
    };
    level1[tree].resize(4);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        level1[tree][a * 2 + b] = cover2(forest, basis, 1, a, b, fetch);
  }
  auto [xp, xm] = branches_from_level1(level1[0], level1[1], forest.n, forest.params.r());
  rmat out(forest.n, forest.n);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.raw()[i] = 0.125 * (xp.raw()[i].real() + xm.raw()[i].real());
  return forest.extended ? crop_topleft(out, forest.orig_n) : out;
}

DenoiseResult denoise(const rmat& noisy, const DenoiseParams& params, const rmat* ref) {
  require(params.rank >= 1, Status::invalid_argument, "denoise: rank threshold L is required");
  DenoiseResult result;

  if (params.directional) {
    DualTreeForest2D forest = forward2d(noisy, params.wp, params.extend);
    std::array<std::vector<BandKey>, 2> sel;
    std::array<double, 2> thr{};
    for (int tree = 0; tree < 2; ++tree) {
      sel[tree] = best_basis(forest, tree, params.cost).bands;
      std::vector<double> mags;
      for (const BandKey& key : sel[tree]) {
        const cmat& band = forest.band(tree, key.m, key.j, key.l);
        for (const cplx& v : band.raw()) mags.push_back(std::abs(v));
      }
      thr[tree] = threshold_from_rank(std::move(mags), params.rank);
      for (const BandKey& key : sel[tree])
        hard_threshold(forest.band(tree, key.m, key.j, key.l).raw(), thr[tree]);
    }
    result.image = reconstruct(forest, sel[0], sel[1]);
    result.threshold_plus = thr[0];
    result.threshold_minus = thr[1];
    result.basis_plus = std::move(sel[0]);
    result.basis_minus = std::move(sel[1]);
  } else {
    const rmat work = params.extend ? extend_symmetric(noisy) : noisy;
    Wp2dForest forest = wp2d_forward(work, params.wp);
    std::vector<BandKey> sel = best_basis(forest, params.cost).bands;
    std::vector<double> mags;
    for (const BandKey& key : sel) {
      const rmat& band = forest.band(key.m, key.j, key.l);
      for (double v : band.raw()) mags.push_back(std::abs(v));
    }
    const double thr = threshold_from_rank(std::move(mags), params.rank);
    for (const BandKey& key : sel) hard_threshold(forest.band(key.m, key.j, key.l).raw(), thr);
    rmat image = reconstruct(forest, sel);
    result.image = params.extend ? crop_topleft(image, noisy.rows()) : image;
    result.threshold_plus = thr;
    result.basis_plus = std::move(sel);
  }

  if (ref != nullptr) result.psnr_vs_ref = psnr(result.image, *ref);
  return result;
}

}  // namespace qwp
