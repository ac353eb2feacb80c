#include "qwp/wp1d.hpp"

#include <algorithm>

namespace qwp {

void WpParams::validate(std::size_t n) const {
  require(order >= 2 && order <= 12 && order % 2 == 0, Status::invalid_argument,
          "order must be an even value in 2..12");
  require(is_pow2(n) && n >= 8, Status::invalid_argument,
          "signal length must be a power of two >= 8");
  require(levels >= 1, Status::invalid_argument, "levels must be >= 1");
  // Bands shorter than 4 samples would not survive another split.
  require((std::size_t(1) << levels) <= n / 4, Status::invalid_argument,
          "too many levels for this length (need 2^levels <= N/4)");
}

std::uint32_t band_order_rho(std::uint32_t lambda, std::uint32_t mu) {
  return (lambda % 2 == 0) ? 2 * lambda + mu : 2 * lambda + (1 - mu);
}

std::uint32_t band_channel_mu(std::uint32_t rho) {
  const std::uint32_t lambda = rho / 2;
  const std::uint32_t bit = rho % 2;
  return (lambda % 2 == 0) ? bit : 1 - bit;
}

std::array<cplx, 4> analysis_mod_matrix(const FilterSpectra& f, std::size_t n) {
  const std::size_t len = f.beta.size();
  const std::size_t half = len / 2;
  const std::size_t lo = n % len;
  const std::size_t hi = (n + half) % len;
  return {cplx(f.beta[lo]), cplx(f.beta[hi]), f.alpha[lo], f.alpha[hi]};
}

std::array<cplx, 4> synthesis_mod_matrix(const FilterSpectra& f, std::size_t n) {
  auto m = analysis_mod_matrix(f, n);
  std::swap(m[1], m[2]);
  return m;
}

StepFilters wp_step_filters(std::size_t n, unsigned r, unsigned level) {
  const FilterSpectra base = beta_alpha(n, r);
  const std::size_t stride = std::size_t(1) << (level - 1);
  const std::size_t len = n / stride;
  StepFilters out;
  out.h0.resize(len);
  out.h1.resize(len);
  for (std::size_t v = 0; v < len; ++v) {
    const std::size_t idx = (v * stride) % n;
    out.h0[v] = base.beta[idx];
    out.h1[v] = base.alpha[idx];
  }
  return out;
}

namespace {

cvec to_cvec(const rvec& x) { return cvec(x.begin(), x.end()); }

rvec real_part(const cvec& x) {
  rvec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
  return out;
}

}  // namespace

std::pair<rvec, rvec> one_level_forward(const rvec& x, unsigned r) {
  const StepFilters f = wp_step_filters(x.size(), r, 1);
  auto [c0, c1] = fb_forward_step(to_cvec(x), f.h0, f.h1);
  return {real_part(c0), real_part(c1)};
}

rvec one_level_inverse(const rvec& y0, const rvec& y1, unsigned r) {
  const StepFilters f = wp_step_filters(y0.size() * 2, r, 1);
  return real_part(fb_inverse_step(to_cvec(y0), to_cvec(y1), f.h0, f.h1));
}

Wp1dForest multi_level_forward(const rvec& x, const WpParams& params) {
  params.validate(x.size());
  Wp1dForest forest;
  forest.n = x.size();
  forest.params = params;
  forest.levels.resize(params.levels);

  std::vector<rvec> parents{x};
  for (unsigned m = 1; m <= params.levels; ++m) {
    const StepFilters f = wp_step_filters(x.size(), params.r(), m);
    std::vector<rvec> children(std::size_t(1) << m);
    for (std::uint32_t lambda = 0; lambda < parents.size(); ++lambda) {
      auto [c0, c1] = fb_forward_step(to_cvec(parents[lambda]), f.h0, f.h1);
      children[band_order_rho(lambda, 0)] = real_part(c0);
      children[band_order_rho(lambda, 1)] = real_part(c1);
    }
    forest.levels[m - 1] = children;
    parents = std::move(children);
  }
  return forest;
}

rvec multi_level_inverse(const Wp1dForest& forest, unsigned from_level) {
  require(from_level >= 1 && from_level <= forest.levels.size(), Status::invalid_argument,
          "reconstruction level out of range");
  std::vector<rvec> bands = forest.levels[from_level - 1];
  for (unsigned m = from_level; m >= 1; --m) {
    const StepFilters f = wp_step_filters(forest.n, forest.params.r(), m);
    std::vector<rvec> parents(bands.size() / 2);
    for (std::uint32_t lambda = 0; lambda < parents.size(); ++lambda) {
      const rvec& c0 = bands[band_order_rho(lambda, 0)];
      const rvec& c1 = bands[band_order_rho(lambda, 1)];
      parents[lambda] = real_part(fb_inverse_step(to_cvec(c0), to_cvec(c1), f.h0, f.h1));
    }
    bands = std::move(parents);
  }
  return bands[0];
}

cvec waveform_spectrum(std::size_t n, const WpParams& params, unsigned m, std::size_t l) {
  params.validate(n);
  require(m >= 1 && m <= params.levels, Status::invalid_argument, "waveform level out of range");
  require(l < (std::size_t(1) << m), Status::invalid_argument, "waveform band out of range");

  // Walk the band index back to the root to recover the channel chosen at
  // each level, then take the cascade product of strided filter spectra.
  std::vector<std::uint32_t> mu_at_level(m);
  std::uint32_t rho = static_cast<std::uint32_t>(l);
  for (unsigned level = m; level >= 1; --level) {
    mu_at_level[level - 1] = band_channel_mu(rho);
    rho /= 2;
  }

  const FilterSpectra base = beta_alpha(n, params.r());
  cvec spec(n, cplx(1.0));
  for (unsigned level = 1; level <= m; ++level) {
    const std::size_t stride = std::size_t(1) << (level - 1);
    const bool low = mu_at_level[level - 1] == 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (k * stride) % n;
      spec[k] *= low ? cplx(base.beta[idx]) : base.alpha[idx];
    }
  }
  return spec;
}

rvec waveform(std::size_t n, const WpParams& params, unsigned m, std::size_t l) {
  return idft_real(waveform_spectrum(n, params, m, l));
}

Wp2dForest wp2d_forward(const rmat& x, const WpParams& params) {
  require(x.rows() == x.cols(), Status::invalid_argument, "2D transform expects a square input");
  params.validate(x.rows());
  const std::size_t n = x.rows();

  Wp2dForest forest;
  forest.n = n;
  forest.params = params;
  forest.levels.resize(params.levels);

  std::vector<cmat> parents{to_cmat(x)};
  for (unsigned m = 1; m <= params.levels; ++m) {
    const StepFilters f = wp_step_filters(n, params.r(), m);
    const std::size_t side = std::size_t(1) << m;
    std::vector<cmat> children(side * side);
    const std::size_t parent_side = side / 2;
    for (std::size_t pj = 0; pj < parent_side; ++pj) {
      for (std::size_t pl = 0; pl < parent_side; ++pl) {
        const cmat& block = parents[pj * parent_side + pl];
        auto [row0, row1] = fb_forward_rows(block, f.h0, f.h1);
        for (std::uint32_t mu_row = 0; mu_row < 2; ++mu_row) {
          const cmat& half = mu_row == 0 ? row0 : row1;
          auto [col0, col1] = fb_forward_rows(half.transposed(), f.h0, f.h1);
          const std::size_t cl =
              band_order_rho(static_cast<std::uint32_t>(pl), mu_row);
          for (std::uint32_t mu_col = 0; mu_col < 2; ++mu_col) {
            const std::size_t cj =
                band_order_rho(static_cast<std::uint32_t>(pj), mu_col);
            children[cj * side + cl] = (mu_col == 0 ? col0 : col1).transposed();
          }
        }
      }
    }
    forest.levels[m - 1].resize(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) forest.levels[m - 1][i] = re(children[i]);
    parents = std::move(children);
  }
  return forest;
}

rmat wp2d_inverse(const Wp2dForest& forest, unsigned from_level) {
  require(from_level >= 1 && from_level <= forest.levels.size(), Status::invalid_argument,
          "reconstruction level out of range");
  std::vector<cmat> bands(forest.levels[from_level - 1].size());
  for (std::size_t i = 0; i < bands.size(); ++i)
    bands[i] = to_cmat(forest.levels[from_level - 1][i]);

  for (unsigned m = from_level; m >= 1; --m) {
    const StepFilters f = wp_step_filters(forest.n, forest.params.r(), m);
    const std::size_t side = std::size_t(1) << m;
    const std::size_t parent_side = side / 2;
    std::vector<cmat> parents(parent_side * parent_side);
    for (std::size_t pj = 0; pj < parent_side; ++pj) {
      for (std::size_t pl = 0; pl < parent_side; ++pl) {
        std::array<cmat, 2> rows_merged;
        for (std::uint32_t mu_row = 0; mu_row < 2; ++mu_row) {
          const std::size_t cl = band_order_rho(static_cast<std::uint32_t>(pl), mu_row);
          const cmat c0 =
              bands[band_order_rho(static_cast<std::uint32_t>(pj), 0) * side + cl].transposed();
          const cmat c1 =
              bands[band_order_rho(static_cast<std::uint32_t>(pj), 1) * side + cl].transposed();
          rows_merged[mu_row] = fb_inverse_rows(c0, c1, f.h0, f.h1).transposed();
        }
        parents[pj * parent_side + pl] =
            fb_inverse_rows(rows_merged[0], rows_merged[1], f.h0, f.h1);
      }
    }
    bands = std::move(parents);
  }
  return re(bands[0]);
}

}  // namespace qwp
