#include "qwp/sbi.hpp"

#include <cmath>

namespace qwp {

void Kernel::validate() const {
  require(taps.rows() >= 1 && taps.cols() >= 1, Status::invalid_argument, "empty kernel");
  require(taps.rows() % 2 == 1 && taps.cols() % 2 == 1, Status::invalid_argument,
          "kernel dimensions must be odd");
}

Kernel identity_kernel() {
  Kernel k;
  k.taps = rmat(1, 1, 1.0);
  return k;
}

Kernel gaussian_kernel(std::size_t size, double sigma) {
  require(size % 2 == 1 && size >= 1, Status::invalid_argument, "kernel size must be odd");
  require(sigma > 0.0, Status::invalid_argument, "sigma must be positive");
  Kernel k;
  k.taps = rmat(size, size);
  const double c = static_cast<double>(size / 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double di = static_cast<double>(i) - c, dj = static_cast<double>(j) - c;
      k.taps(i, j) = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
      sum += k.taps(i, j);
    }
  }
  for (auto& v : k.taps.raw()) v /= sum;
  return k;
}

Mask full_mask(std::size_t n) { return Mask(n, n, 1); }

namespace {

// Kernel spectrum with the center tap at the origin, so multiplication in the
// DFT domain realizes the centered periodic convolution.
cmat kernel_spectrum(const Kernel& k, std::size_t n) {
  k.validate();
  require(k.taps.rows() <= n && k.taps.cols() <= n, Status::invalid_argument,
          "kernel larger than the image");
  rmat big(n, n, 0.0);
  const std::size_t a = k.taps.rows() / 2, b = k.taps.cols() / 2;
  for (std::size_t s = 0; s < k.taps.rows(); ++s)
    for (std::size_t t = 0; t < k.taps.cols(); ++t)
      big((n + s - a) % n, (n + t - b) % n) += k.taps(s, t);
  return dft2(big);
}

// Convolution operator with a cached spectrum; the 1x1 case short-circuits to
// a scalar multiply, which keeps identity-kernel problems cheap.
struct ConvOp {
  bool scalar = false;
  double gain = 1.0;
  cmat spectrum;

  ConvOp(const Kernel& k, std::size_t n) {
    k.validate();
    if (k.taps.rows() == 1 && k.taps.cols() == 1) {
      scalar = true;
      gain = k.taps(0, 0);
    } else {
      spectrum = kernel_spectrum(k, n);
    }
  }

  rmat apply(const rmat& x, bool adjoint) const {
    if (scalar) {
      rmat out = x;
      for (auto& v : out.raw()) v *= gain;
      return out;
    }
    cmat spec = dft2(x);
    for (std::size_t i = 0; i < spec.size(); ++i)
      spec.raw()[i] *= adjoint ? std::conj(spectrum.raw()[i]) : spectrum.raw()[i];
    return idft2_real(spec);
  }
};

double dot(const rmat& a, const rmat& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.raw()[i] * b.raw()[i];
  return acc;
}

void axpy(rmat& y, double alpha, const rmat& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y.raw()[i] += alpha * x.raw()[i];
}

Mask extend_mask(const Mask& mask) {
  const std::size_t n = mask.rows();
  Mask out(2 * n, 2 * n);
  auto mirror = [n](std::size_t i) { return i < n ? i : 2 * n - 1 - i; };
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) out(i, j) = mask(mirror(i), mirror(j));
  return out;
}

}  // namespace

rmat convolve_periodic(const rmat& x, const Kernel& k) {
  require(x.rows() == x.cols(), Status::invalid_argument, "convolution expects a square image");
  return ConvOp(k, x.rows()).apply(x, false);
}

rmat convolve_periodic_adjoint(const rmat& x, const Kernel& k) {
  require(x.rows() == x.cols(), Status::invalid_argument, "convolution expects a square image");
  return ConvOp(k, x.rows()).apply(x, true);
}

rmat apply_mask(const rmat& x, const Mask& mask) {
  require(x.rows() == mask.rows() && x.cols() == mask.cols(), Status::invalid_argument,
          "mask shape mismatch");
  rmat out = x;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (mask.raw()[i] == 0) out.raw()[i] = 0.0;
  return out;
}

double soft_threshold(double x, double t) {
  const double mag = std::abs(x) - t;
  if (mag <= 0.0) return 0.0;
  return x > 0.0 ? mag : -mag;
}

cplx soft_threshold(const cplx& x, double t) {
  const double mag = std::abs(x);
  if (mag <= t || mag == 0.0) return cplx(0.0);
  return x * ((mag - t) / mag);
}

CgResult cg_solve(const std::function<rmat(const rmat&)>& apply, const rmat& rhs,
                  const rmat& x0, int max_iters, double tol) {
  require(max_iters >= 1, Status::invalid_argument, "cg: need at least one iteration");
  CgResult result;
  result.x = x0;
  rmat r = rhs;
  axpy(r, -1.0, apply(result.x));
  rmat p = r;
  double rs = dot(r, r);
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  if (rhs_norm == 0.0) {
    result.x = rmat(rhs.rows(), rhs.cols(), 0.0);
    return result;
  }
  for (int it = 0; it < max_iters; ++it) {
    if (std::sqrt(rs) / rhs_norm <= tol) break;
    const rmat ap = apply(p);
    const double denom = dot(p, ap);
    if (denom <= 0.0) fail(Status::numeric_error, "cg: operator is not positive definite");
    const double alpha = rs / denom;
    axpy(result.x, alpha, p);
    axpy(r, -alpha, ap);
    const double rs_next = dot(r, r);
    const double beta = rs_next / rs;
    rs = rs_next;
    for (std::size_t i = 0; i < p.size(); ++i) p.raw()[i] = r.raw()[i] + beta * p.raw()[i];
    result.iterations = it + 1;
  }
  result.rel_residual = std::sqrt(rs) / rhs_norm;
  return result;
}

FrameCoeffs& FrameCoeffs::operator+=(const FrameCoeffs& o) {
  for (int t = 0; t < 2; ++t)
    for (std::size_t i = 0; i < trees[t].size(); ++i)
      for (std::size_t k = 0; k < trees[t][i].size(); ++k)
        trees[t][i].raw()[k] += o.trees[t][i].raw()[k];
  return *this;
}

FrameCoeffs& FrameCoeffs::operator-=(const FrameCoeffs& o) {
  for (int t = 0; t < 2; ++t)
    for (std::size_t i = 0; i < trees[t].size(); ++i)
      for (std::size_t k = 0; k < trees[t][i].size(); ++k)
        trees[t][i].raw()[k] -= o.trees[t][i].raw()[k];
  return *this;
}

double FrameCoeffs::l1_norm() const {
  double acc = 0.0;
  for (int t = 0; t < 2; ++t)
    for (const cmat& band : trees[t])
      for (const cplx& v : band.raw()) acc += std::abs(v);
  return acc;
}

QwpFrame::QwpFrame(std::size_t n, const WpParams& params) : n_(n), params_(params) {
  params_.validate(n_);
  const unsigned m = params_.levels;
  const std::size_t side = std::size_t(1) << m;
  for (std::size_t j = 0; j < side; ++j)
    for (std::size_t l = 0; l < side; ++l) {
      basis_plus_.push_back({m, j, l});
      basis_minus_.push_back({m, j, l});
    }
}

void QwpFrame::set_basis(const std::vector<BandKey>& plus, const std::vector<BandKey>& minus) {
  require(!plus.empty() && !minus.empty(), Status::invalid_argument, "empty frame basis");
  basis_plus_ = plus;
  basis_minus_ = minus;
}

FrameCoeffs QwpFrame::analyze(const rmat& x) const {
  const DualTreeForest2D forest = forward2d(x, params_, false);
  FrameCoeffs out;
  for (int t = 0; t < 2; ++t) {
    const auto& basis = t == 0 ? basis_plus_ : basis_minus_;
    out.trees[t].reserve(basis.size());
    for (const BandKey& key : basis) out.trees[t].push_back(forest.band(t, key.m, key.j, key.l));
  }
  return out;
}

rmat QwpFrame::synthesize(const FrameCoeffs& c) const {
  DualTreeForest2D forest;
  forest.n = n_;
  forest.orig_n = n_;
  forest.extended = false;
  forest.params = params_;
  for (int t = 0; t < 2; ++t) {
    const auto& basis = t == 0 ? basis_plus_ : basis_minus_;
    require(c.trees[t].size() == basis.size(), Status::invalid_argument,
            "coefficient set does not match the frame basis");
    forest.trees[t].resize(params_.levels);
    for (unsigned m = 1; m <= params_.levels; ++m)
      forest.trees[t][m - 1].resize((std::size_t(1) << m) * (std::size_t(1) << m));
    for (std::size_t i = 0; i < basis.size(); ++i)
      forest.band(t, basis[i].m, basis[i].j, basis[i].l) = c.trees[t][i];
  }
  return reconstruct(forest, basis_plus_, basis_minus_);
}

SbiResult sbi_restore(const rmat& degraded, const DegradationModel& model,
                      const SbiParams& params, const rmat* ref) {
  require(degraded.rows() == degraded.cols(), Status::invalid_argument,
          "restoration expects a square image");
  require(model.mask.rows() == degraded.rows() && model.mask.cols() == degraded.cols(),
          Status::invalid_argument, "mask shape mismatch");
  require(params.mu > 0.0 && params.lambda >= 0.0, Status::invalid_argument,
          "need mu > 0 and lambda >= 0");
  require(params.outer_iters >= 1, Status::invalid_argument, "need at least one outer iteration");

  const std::size_t orig_n = degraded.rows();
  const rmat f = params.extend ? extend_symmetric(degraded) : degraded;
  const Mask mask = params.extend ? extend_mask(model.mask) : model.mask;
  const std::size_t n = f.rows();

  QwpFrame frame(n, params.wp);
  if (params.best_basis_frame) {
    const DualTreeForest2D probe = forward2d(f, params.wp, false);
    frame.set_basis(best_basis(probe, 0, params.cost).bands,
                    best_basis(probe, 1, params.cost).bands);
  }

  const ConvOp conv(model.kernel, n);
  const rmat masked_f = apply_mask(f, mask);
  const rmat rhs_data = conv.apply(masked_f, true);  // K* P f

  auto normal_op = [&](const rmat& u) {
    rmat out = conv.apply(apply_mask(conv.apply(u, false), mask), true);
    axpy(out, params.mu, u);
    return out;
  };

  SbiResult result;
  rmat u = masked_f;
  FrameCoeffs d = frame.analyze(rmat(n, n, 0.0));
  FrameCoeffs b = d;

  for (int it = 1; it <= params.outer_iters; ++it) {
    // u-step: (K* P K + mu I) u = K* P f + mu F(d - b)
    FrameCoeffs db = d;
    db -= b;
    rmat rhs = frame.synthesize(db);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs.raw()[i] = rhs_data.raw()[i] + params.mu * rhs.raw()[i];
    CgResult cg = cg_solve(normal_op, rhs, u, params.cg_iters, params.cg_tol);
    u = cg.x;

    // d-step and Bregman update
    FrameCoeffs fu = frame.analyze(u);
    const double theta = params.mu > 0.0 ? params.lambda / params.mu : 0.0;
    FrameCoeffs v = fu;
    v += b;
    d = v;
    for (int t = 0; t < 2; ++t)
      for (cmat& band : d.trees[t])
        for (cplx& z : band.raw()) z = soft_threshold(z, theta);
    b = v;
    b -= d;

    SbiTraceRow row;
    row.iteration = it;
    const rmat resid = apply_mask(conv.apply(u, false), mask);
    double data_term = 0.0;
    for (std::size_t i = 0; i < resid.size(); ++i) {
      const double dres = resid.raw()[i] - masked_f.raw()[i];
      data_term += dres * dres;
    }
    row.objective = 0.5 * data_term + params.lambda * fu.l1_norm();
    row.cg_rel_residual = cg.rel_residual;
    if (ref != nullptr) {
      const rmat current = params.extend ? crop_topleft(u, orig_n) : u;
      row.psnr_vs_ref = psnr(current, *ref);
    }
    result.trace.push_back(row);
  }

  result.image = params.extend ? crop_topleft(u, orig_n) : u;
  return result;
}

}  // namespace qwp
