#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qwp/analysis.hpp"

namespace qwp {

// Blur kernel with odd dimensions, centered on its middle sample.
struct Kernel {
  rmat taps;
  void validate() const;
};

Kernel identity_kernel();
Kernel gaussian_kernel(std::size_t size = 5, double sigma = 0.5);

// Observed-pixel mask: nonzero means the pixel was measured.
using Mask = Matrix<std::uint8_t>;
Mask full_mask(std::size_t n);

// Degradation f = P_mask(K x) + noise.
struct DegradationModel {
  Kernel kernel;
  Mask mask;
};

rmat convolve_periodic(const rmat& x, const Kernel& k);
rmat convolve_periodic_adjoint(const rmat& x, const Kernel& k);
rmat apply_mask(const rmat& x, const Mask& mask);

double soft_threshold(double x, double t);
cplx soft_threshold(const cplx& x, double t);

struct CgResult {
  rmat x;
  int iterations = 0;
  double rel_residual = 0.0;
};

// Conjugate gradients for an SPD operator; stops at the relative residual or
// the iteration cap, whichever comes first.
CgResult cg_solve(const std::function<rmat(const rmat&)>& apply, const rmat& rhs,
                  const rmat& x0, int max_iters, double tol);

// Level-M dual-tree coefficient layout used as the sparsifying frame.
struct FrameCoeffs {
  std::vector<cmat> trees[2];

  FrameCoeffs& operator+=(const FrameCoeffs& o);
  FrameCoeffs& operator-=(const FrameCoeffs& o);
  double l1_norm() const;
};

// Analysis/synthesis pair with F(analyze(x)) == x; when a basis cover is
// given the frame runs over that cover instead of the deepest level.
class QwpFrame {
 public:
  QwpFrame(std::size_t n, const WpParams& params);

  FrameCoeffs analyze(const rmat& x) const;
  rmat synthesize(const FrameCoeffs& c) const;
  void set_basis(const std::vector<BandKey>& plus, const std::vector<BandKey>& minus);

  std::size_t n() const { return n_; }
  const WpParams& params() const { return params_; }

 private:
  std::size_t n_;
  WpParams params_;
  std::vector<BandKey> basis_plus_;
  std::vector<BandKey> basis_minus_;
};

struct SbiParams {
  WpParams wp;
  double lambda = 1.0;
  double mu = 0.01;
  int outer_iters = 50;
  int cg_iters = 30;
  double cg_tol = 1e-6;
  bool extend = false;
  bool best_basis_frame = false;  // pick the frame cover by entropy best basis of f
  CostKind cost = CostKind::entropy;
};

struct SbiTraceRow {
  int iteration = 0;
  double objective = 0.0;
  double cg_rel_residual = 0.0;
  double psnr_vs_ref = -1.0;
};

struct SbiResult {
  rmat image;
  std::vector<SbiTraceRow> trace;
};

// Split Bregman iteration for 0.5 ||P(K u) - f||^2 + lambda |F~ u|_1:
//   u   <- solve (K* P K + mu I) u = K* P f + mu F(d - b)
//   d   <- soft(F~ u + b, lambda / mu)
//   b   <- b + F~ u - d
SbiResult sbi_restore(const rmat& degraded, const DegradationModel& model,
                      const SbiParams& params, const rmat* ref = nullptr);

}  // namespace qwp
