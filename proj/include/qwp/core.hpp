#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwp {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

// Status values double as CLI exit codes, so keep them stable.
enum class Status : int {
  ok = 0,
  invalid_argument = 2,
  io_error = 3,
  numeric_error = 4,
};

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& msg) : std::runtime_error(msg), status_(s) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] void fail(Status s, const std::string& msg);

inline void require(bool cond, Status s, const char* msg) {
  if (!cond) fail(s, msg);
}

bool is_pow2(std::uint64_t v);

// Dense row-major matrix, just enough surface for the transforms.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T value = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using rmat = Matrix<double>;
using cmat = Matrix<cplx>;

// DFT convention: forward carries no factor, inverse carries 1/N.
// dft(x)[n] = sum_k x[k] exp(-2*pi*i*k*n/N).
cvec dft(const cvec& x);
cvec idft(const cvec& x);
cvec dft(const rvec& x);
rvec idft_real(const cvec& spectrum);  // inverse, imaginary part discarded

// 2D separable DFT on row-major matrices, same convention per axis.
cmat dft2(const cmat& x);
cmat idft2(const cmat& x);
cmat dft2(const rmat& x);
rmat idft2_real(const cmat& spectrum);

cmat to_cmat(const rmat& x);
rmat re(const cmat& x);
rmat im(const cmat& x);

// U^{4r}[n] = (cos^{4r}(pi n/N) + sin^{4r}(pi n/N)) / 2, the normalizer for the
// order-2r spline filter pair.
rvec u4r(std::size_t n, unsigned r);

// Level-1 filter spectra on the full grid:
//   beta[n]  = cos^{2r}(pi n/N) / sqrt(U^{4r}[n])
//   alpha[n] = w^n sin^{2r}(pi n/N) / sqrt(U^{4r}[n]),  w = exp(2 pi i / N)
// beta is real; alpha carries the one-sample phase. |beta|^2 + |alpha|^2 == 2.
struct FilterSpectra {
  rvec beta;
  cvec alpha;
};
FilterSpectra beta_alpha(std::size_t n, unsigned r);

// Periodic Hilbert transform: spectral multiplier -i on (0, N/2), +i on
// (N/2, N), zero at n = 0 and n = N/2.
rvec hilbert(const rvec& x);
void apply_hilbert_multiplier(cvec& spectrum);

// Rows run along the second index; H^h acts within each row, H^v within each
// column.
rmat hilbert_rows(const rmat& x);
rmat hilbert_cols(const rmat& x);

// x_bar_pm = x +- i H(x); spectra are one-sided up to the shared n=0, N/2 bins.
std::pair<cvec, cvec> analytic_pair(const rvec& x);

// 10*log10(count * 255^2 / sum of squared errors), capped at 400 dB.
inline constexpr double kPsnrCap = 400.0;
double psnr(const double* a, const double* b, std::size_t count);
double psnr(const rvec& a, const rvec& b);
double psnr(const rmat& a, const rmat& b);

// Critically sampled two-channel filter bank step in the DFT domain.  The
// filters are given by their spectra on the band's own grid (length L, even).
// Forward, for n in [0, L/2):
//   c_mu_hat[n] = (conj(h_mu[n]) x_hat[n] + conj(h_mu[n + L/2]) x_hat[n + L/2]) / 2
// Inverse:
//   x_hat[n]       = h0[n] c0_hat[n] + h1[n] c1_hat[n]
//   x_hat[n + L/2] = h0[n + L/2] c0_hat[n] + h1[n + L/2] c1_hat[n]
std::pair<cvec, cvec> fb_forward_step(const cvec& x, const cvec& h0, const cvec& h1);
cvec fb_inverse_step(const cvec& c0, const cvec& c1, const cvec& h0, const cvec& h1);

// Same step applied to every row of a matrix (the column counterpart goes
// through transposed()).
std::pair<cmat, cmat> fb_forward_rows(const cmat& x, const cvec& h0, const cvec& h1);
cmat fb_inverse_rows(const cmat& c0, const cmat& c1, const cvec& h0, const cvec& h1);

const char* version();

}  // namespace qwp
