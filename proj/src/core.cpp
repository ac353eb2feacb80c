#include "qwp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft_backend.hpp"

namespace qwp {

void fail(Status s, const std::string& msg) { throw Error(s, msg); }

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

const char* version() { return "1.0.0"; }

cvec dft(const cvec& x) {
  cvec out(x.size());
  detail::fft(x.data(), out.data(), x.size(), false);
  return out;
}

cvec idft(const cvec& x) {
  cvec out(x.size());
  detail::fft(x.data(), out.data(), x.size(), true);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : out) v *= scale;
  return out;
}

cvec dft(const rvec& x) {
  cvec tmp(x.begin(), x.end());
  return dft(tmp);
}

rvec idft_real(const cvec& spectrum) {
  cvec full = idft(spectrum);
  rvec out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
  return out;
}

namespace {

void fft_rows_inplace(cmat& x, bool inverse) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    cplx* row = x.data() + r * x.cols();
    detail::fft(row, row, x.cols(), inverse);
  }
}

}  // namespace

cmat dft2(const cmat& x) {
  cmat out = x;
  fft_rows_inplace(out, false);
  out = out.transposed();
  fft_rows_inplace(out, false);
  return out.transposed();
}

cmat idft2(const cmat& x) {
  cmat out = x;
  fft_rows_inplace(out, true);
  out = out.transposed();
  fft_rows_inplace(out, true);
  out = out.transposed();
  const double scale = 1.0 / static_cast<double>(x.rows() * x.cols());
  for (auto& v : out.raw()) v *= scale;
  return out;
}

cmat dft2(const rmat& x) { return dft2(to_cmat(x)); }

rmat idft2_real(const cmat& spectrum) { return re(idft2(spectrum)); }

cmat to_cmat(const rmat& x) {
  cmat out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.raw()[i] = x.raw()[i];
  return out;
}

rmat re(const cmat& x) {
  rmat out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.raw()[i] = x.raw()[i].real();
  return out;
}

rmat im(const cmat& x) {
  rmat out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out.raw()[i] = x.raw()[i].imag();
  return out;
}

rvec u4r(std::size_t n, unsigned r) {
  require(is_pow2(n) && n >= 4, Status::invalid_argument, "u4r: N must be a power of two >= 4");
  require(r >= 1 && r <= 6, Status::invalid_argument, "u4r: order parameter r must be in 1..6");
  rvec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double c = std::cos(t), s = std::sin(t);
    out[k] = 0.5 * (std::pow(c, 4.0 * r) + std::pow(s, 4.0 * r));
  }
  return out;
}

FilterSpectra beta_alpha(std::size_t n, unsigned r) {
  const rvec u = u4r(n, r);
  FilterSpectra f;
  f.beta.resize(n);
  f.alpha.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double root = std::sqrt(u[k]);
    const double c2r = std::pow(std::cos(t), 2.0 * r);
    const double s2r = std::pow(std::sin(t), 2.0 * r);
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    f.beta[k] = c2r / root;
    f.alpha[k] = std::polar(1.0, ang) * (s2r / root);
  }
  return f;
}

void apply_hilbert_multiplier(cvec& spectrum) {
  const std::size_t n = spectrum.size();
  require(n % 2 == 0, Status::invalid_argument, "hilbert: length must be even");
  const std::size_t half = n / 2;
  spectrum[0] = 0.0;
  spectrum[half] = 0.0;
  for (std::size_t k = 1; k < half; ++k) spectrum[k] *= cplx(0.0, -1.0);
  for (std::size_t k = half + 1; k < n; ++k) spectrum[k] *= cplx(0.0, 1.0);
}

rvec hilbert(const rvec& x) {
  cvec spec = dft(x);
  apply_hilbert_multiplier(spec);
  return idft_real(spec);
}

rmat hilbert_rows(const rmat& x) {
  rmat out(x.rows(), x.cols());
  rvec row(x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) row[c] = x(r, c);
    rvec h = hilbert(row);
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = h[c];
  }
  return out;
}

rmat hilbert_cols(const rmat& x) { return hilbert_rows(x.transposed()).transposed(); }

std::pair<cvec, cvec> analytic_pair(const rvec& x) {
  const rvec h = hilbert(x);
  cvec plus(x.size()), minus(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    plus[k] = cplx(x[k], h[k]);
    minus[k] = cplx(x[k], -h[k]);
  }
  return {plus, minus};
}

double psnr(const double* a, const double* b, std::size_t count) {
  require(count > 0, Status::invalid_argument, "psnr: empty input");
  double err = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = a[i] - b[i];
    err += d * d;
  }
  if (err == 0.0) return kPsnrCap;
  const double val =
      10.0 * std::log10(static_cast<double>(count) * 255.0 * 255.0 / err);
  return val > kPsnrCap ? kPsnrCap : val;
}

double psnr(const rvec& a, const rvec& b) {
  require(a.size() == b.size(), Status::invalid_argument, "psnr: size mismatch");
  return psnr(a.data(), b.data(), a.size());
}

double psnr(const rmat& a, const rmat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Status::invalid_argument,
          "psnr: shape mismatch");
  return psnr(a.data(), b.data(), a.size());
}

std::pair<cvec, cvec> fb_forward_step(const cvec& x, const cvec& h0, const cvec& h1) {
  const std::size_t len = x.size();
  require(len >= 2 && len % 2 == 0, Status::invalid_argument, "fb step: length must be even");
  require(h0.size() == len && h1.size() == len, Status::invalid_argument,
          "fb step: filter length mismatch");
  const std::size_t half = len / 2;
  const cvec spec = dft(x);
  cvec c0(half), c1(half);
  for (std::size_t n = 0; n < half; ++n) {
    const cplx lo = spec[n], hi = spec[n + half];
    c0[n] = 0.5 * (std::conj(h0[n]) * lo + std::conj(h0[n + half]) * hi);
    c1[n] = 0.5 * (std::conj(h1[n]) * lo + std::conj(h1[n + half]) * hi);
  }
  return {idft(c0), idft(c1)};
}

cvec fb_inverse_step(const cvec& c0, const cvec& c1, const cvec& h0, const cvec& h1) {
  const std::size_t half = c0.size();
  require(half >= 1 && c1.size() == half, Status::invalid_argument,
          "fb step: channel size mismatch");
  const std::size_t len = half * 2;
  require(h0.size() == len && h1.size() == len, Status::invalid_argument,
          "fb step: filter length mismatch");
  const cvec s0 = dft(c0), s1 = dft(c1);
  cvec spec(len);
  for (std::size_t n = 0; n < half; ++n) {
    spec[n] = h0[n] * s0[n] + h1[n] * s1[n];
    spec[n + half] = h0[n + half] * s0[n] + h1[n + half] * s1[n];
  }
  return idft(spec);
}

std::pair<cmat, cmat> fb_forward_rows(const cmat& x, const cvec& h0, const cvec& h1) {
  const std::size_t half = x.cols() / 2;
  cmat c0(x.rows(), half), c1(x.rows(), half);
  cvec row(x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::copy(x.data() + r * x.cols(), x.data() + (r + 1) * x.cols(), row.begin());
    auto [a, b] = fb_forward_step(row, h0, h1);
    std::copy(a.begin(), a.end(), c0.data() + r * half);
    std::copy(b.begin(), b.end(), c1.data() + r * half);
  }
  return {c0, c1};
}

cmat fb_inverse_rows(const cmat& c0, const cmat& c1, const cvec& h0, const cvec& h1) {
  require(c0.rows() == c1.rows() && c0.cols() == c1.cols(), Status::invalid_argument,
          "fb rows: channel shape mismatch");
  const std::size_t len = c0.cols() * 2;
  cmat out(c0.rows(), len);
  cvec a(c0.cols()), b(c0.cols());
  for (std::size_t r = 0; r < c0.rows(); ++r) {
    std::copy(c0.data() + r * c0.cols(), c0.data() + (r + 1) * c0.cols(), a.begin());
    std::copy(c1.data() + r * c1.cols(), c1.data() + (r + 1) * c1.cols(), b.begin());
    cvec x = fb_inverse_step(a, b, h0, h1);
    std::copy(x.begin(), x.end(), out.data() + r * len);
  }
  return out;
}

}  // namespace qwp
