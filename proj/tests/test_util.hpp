#ifndef QWP_TEST_UTIL_HPP
#define QWP_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qwp/core.hpp"

namespace testutil {

inline qwp::rvec random_signal(std::size_t n, std::uint64_t seed, double lo = -1.0,
                               double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  qwp::rvec x(n);
  for (auto& v : x) v = uni(rng);
  return x;
}

inline qwp::cvec random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  qwp::cvec x(n);
  for (auto& v : x) v = {uni(rng), uni(rng)};
  return x;
}

inline qwp::rmat random_image(std::size_t n, std::uint64_t seed, double lo = 0.0,
                              double hi = 255.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  qwp::rmat img(n, n);
  for (std::size_t i = 0; i < n * n; ++i) img.data()[i] = uni(rng);
  return img;
}

inline double max_abs_diff(const qwp::rvec& a, const qwp::rvec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const qwp::cvec& a, const qwp::cvec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const qwp::rmat& a, const qwp::rmat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs_diff(const qwp::cmat& a, const qwp::cmat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double energy(const qwp::rvec& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

inline double energy(const qwp::cvec& x) {
  double e = 0.0;
  for (const auto& v : x) e += std::norm(v);
  return e;
}

inline double energy(const qwp::rmat& x) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.rows() * x.cols(); ++i) e += x.data()[i] * x.data()[i];
  return e;
}

inline double energy(const qwp::cmat& x) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.rows() * x.cols(); ++i) e += std::norm(x.data()[i]);
  return e;
}

inline double dot(const qwp::rvec& a, const qwp::rvec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace testutil

#endif
