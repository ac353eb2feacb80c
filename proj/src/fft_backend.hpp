#pragma once

#include <complex>
#include <cstddef>

namespace qwp::detail {

// Unnormalized transform, out-of-place allowed with in == out too.
// inverse=true gives the conjugate-exponent transform without the 1/N factor.
void fft(const std::complex<double>* in, std::complex<double>* out, std::size_t n,
         bool inverse);

}  // namespace qwp::detail
