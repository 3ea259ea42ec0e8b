#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vofde::fft {

using Complex = std::complex<double>;

std::size_t next_pow2(std::size_t n);

// In-place iterative radix-2 transforms; size must be a power of two.
// Twiddle tables are cached per size behind a mutex, so calls are
// thread-safe and reentrant.
void forward(Complex* data, std::size_t n);
void inverse(Complex* data, std::size_t n);  // includes the 1/n scaling

inline void forward(std::vector<Complex>& a) { forward(a.data(), a.size()); }
inline void inverse(std::vector<Complex>& a) { inverse(a.data(), a.size()); }

}  // namespace vofde::fft
