#include "vofde/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace vofde::fft {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

// w[j] = exp(-2*pi*i*j/n) for j < n/2; stage `len` strides by n/len.
using Twiddles = std::vector<Complex>;

std::shared_ptr<const Twiddles> twiddles_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Twiddles>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto tw = std::make_shared<Twiddles>(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double ang = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        (*tw)[j] = Complex(std::cos(ang), std::sin(ang));
    }
    cache.emplace(n, tw);
    return tw;
}

void bit_reverse(Complex* a, std::size_t n) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace

void forward(Complex* a, std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft::forward: size must be a power of two");
    if (n == 1) return;
    auto tw = twiddles_for(n);
    const Complex* w = tw->data();
    bit_reverse(a, n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const Complex u = a[blk + j];
                const Complex v = a[blk + j + half] * w[j * stride];
                a[blk + j] = u + v;
                a[blk + j + half] = u - v;
            }
        }
    }
}

void inverse(Complex* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]);
    forward(a, n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]) * scale;
}

}  // namespace vofde::fft
