#include "qwlab/fft.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>

#include "qwlab/errors.hpp"

namespace qwlab {

namespace {

// Half-length twiddles e^{-2pi i k/N}, k < N/2. Immutable once published.
const std::vector<std::complex<double>>& twiddles(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<std::vector<std::complex<double>>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) {
        auto t = std::make_unique<std::vector<std::complex<double>>>(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double a = -2.0 * M_PI * double(k) / double(n);
            (*t)[k] = {std::cos(a), std::sin(a)};
        }
        slot = std::move(t);
    }
    return *slot;
}

} // namespace

void fft(std::vector<std::complex<double>>& a, bool forward) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw ParameterError("fft length must be a power of two, got " + std::to_string(n));
    if (n == 1) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> w = tw[k * stride];
                if (!forward) w = std::conj(w);
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}
