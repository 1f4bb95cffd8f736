#pragma once

#include <complex>
#include <vector>

namespace qwlab {

// In-place radix-2 DIT transform, power-of-two length only (a ring invariant, so
// nothing more general is needed). No normalization: forward applies e^{-2pi i jk/N},
// inverse e^{+2pi i jk/N}; callers own their scale factors. Twiddle tables are
// cached per length behind a mutex; lookups after population are lock-free reads
// of immutable vectors shared across threads.
void fft(std::vector<std::complex<double>>& a, bool forward);

}
