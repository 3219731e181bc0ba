#pragma once

#include <complex>
#include <vector>

namespace pmclt {

/// In-place forward DFT, A_j = sum_k a_k e^{-2 pi i jk / N}, radix-2
/// Cooley-Tukey with a fully precomputed twiddle table (grid sizes here are
/// powers of two by construction). Throws for non-power-of-two input.
void fft_inplace(std::vector<std::complex<double>>& a);

}  // namespace pmclt
