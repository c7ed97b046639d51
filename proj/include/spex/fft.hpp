#ifndef SPEX_FFT_HPP
#define SPEX_FFT_HPP

#include <complex>
#include <vector>

namespace spex::detail {

/// Unnormalized 2-D DFT with kernel e^{+i 2 pi (j . t) / n} of a row-major
/// n x n array: out[j1*n + j2] = sum_t in[t1*n + t2] e^{+i 2 pi j.t / n}.
/// Thread-safe (plan creation is serialized internally).
std::vector<std::complex<double>> dft2_plus(int n, const std::vector<std::complex<double>>& in);

} // namespace spex::detail

#endif
