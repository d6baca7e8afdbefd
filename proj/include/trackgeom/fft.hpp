#pragma once

#include <complex>
#include <span>
#include <vector>

namespace trackgeom::fft {

/// One-sided DFT of a real sequence: n/2 + 1 bins, unnormalised.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Inverse of forward_real for a sequence of length n; includes the 1/n scaling.
std::vector<double> inverse_real(std::span<const std::complex<double>> bins, std::size_t n);

/// Bin frequencies of a one-sided DFT of length n sampled at rate_hz.
std::vector<double> rfft_frequencies(std::size_t n, double rate_hz);

}  // namespace trackgeom::fft
