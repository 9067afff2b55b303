#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hypcomp {

using Complex = std::complex<double>;

/// Normalized analysis transform: out[k] = (1/M) sum_j x[j] exp(-2 pi i j k / M).
/// Applied to samples of a function on the M-th roots of unity it returns its
/// (aliased) Fourier coefficients.
std::vector<Complex> analysis_dft(std::span<const Complex> samples);

/// Synthesis transform: x[j] = sum_k c[k] exp(2 pi i j k / M), with c
/// zero-padded to length M. Requires c.size() <= M.
std::vector<Complex> synthesis_dft(std::span<const Complex> coeffs, std::size_t size);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace hypcomp
