#pragma once

#include <complex>
#include <span>

namespace gsbq::fft {

// Thin FFTW front end. Plans are cached per transform size behind a mutex;
// execution goes through the new-array interface, which is safe to call from
// several threads at once. Plans carry FFTW_UNALIGNED so plain std::vector
// storage is acceptable.

// Unnormalized real-to-halfcomplex transform; out.size() == n/2 + 1.
void forward(std::span<const double> in, std::span<std::complex<double>> out);

// Halfcomplex-to-real transform scaled by 1/n.
void inverse(std::span<const std::complex<double>> in, std::span<double> out);

// Unnormalized forward complex DFT of a full-length array (correlation scans).
void complex_forward(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out);

}  // namespace gsbq::fft
