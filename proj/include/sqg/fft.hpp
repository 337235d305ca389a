#pragma once

#include <complex>

namespace sqg {

/// Unnormalized in-place 2D complex FFT of an n-by-n array (row-major).
/// forward uses the e^{-i k x} kernel, inverse e^{+i k x}; a forward
/// followed by an inverse multiplies the data by n^2.
///
/// Plans are FFTW_ESTIMATE so that identical builds produce bit-identical
/// transforms run to run; plans are cached per size and shared.
void fft2_forward(int n, std::complex<double>* data);
void fft2_inverse(int n, std::complex<double>* data);

}  // namespace sqg
