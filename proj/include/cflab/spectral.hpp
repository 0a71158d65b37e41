#pragma once

#include <cstddef>

#include "cflab/grid.hpp"

namespace cflab {

// Transform convention: the forward transform is unnormalized and the inverse
// carries the full 1/(H*W) factor. Every elementwise identity in kernel.hpp and
// update.hpp assumes this pairing.

/// Unnormalized forward 2D DFT of a real grid.
Spectrum fft2(const RealGrid& g);

/// Unnormalized forward 2D DFT of a complex grid.
Spectrum fft2(const Spectrum& s);

/// Inverse 2D DFT scaled by 1/(H*W), returning the real part.
///
/// The spectra produced in this library are conjugate-symmetric, so the
/// imaginary part of the result is pure round-off. A residue above
/// 1e-8 * (1 + max|real|) means a caller built a non-Hermitian spectrum and
/// raises NumericalError.
RealGrid ifft2(const Spectrum& s);

/// Inverse 2D DFT scaled by 1/(H*W) keeping the complex result.
Spectrum ifft2_complex(const Spectrum& s);

/// out(i, j) = g((i - di) mod H, (j - dj) mod W).
RealGrid cyclic_shift(const RealGrid& g, long di, long dj);

/// Separable Hann taper, 0.5 * (1 - cos(2*pi*n/(N-1))) per axis; a length-1
/// axis is the constant 1.
RealGrid hann_window(std::size_t height, std::size_t width);

/// Gaussian regression target peaked at (0, 0) with wrapped distances.
RealGrid gaussian_label(std::size_t height, std::size_t width, double sigma_y);

}  // namespace cflab
