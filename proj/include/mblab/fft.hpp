#pragma once

#include <cstddef>
#include <span>

#include "mblab/types.hpp"

// Thin FFTW wrapper. Plans are cached per shape and executed with the
// new-array interface, so calls are safe from concurrent workers.
namespace mblab::fft {

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2 pi i jk/n}, in place.
void forward(std::span<cplx> data);

/// Unnormalized inverse DFT, x_j = sum_k X_k e^{+2 pi i jk/n}, in place.
void inverse(std::span<cplx> data);

/// 2-D transforms of a row-major (rows x cols) array, unnormalized.
void forward_2d(std::span<cplx> data, std::size_t rows, std::size_t cols);
void inverse_2d(std::span<cplx> data, std::size_t rows, std::size_t cols);

}  // namespace mblab::fft
