#pragma once

#include <vector>

#include "blc/image.hpp"

namespace blc {

/// Complex 2-D array stored as separate real and imaginary planes. Holds
/// the frequency-domain transform of an image, or the complex spatial
/// field produced by the inverse transform.
struct Spectrum {
    int width = 0;
    int height = 0;
    std::vector<double> re;
    std::vector<double> im;

    Spectrum() = default;
    Spectrum(int w, int h)
        : width(w),
          height(h),
          re(static_cast<std::size_t>(w) * h, 0.0),
          im(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
};

/// 2-D discrete Fourier transform, un-normalized forward convention
/// (the inverse applies the full 1/(W*H) factor). Handles arbitrary
/// dimensions: power-of-two sizes run radix-2, the rest go through the
/// Bluestein chirp-z path.
Spectrum forward_dft(const GrayImage& img);

/// Inverse of forward_dft, including the 1/(W*H) normalization. The
/// result is a complex spatial field.
Spectrum inverse_dft(const Spectrum& spec);

}  // namespace blc
