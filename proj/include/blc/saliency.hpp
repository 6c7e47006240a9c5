#pragma once

#include <utility>

#include "blc/binary_map.hpp"
#include "blc/fft.hpp"
#include "blc/image.hpp"

namespace blc {

/// Knobs of the log-spectral-residual extraction stage.
struct SaliencyParams {
    int avg_filter_n = 3;        ///< box filter side for the log-spectrum mean, odd
    double gaussian_sigma = 2.5; ///< smoothing of the reconstructed saliency, pixels
    double gamma = 3.0;          ///< binarization level relative to the mean saliency
    double log_epsilon = 1e-12;  ///< guard added to amplitudes before the log

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;
};

/// Per-bin log amplitude L = ln(|F| + eps) and phase P = atan2(im, re).
std::pair<RealField, RealField> log_amplitude_and_phase(const Spectrum& spec,
                                                        double log_epsilon);

/// Log spectral residual: R = L - box_n * L, with an n x n mean filter and
/// replicate borders. n must be odd and positive.
RealField spectral_residual(const RealField& log_amplitude, int n);

/// n x n mean filter with replicate (clamp-to-edge) borders.
RealField box_filter(const RealField& field, int n);

/// Separable Gaussian smoothing with a truncated kernel of the given
/// radius (each 1-D kernel normalized to sum 1), replicate borders.
/// Radius 0 is the identity.
RealField gaussian_blur(const RealField& field, double sigma, int radius);

/// Reconstructs the saliency map: the residual amplitude exp(R) is
/// recombined with the phase, inverse transformed, squared per pixel and
/// Gaussian smoothed (radius ceil(3 sigma)). Result is nonnegative.
RealField reconstruct_saliency(const RealField& residual, const RealField& phase,
                               double sigma);

/// O(x) = 1 iff S(x) > mean(S) * gamma.
BinaryMap binarize(const RealField& saliency, double gamma);

/// Full saliency field for an image at working resolution.
RealField compute_saliency_map(const GrayImage& img, const SaliencyParams& params);

/// Composition of the whole stage: DFT, log amplitude and phase, spectral
/// residual, reconstruction, binarization.
BinaryMap compute_binary_content(const GrayImage& img, const SaliencyParams& params);

}  // namespace blc
