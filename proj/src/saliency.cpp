#include "blc/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blc {

void SaliencyParams::validate() const {
    if (avg_filter_n < 1 || avg_filter_n % 2 == 0)
        throw std::invalid_argument("avg_filter_n must be odd and positive, got " +
                                    std::to_string(avg_filter_n));
    if (!(gaussian_sigma > 0.0))
        throw std::invalid_argument("gaussian_sigma must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (!(log_epsilon > 0.0)) throw std::invalid_argument("log_epsilon must be positive");
}

std::pair<RealField, RealField> log_amplitude_and_phase(const Spectrum& spec,
                                                        double log_epsilon) {
    RealField log_amp(spec.width, spec.height);
    RealField phase(spec.width, spec.height);
    const std::size_t n = spec.re.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double re = spec.re[i];
        const double im = spec.im[i];
        log_amp.values[i] = std::log(std::sqrt(re * re + im * im) + log_epsilon);
        // atan2(0, 0) is 0, which is the phase we want for an empty bin.
        phase.values[i] = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
    }
    return {std::move(log_amp), std::move(phase)};
}

RealField box_filter(const RealField& field, int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("box filter size must be odd and positive");
    if (n == 1) return field;

    const int radius = n / 2;
    RealField out(field.width, field.height);
    const double inv_area = 1.0 / (static_cast<double>(n) * n);
    for (int r = 0; r < field.height; ++r) {
        for (int c = 0; c < field.width; ++c) {
            double sum = 0.0;
            for (int dr = -radius; dr <= radius; ++dr) {
                const int rr = std::clamp(r + dr, 0, field.height - 1);
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int cc = std::clamp(c + dc, 0, field.width - 1);
                    sum += field.at(rr, cc);
                }
            }
            out.at(r, c) = sum * inv_area;
        }
    }
    return out;
}

RealField spectral_residual(const RealField& log_amplitude, int n) {
    RealField smoothed = box_filter(log_amplitude, n);
    RealField out(log_amplitude.width, log_amplitude.height);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = log_amplitude.values[i] - smoothed.values[i];
    return out;
}

RealField gaussian_blur(const RealField& field, double sigma, int radius) {
    if (radius <= 0) return field;

    std::vector<double> kernel(static_cast<std::size_t>(radius) + 1);
    double sum = 0.0;
    for (int i = 0; i <= radius; ++i) {
        kernel[static_cast<std::size_t>(i)] =
            std::exp(-0.5 * (static_cast<double>(i) * i) / (sigma * sigma));
        sum += (i == 0 ? 1.0 : 2.0) * kernel[static_cast<std::size_t>(i)];
    }
    for (auto& k : kernel) k /= sum;

    RealField tmp(field.width, field.height);
    for (int r = 0; r < field.height; ++r) {
        for (int c = 0; c < field.width; ++c) {
            double acc = kernel[0] * field.at(r, c);
            for (int i = 1; i <= radius; ++i) {
                const int left = std::max(c - i, 0);
                const int right = std::min(c + i, field.width - 1);
                acc += kernel[static_cast<std::size_t>(i)] *
                       (field.at(r, left) + field.at(r, right));
            }
            tmp.at(r, c) = acc;
        }
    }
    RealField out(field.width, field.height);
    for (int r = 0; r < field.height; ++r) {
        for (int c = 0; c < field.width; ++c) {
            double acc = kernel[0] * tmp.at(r, c);
            for (int i = 1; i <= radius; ++i) {
                const int up = std::max(r - i, 0);
                const int down = std::min(r + i, field.height - 1);
                acc += kernel[static_cast<std::size_t>(i)] *
                       (tmp.at(up, c) + tmp.at(down, c));
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

RealField reconstruct_saliency(const RealField& residual, const RealField& phase,
                               double sigma) {
    if (residual.width != phase.width || residual.height != phase.height)
        throw DimensionMismatch("residual vs phase fields");

    Spectrum recombined(residual.width, residual.height);
    for (std::size_t i = 0; i < recombined.re.size(); ++i) {
        const double amp = std::exp(residual.values[i]);
        recombined.re[i] = amp * std::cos(phase.values[i]);
        recombined.im[i] = amp * std::sin(phase.values[i]);
    }

    const Spectrum spatial = inverse_dft(recombined);
    RealField squared(residual.width, residual.height);
    for (std::size_t i = 0; i < squared.values.size(); ++i) {
        squared.values[i] =
            spatial.re[i] * spatial.re[i] + spatial.im[i] * spatial.im[i];
    }

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    return gaussian_blur(squared, sigma, radius);
}

BinaryMap binarize(const RealField& saliency, double gamma) {
    double mean = 0.0;
    for (double v : saliency.values) mean += v;
    mean /= static_cast<double>(saliency.values.size());

    const double threshold = mean * gamma;
    BinaryMap map(saliency.width, saliency.height);
    for (int r = 0; r < saliency.height; ++r)
        for (int c = 0; c < saliency.width; ++c)
            if (saliency.at(r, c) > threshold) map.set(r, c, true);
    return map;
}

RealField compute_saliency_map(const GrayImage& img, const SaliencyParams& params) {
    params.validate();
    const Spectrum spec = forward_dft(img);

    // A spectrum with no energy at all (only the all-black frame produces
    // one) carries no content. Without this exit the log guard would
    // whiten the silence into a flat spectrum whose reconstruction is an
    // impulse at the origin, i.e. a phantom salient corner.
    bool any_energy = false;
    for (std::size_t i = 0; i < spec.re.size() && !any_energy; ++i) {
        any_energy = spec.re[i] != 0.0 || spec.im[i] != 0.0;
    }
    if (!any_energy) return RealField(img.width, img.height);

    auto [log_amp, phase] = log_amplitude_and_phase(spec, params.log_epsilon);
    const RealField residual = spectral_residual(log_amp, params.avg_filter_n);
    return reconstruct_saliency(residual, phase, params.gaussian_sigma);
}

BinaryMap compute_binary_content(const GrayImage& img, const SaliencyParams& params) {
    return binarize(compute_saliency_map(img, params), params.gamma);
}

}  // namespace blc
