#include "blc/features.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blc/errors.hpp"
#include "blc/saliency.hpp"

namespace blc {

void KeypointSet::add(const Keypoint& point, std::span<const double> descriptor) {
    assert(descriptor.size() == dim_);
    points_.push_back(point);
    descriptors_.insert(descriptors_.end(), descriptor.begin(), descriptor.end());
}

namespace {

RealField to_field(const GrayImage& img) {
    RealField field(img.width, img.height);
    field.values = img.data;
    return field;
}

double sample_clamped(const RealField& f, int r, int c) {
    r = std::clamp(r, 0, f.height - 1);
    c = std::clamp(c, 0, f.width - 1);
    return f.values[static_cast<std::size_t>(r) * f.width + c];
}

double sample_bilinear(const RealField& f, double row, double col) {
    row = std::clamp(row, 0.0, static_cast<double>(f.height - 1));
    col = std::clamp(col, 0.0, static_cast<double>(f.width - 1));
    const int r0 = static_cast<int>(std::floor(row));
    const int c0 = static_cast<int>(std::floor(col));
    const int r1 = std::min(r0 + 1, f.height - 1);
    const int c1 = std::min(c0 + 1, f.width - 1);
    const double wr = row - r0;
    const double wc = col - c0;
    const double top = f.at(r0, c0) * (1.0 - wc) + f.at(r0, c1) * wc;
    const double bot = f.at(r1, c0) * (1.0 - wc) + f.at(r1, c1) * wc;
    return top * (1.0 - wr) + bot * wr;
}

struct ScaleLevel {
    double sigma = 0.0;
    RealField grad_row;   ///< d/d(row) of the blurred image
    RealField grad_col;   ///< d/d(col)
    RealField response;   ///< sigma^4 * det(Hessian)
};

ScaleLevel build_level(const RealField& base, double sigma) {
    ScaleLevel level;
    level.sigma = sigma;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const RealField blurred = gaussian_blur(base, sigma, radius);

    const int w = base.width;
    const int h = base.height;
    level.grad_row = RealField(w, h);
    level.grad_col = RealField(w, h);
    level.response = RealField(w, h);
    const double norm = sigma * sigma * sigma * sigma;

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double up = sample_clamped(blurred, r - 1, c);
            const double down = sample_clamped(blurred, r + 1, c);
            const double left = sample_clamped(blurred, r, c - 1);
            const double right = sample_clamped(blurred, r, c + 1);
            const double center = blurred.at(r, c);

            level.grad_row.at(r, c) = 0.5 * (down - up);
            level.grad_col.at(r, c) = 0.5 * (right - left);

            const double lrr = up - 2.0 * center + down;
            const double lcc = left - 2.0 * center + right;
            const double lrc = 0.25 * (sample_clamped(blurred, r - 1, c - 1) +
                                       sample_clamped(blurred, r + 1, c + 1) -
                                       sample_clamped(blurred, r - 1, c + 1) -
                                       sample_clamped(blurred, r + 1, c - 1));
            level.response.at(r, c) = norm * (lrr * lcc - lrc * lrc);
        }
    }
    return level;
}

/// 20x20 gradient samples spaced sigma apart, binned into 4x4 subregions of
/// (sum dcol, sum |dcol|, sum drow, sum |drow|), Gaussian weighted.
bool describe(const ScaleLevel& level, const Keypoint& kp,
              std::array<double, HessianBlobExtractor::kDescriptorDim>& out) {
    constexpr int kGrid = 20;
    constexpr int kSub = 5;                 // grid cells per subregion side
    constexpr double kWeightSigma = 3.3;    // in units of the keypoint sigma
    out.fill(0.0);

    for (int gi = 0; gi < kGrid; ++gi) {
        const double dv = gi + 0.5 - kGrid / 2.0;  // row offset, sigma units
        for (int gj = 0; gj < kGrid; ++gj) {
            const double du = gj + 0.5 - kGrid / 2.0;
            const double weight =
                std::exp(-(du * du + dv * dv) / (2.0 * kWeightSigma * kWeightSigma));
            const double row = kp.row + dv * level.sigma;
            const double col = kp.col + du * level.sigma;
            const double drow = sample_bilinear(level.grad_row, row, col) * weight;
            const double dcol = sample_bilinear(level.grad_col, row, col) * weight;

            const std::size_t sub = static_cast<std::size_t>(gi / kSub) * 4 + gj / kSub;
            double* bin = out.data() + sub * 4;
            bin[0] += dcol;
            bin[1] += std::abs(dcol);
            bin[2] += drow;
            bin[3] += std::abs(drow);
        }
    }

    double norm_sq = 0.0;
    for (double v : out) norm_sq += v * v;
    if (norm_sq < 1e-24) return false;  // flat patch, no usable descriptor
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : out) v *= inv;
    return true;
}

}  // namespace

KeypointSet HessianBlobExtractor::detect_and_describe(const GrayImage& img,
                                                      int max_features) const {
    if (params_.num_scales < 3) {
        throw std::invalid_argument("num_scales must be at least 3");
    }
    if (params_.base_sigma <= 0.0 || params_.scale_step <= 1.0) {
        throw std::invalid_argument("invalid scale stack parameters");
    }

    KeypointSet set(kDescriptorDim);
    if (img.width < 3 || img.height < 3 || max_features <= 0) return set;

    const RealField base = to_field(img);
    std::vector<ScaleLevel> levels;
    levels.reserve(params_.num_scales);
    double sigma = params_.base_sigma;
    for (int i = 0; i < params_.num_scales; ++i) {
        levels.push_back(build_level(base, sigma));
        sigma *= params_.scale_step;
    }

    // Extrema of |response| over the 26-neighborhood in (row, col, scale).
    struct Candidate {
        Keypoint kp;
        std::size_t level = 0;
    };
    std::vector<Candidate> candidates;
    for (std::size_t s = 1; s + 1 < levels.size(); ++s) {
        const RealField& cur = levels[s].response;
        for (int r = 1; r + 1 < img.height; ++r) {
            for (int c = 1; c + 1 < img.width; ++c) {
                const double value = cur.at(r, c);
                const double mag = std::abs(value);
                if (mag < params_.response_threshold) continue;

                bool is_max = true;
                for (int ds = -1; ds <= 1 && is_max; ++ds) {
                    const RealField& nb = levels[s + ds].response;
                    for (int dr = -1; dr <= 1 && is_max; ++dr) {
                        for (int dc = -1; dc <= 1; ++dc) {
                            if (ds == 0 && dr == 0 && dc == 0) continue;
                            if (std::abs(nb.at(r + dr, c + dc)) >= mag) {
                                is_max = false;
                                break;
                            }
                        }
                    }
                }
                if (!is_max) continue;

                Candidate cand;
                cand.kp.row = r;
                cand.kp.col = c;
                cand.kp.scale = levels[s].sigma;
                cand.kp.response = value;
                cand.level = s;
                candidates.push_back(cand);
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  const double ma = std::abs(a.kp.response);
                  const double mb = std::abs(b.kp.response);
                  if (ma != mb) return ma > mb;
                  if (a.kp.scale != b.kp.scale) return a.kp.scale < b.kp.scale;
                  if (a.kp.row != b.kp.row) return a.kp.row < b.kp.row;
                  return a.kp.col < b.kp.col;
              });
    if (candidates.size() > static_cast<std::size_t>(max_features)) {
        candidates.resize(static_cast<std::size_t>(max_features));
    }

    std::array<double, kDescriptorDim> desc;
    for (const Candidate& cand : candidates) {
        if (describe(levels[cand.level], cand.kp, desc)) {
            set.add(cand.kp, desc);
        }
    }
    return set;
}

KeypointSet detect_and_describe(const GrayImage& img, int max_features) {
    static const HessianBlobExtractor extractor;
    return extractor.detect_and_describe(img, max_features);
}

namespace {

struct TwoNearest {
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    double second_sq = std::numeric_limits<double>::infinity();
};

TwoNearest two_nearest(const KeypointSet& from, std::size_t i, const KeypointSet& to) {
    const std::span<const double> query = from.descriptor(i);
    const std::size_t dim = from.descriptor_dim();
    TwoNearest out;
    for (std::size_t j = 0; j < to.size(); ++j) {
        const std::span<const double> other = to.descriptor(j);
        double sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = query[k] - other[k];
            sq += d * d;
        }
        if (sq < out.best_sq) {
            out.second_sq = out.best_sq;
            out.best_sq = sq;
            out.best = j;
        } else if (sq < out.second_sq) {
            out.second_sq = sq;
        }
    }
    return out;
}

constexpr std::size_t kNoMatch = std::numeric_limits<std::size_t>::max();

/// Nearest neighbor per query, kNoMatch where the ratio test fails.
/// A single-element gallery leaves nothing to take a ratio against, so the
/// test is waived and the lone neighbor accepted.
std::vector<std::size_t> directed_matches(const KeypointSet& from, const KeypointSet& to,
                                          double ratio) {
    std::vector<std::size_t> nn(from.size(), kNoMatch);
    const double ratio_sq = ratio * ratio;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const TwoNearest near = two_nearest(from, i, to);
        if (to.size() == 1 || near.best_sq < ratio_sq * near.second_sq) {
            nn[i] = near.best;
        }
    }
    return nn;
}

}  // namespace

MatchResult match_descriptors(const KeypointSet& a, const KeypointSet& b, double ratio) {
    MatchResult result;
    if (a.empty() || b.empty()) return result;
    if (a.descriptor_dim() != b.descriptor_dim()) {
        throw DimensionMismatch("descriptor dimensionality differs between sets");
    }

    const std::vector<std::size_t> forward = directed_matches(a, b, ratio);
    const std::vector<std::size_t> backward = directed_matches(b, a, ratio);

    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t j = forward[i];
        if (j == kNoMatch || backward[j] != i) continue;
        double sq = 0.0;
        const std::span<const double> da = a.descriptor(i);
        const std::span<const double> db = b.descriptor(j);
        for (std::size_t k = 0; k < a.descriptor_dim(); ++k) {
            const double d = da[k] - db[k];
            sq += d * d;
        }
        result.pairs.push_back({i, j, std::sqrt(sq)});
    }
    return result;
}

}  // namespace blc
