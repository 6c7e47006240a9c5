#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blc/image.hpp"

namespace blc {

struct Keypoint {
    double row = 0.0;
    double col = 0.0;
    double scale = 0.0;        ///< detection sigma in pixels
    double orientation = 0.0;  ///< radians; 0 for the upright default extractor
    double response = 0.0;     ///< signed determinant-of-Hessian response
};

/// Keypoints with one fixed-length descriptor per point, stored flat.
/// Descriptors are L2-normalized.
class KeypointSet {
public:
    KeypointSet() = default;
    explicit KeypointSet(std::size_t descriptor_dim) : dim_(descriptor_dim) {}

    void add(const Keypoint& point, std::span<const double> descriptor);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    std::size_t descriptor_dim() const { return dim_; }

    const Keypoint& point(std::size_t i) const { return points_[i]; }
    const std::vector<Keypoint>& points() const { return points_; }
    std::span<const double> descriptor(std::size_t i) const {
        return {descriptors_.data() + i * dim_, dim_};
    }

private:
    std::size_t dim_ = 0;
    std::vector<Keypoint> points_;
    std::vector<double> descriptors_;
};

/// Contract for the pluggable detector/descriptor: deterministic, up to
/// max_features keypoints ranked by response magnitude, descriptors of a
/// fixed dimensionality, empty set on featureless images.
class FeatureExtractor {
public:
    virtual ~FeatureExtractor() = default;
    virtual KeypointSet detect_and_describe(const GrayImage& img,
                                            int max_features) const = 0;
};

struct HessianBlobParams {
    double base_sigma = 1.6;
    double scale_step = 1.4142135623730951;  // sqrt(2)
    int num_scales = 5;                      ///< >= 3; extrema live on interior scales
    double response_threshold = 2e-4;        ///< on |det H|, scale-normalized
};

/// Default extractor: scale-normalized determinant-of-Hessian extrema
/// (blobs and saddle corners) over a small Gaussian scale stack, described
/// by an upright 64-dimensional gradient-sum descriptor (4x4 subregions of
/// dx, |dx|, dy, |dy| sums, Gaussian weighted, L2-normalized).
class HessianBlobExtractor final : public FeatureExtractor {
public:
    HessianBlobExtractor() = default;
    explicit HessianBlobExtractor(const HessianBlobParams& params) : params_(params) {}

    KeypointSet detect_and_describe(const GrayImage& img,
                                    int max_features) const override;

    static constexpr std::size_t kDescriptorDim = 64;

private:
    HessianBlobParams params_;
};

/// Convenience wrapper running the default extractor.
KeypointSet detect_and_describe(const GrayImage& img, int max_features);

struct MatchResult {
    struct Pair {
        std::size_t index_a = 0;
        std::size_t index_b = 0;
        double distance = 0.0;
    };
    std::vector<Pair> pairs;

    std::size_t count() const { return pairs.size(); }
};

/// Nearest-neighbor matching with Lowe's ratio test in both directions and
/// mutual-best one-to-one filtering. When one side has a single descriptor
/// the ratio test is waived for that direction. Throws DimensionMismatch
/// when descriptor lengths differ.
MatchResult match_descriptors(const KeypointSet& a, const KeypointSet& b, double ratio);

}  // namespace blc
