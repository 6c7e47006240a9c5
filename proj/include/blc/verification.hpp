#pragma once

#include <cstdint>

#include "blc/features.hpp"
#include "blc/image.hpp"
#include "blc/retrieval.hpp"

namespace blc {

struct VerifyParams {
    double ratio = 0.7;     ///< ratio test threshold for descriptor matching
    int min_matches = 20;   ///< accept when at least this many matches survive
    int max_features = 500;
};

struct LoopDetection {
    std::uint64_t query_id = 0;
    std::uint64_t match_id = 0;
    double xi = 0.0;
    int match_count = 0;
    bool accepted = false;
};

/// Geometric-free verification: the candidate stands when enough descriptor
/// matches survive the mutual ratio test between the two images.
LoopDetection verify(const LoopCandidate& candidate, const GrayImage& query_img,
                     const GrayImage& match_img, const VerifyParams& params,
                     const FeatureExtractor& extractor);

/// Same decision from precomputed keypoints, for callers that cache features.
LoopDetection verify_matches(const LoopCandidate& candidate, const KeypointSet& query_kp,
                             const KeypointSet& match_kp, const VerifyParams& params);

}  // namespace blc
