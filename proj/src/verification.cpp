#include "blc/verification.hpp"

namespace blc {

LoopDetection verify_matches(const LoopCandidate& candidate, const KeypointSet& query_kp,
                             const KeypointSet& match_kp, const VerifyParams& params) {
    LoopDetection det;
    det.query_id = candidate.query_id;
    det.match_id = candidate.match_id;
    det.xi = candidate.xi;
    const MatchResult matches = match_descriptors(query_kp, match_kp, params.ratio);
    det.match_count = static_cast<int>(matches.count());
    det.accepted = det.match_count >= params.min_matches;
    return det;
}

LoopDetection verify(const LoopCandidate& candidate, const GrayImage& query_img,
                     const GrayImage& match_img, const VerifyParams& params,
                     const FeatureExtractor& extractor) {
    const KeypointSet query_kp =
        extractor.detect_and_describe(query_img, params.max_features);
    const KeypointSet match_kp =
        extractor.detect_and_describe(match_img, params.max_features);
    return verify_matches(candidate, query_kp, match_kp, params);
}

}  // namespace blc
