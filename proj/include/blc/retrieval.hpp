#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blc/binary_map.hpp"

namespace blc {

/// One frame of the growing retrieval database. Popcount and centroid are
/// cached at construction so query-time prefilters never touch the bits.
struct FrameRecord {
    std::uint64_t frame_id = 0;
    BinaryMap map;
    std::uint64_t pop = 0;
    Centroid center;
    std::string image_ref;  ///< source frame handle, used by verification

    static FrameRecord make(std::uint64_t frame_id, BinaryMap map,
                            std::string image_ref = {});
};

struct RetrievalParams {
    double xi_min = 0.4;        ///< similarity acceptance threshold, (0, 1]
    double centroid_max = 0.15; ///< centroid distance bound, fraction of the diagonal
    std::uint64_t temporal_gap = 100;  ///< minimum frame-index separation
    std::size_t max_candidates = 5;
};

/// Scored candidate pair emitted by query(), input to verification.
struct LoopCandidate {
    std::uint64_t query_id = 0;
    std::uint64_t match_id = 0;
    double xi = 0.0;
    double centroid_dist = 0.0;
};

/// Cheap necessary-condition test run before the similarity factor:
/// both centroids defined, centroid distance within bound, and
/// min(pop)/max(pop) >= xi_min (an upper bound on xi).
bool prefilter(const FrameRecord& a, const FrameRecord& b, const RetrievalParams& params);

/// Append-only frame database scanned linearly at query time. Single
/// writer, any number of concurrent readers.
class FrameDatabase {
public:
    /// Throws NonMonotoneId unless rec.frame_id exceeds every stored id.
    void insert(FrameRecord rec);

    /// Candidates among frames with id <= rec.frame_id - temporal_gap,
    /// filtered by prefilter() and xi >= xi_min, sorted by xi descending
    /// (ties: older frame first), truncated to max_candidates. Empty-map
    /// queries return nothing.
    std::vector<LoopCandidate> query(const FrameRecord& rec,
                                     const RetrievalParams& params) const;

    std::size_t size() const { return records_.size(); }
    const std::vector<FrameRecord>& records() const { return records_; }

    /// Persistence: "BLDB1" magic, record count, then serialized records.
    void save(const std::string& path) const;
    static FrameDatabase load(const std::string& path);

private:
    std::vector<FrameRecord> records_;
};

}  // namespace blc
