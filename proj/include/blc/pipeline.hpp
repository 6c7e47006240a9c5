#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "blc/dataset.hpp"
#include "blc/evaluation.hpp"
#include "blc/retrieval.hpp"
#include "blc/saliency.hpp"
#include "blc/verification.hpp"

namespace blc {

struct PipelineConfig {
    std::string manifest_path;
    int work_long_side = 128;  ///< frames are downscaled so the longer side matches
    SaliencyParams saliency;
    RetrievalParams retrieval;
    VerifyParams verify;
    double gt_distance = 10.0;      ///< meters between positions to count as a revisit
    std::uint64_t gt_min_gap = 100;  ///< frames between ground-truth pair members
    std::uint64_t eval_frame_tol = 3;
};

struct DetectResult {
    std::vector<LoopDetection> detections;  ///< every verified candidate, accepted or not
    StageTimer timing;
    std::size_t frame_count = 0;
};

/// Online detection over the dataset: for each frame in order, load,
/// resize, binarize, query the database of earlier frames, verify the
/// candidates, then insert. Full-resolution frames are loaded lazily for
/// verification and their keypoints memoized. Progress lines go to
/// `progress` when given.
DetectResult run_detect(const PipelineConfig& config, std::ostream* progress = nullptr);

/// Scores a detections CSV against ground truth derived from the
/// manifest's pose file.
EvalReport run_eval(const PipelineConfig& config, const std::string& detections_csv);

/// Writes the saliency map (min-max scaled) and the binary map (0/255) of
/// one frame as PGM files.
void run_saliency_debug(const PipelineConfig& config, std::uint64_t frame_index,
                        const std::string& saliency_out, const std::string& binary_out);

struct BenchReport {
    std::size_t frame_count = 0;
    std::map<std::string, double> stage_means_ms;
    double xi_comparisons_per_second = 0.0;
};

/// Detection timing on the dataset plus a raw pairwise-similarity
/// microbenchmark on random maps of the working resolution.
BenchReport run_bench(const PipelineConfig& config, std::ostream* progress = nullptr);

/// Similarity comparisons per second on random width x height maps,
/// measured over at least min_seconds of wall time.
double xi_throughput(int width, int height, double min_seconds);

/// Accepted detections only, schema: query_id,match_id,xi,match_count.
void write_detections_csv(const std::string& path,
                          const std::vector<LoopDetection>& detections);
std::vector<LoopDetection> read_detections_csv(const std::string& path);

/// One row, schema: tp,fp,total_truth,recall_pct,precision_pct,mean_time_ms.
/// Undefined values are written as nan.
void write_report_csv(const std::string& path, const EvalReport& report);

/// Human-readable multi-line summary of a report.
std::string format_report(const EvalReport& report);

}  // namespace blc
