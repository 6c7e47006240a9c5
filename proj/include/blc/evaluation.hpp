#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "blc/dataset.hpp"
#include "blc/verification.hpp"

namespace blc {

struct EvalReport {
    std::uint64_t true_positives = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t total_truth = 0;
    double recall_rate = 0.0;                 ///< percent; 0 when total_truth is 0
    std::optional<double> precision;          ///< percent; empty when nothing was detected
    std::optional<double> mean_time_ms;       ///< per frame; empty when timing was not collected
    std::map<std::string, double> per_stage_ms;
};

/// Scores accepted detections against ground truth. A detection (i, j) hits
/// a truth pair (i', j') when both indices agree within frame_tol; each
/// truth pair is consumed by at most one detection (greedy, detections and
/// truth both visited in ascending (query, match) order). Detections not
/// flagged accepted are ignored.
EvalReport score(const std::vector<LoopDetection>& detections,
                 const std::vector<GroundTruthPair>& truth, std::uint64_t frame_tol);

/// Wall-clock sample collector keyed by stage name.
class StageTimer {
public:
    void add(const std::string& stage, double ms);

    /// Mean over recorded samples; empty when the stage never ran.
    std::optional<double> mean(const std::string& stage) const;

    /// Means for every stage with at least one sample.
    std::map<std::string, double> means() const;

    const std::vector<double>& samples(const std::string& stage) const;
    std::size_t sample_count(const std::string& stage) const;

private:
    std::map<std::string, std::vector<double>> samples_;
    static const std::vector<double> kEmpty;
};

/// Runs f, records its wall-clock duration under the stage name, and passes
/// the result through.
template <typename F>
auto time_stage(StageTimer& timer, const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<std::invoke_result_t<F&&>>) {
        std::forward<F>(f)();
        const std::chrono::duration<double, std::milli> elapsed =
            std::chrono::steady_clock::now() - start;
        timer.add(stage, elapsed.count());
    } else {
        auto result = std::forward<F>(f)();
        const std::chrono::duration<double, std::milli> elapsed =
            std::chrono::steady_clock::now() - start;
        timer.add(stage, elapsed.count());
        return result;
    }
}

}  // namespace blc
