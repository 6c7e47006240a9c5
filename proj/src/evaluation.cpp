#include "blc/evaluation.hpp"

#include <algorithm>
#include <cstdlib>

namespace blc {

EvalReport score(const std::vector<LoopDetection>& detections,
                 const std::vector<GroundTruthPair>& truth, std::uint64_t frame_tol) {
    std::vector<LoopDetection> accepted;
    accepted.reserve(detections.size());
    for (const LoopDetection& det : detections) {
        if (det.accepted) accepted.push_back(det);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const LoopDetection& a, const LoopDetection& b) {
                  if (a.query_id != b.query_id) return a.query_id < b.query_id;
                  return a.match_id < b.match_id;
              });

    std::vector<GroundTruthPair> sorted_truth = truth;
    std::sort(sorted_truth.begin(), sorted_truth.end(),
              [](const GroundTruthPair& a, const GroundTruthPair& b) {
                  if (a.query_id != b.query_id) return a.query_id < b.query_id;
                  return a.match_id < b.match_id;
              });
    std::vector<bool> used(sorted_truth.size(), false);

    auto within = [frame_tol](std::uint64_t a, std::uint64_t b) {
        return (a > b ? a - b : b - a) <= frame_tol;
    };

    EvalReport report;
    report.total_truth = sorted_truth.size();
    for (const LoopDetection& det : accepted) {
        bool hit = false;
        for (std::size_t t = 0; t < sorted_truth.size(); ++t) {
            if (used[t]) continue;
            if (within(det.query_id, sorted_truth[t].query_id) &&
                within(det.match_id, sorted_truth[t].match_id)) {
                used[t] = true;
                hit = true;
                break;
            }
        }
        if (hit) {
            ++report.true_positives;
        } else {
            ++report.false_positives;
        }
    }

    if (report.total_truth > 0) {
        report.recall_rate =
            100.0 * static_cast<double>(report.true_positives) / report.total_truth;
    }
    const std::uint64_t detected = report.true_positives + report.false_positives;
    if (detected > 0) {
        report.precision =
            100.0 * static_cast<double>(report.true_positives) / detected;
    }
    return report;
}

const std::vector<double> StageTimer::kEmpty;

void StageTimer::add(const std::string& stage, double ms) {
    samples_[stage].push_back(ms);
}

std::optional<double> StageTimer::mean(const std::string& stage) const {
    const auto it = samples_.find(stage);
    if (it == samples_.end() || it->second.empty()) return std::nullopt;
    double sum = 0.0;
    for (double v : it->second) sum += v;
    return sum / it->second.size();
}

std::map<std::string, double> StageTimer::means() const {
    std::map<std::string, double> out;
    for (const auto& [stage, values] : samples_) {
        if (values.empty()) continue;
        double sum = 0.0;
        for (double v : values) sum += v;
        out[stage] = sum / values.size();
    }
    return out;
}

const std::vector<double>& StageTimer::samples(const std::string& stage) const {
    const auto it = samples_.find(stage);
    return it == samples_.end() ? kEmpty : it->second;
}

std::size_t StageTimer::sample_count(const std::string& stage) const {
    const auto it = samples_.find(stage);
    return it == samples_.end() ? 0 : it->second.size();
}

}  // namespace blc
