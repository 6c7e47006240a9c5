#include "blc/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <utility>

#include "blc/binary_map.hpp"
#include "blc/errors.hpp"
#include "blc/features.hpp"
#include "blc/image_io.hpp"

namespace blc {

namespace {

BinaryMap frame_binary_map(const GrayImage& img, const PipelineConfig& config) {
    const auto [w, h] = working_size(img.width, img.height, config.work_long_side);
    const GrayImage small = resize_bilinear(img, w, h);
    return compute_binary_content(small, config.saliency);
}

std::vector<std::string> dataset_frames(const PipelineConfig& config, Manifest* out = nullptr) {
    const Manifest manifest = load_manifest(config.manifest_path);
    std::vector<std::string> frames = list_frames(manifest.image_dir);
    if (frames.empty()) throw EmptyFile(manifest.image_dir + " (no image files)");
    if (out) *out = manifest;
    return frames;
}

}  // namespace

DetectResult run_detect(const PipelineConfig& config, std::ostream* progress) {
    const std::vector<std::string> frames = dataset_frames(config);

    DetectResult result;
    result.frame_count = frames.size();

    FrameDatabase db;
    const HessianBlobExtractor extractor;
    std::map<std::uint64_t, KeypointSet> kp_cache;

    // Keypoints come from the full-resolution frame; `hint` avoids a second
    // load for the frame that is already in memory.
    auto keypoints_for = [&](std::uint64_t id, const GrayImage* hint) -> const KeypointSet& {
        auto it = kp_cache.find(id);
        if (it != kp_cache.end()) return it->second;
        KeypointSet kps;
        if (hint) {
            kps = extractor.detect_and_describe(*hint, config.verify.max_features);
        } else {
            const GrayImage img = load_grayscale(frames[id]);
            kps = extractor.detect_and_describe(img, config.verify.max_features);
        }
        return kp_cache.emplace(id, std::move(kps)).first->second;
    };

    std::size_t accepted_total = 0;
    for (std::uint64_t t = 0; t < frames.size(); ++t) {
        const auto frame_start = std::chrono::steady_clock::now();

        const GrayImage img = time_stage(result.timing, "load",
                                         [&] { return load_grayscale(frames[t]); });
        BinaryMap map = time_stage(result.timing, "saliency",
                                   [&] { return frame_binary_map(img, config); });
        FrameRecord rec = FrameRecord::make(t, std::move(map), frames[t]);

        const std::vector<LoopCandidate> candidates = time_stage(
            result.timing, "retrieval", [&] { return db.query(rec, config.retrieval); });

        time_stage(result.timing, "verification", [&] {
            for (const LoopCandidate& cand : candidates) {
                const KeypointSet& kq = keypoints_for(t, &img);
                const KeypointSet& km = keypoints_for(cand.match_id, nullptr);
                const LoopDetection det = verify_matches(cand, kq, km, config.verify);
                if (det.accepted) {
                    ++accepted_total;
                    if (progress) {
                        *progress << "loop " << det.query_id << " -> " << det.match_id
                                  << "  xi=" << std::fixed << std::setprecision(3)
                                  << det.xi << "  matches=" << det.match_count << "\n"
                                  << std::defaultfloat;
                    }
                }
                result.detections.push_back(det);
            }
        });

        db.insert(std::move(rec));

        const std::chrono::duration<double, std::milli> frame_ms =
            std::chrono::steady_clock::now() - frame_start;
        result.timing.add("total", frame_ms.count());

        if (progress && ((t + 1) % 50 == 0 || t + 1 == frames.size())) {
            *progress << "frames " << (t + 1) << "/" << frames.size() << ", accepted "
                      << accepted_total << "\n";
        }
    }
    return result;
}

EvalReport run_eval(const PipelineConfig& config, const std::string& detections_csv) {
    Manifest manifest;
    dataset_frames(config, &manifest);
    if (!manifest.has_poses) {
        throw ParseError(config.manifest_path + ": pose_file required for evaluation");
    }
    const Trajectory traj = load_poses(manifest.pose_file, manifest.pose_format);
    const std::vector<GroundTruthPair> truth =
        ground_truth_pairs(traj, config.gt_distance, config.gt_min_gap);
    const std::vector<LoopDetection> detections = read_detections_csv(detections_csv);
    return score(detections, truth, config.eval_frame_tol);
}

void run_saliency_debug(const PipelineConfig& config, std::uint64_t frame_index,
                        const std::string& saliency_out, const std::string& binary_out) {
    const std::vector<std::string> frames = dataset_frames(config);
    if (frame_index >= frames.size()) {
        std::ostringstream msg;
        msg << "frame index " << frame_index << " out of range (dataset has "
            << frames.size() << " frames)";
        throw Error(msg.str());
    }
    const GrayImage img = load_grayscale(frames[frame_index]);
    const auto [w, h] = working_size(img.width, img.height, config.work_long_side);
    const GrayImage small = resize_bilinear(img, w, h);
    const RealField saliency = compute_saliency_map(small, config.saliency);
    save_pgm_minmax(saliency, saliency_out);
    save_pgm(binarize(saliency, config.saliency.gamma), binary_out);
}

double xi_throughput(int width, int height, double min_seconds) {
    std::mt19937_64 rng(0x5eed);
    std::bernoulli_distribution bit(0.3);

    constexpr std::size_t kMaps = 32;
    std::vector<BinaryMap> maps;
    maps.reserve(kMaps);
    for (std::size_t i = 0; i < kMaps; ++i) {
        BinaryMap m(width, height);
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                if (bit(rng)) m.set(r, c, true);
            }
        }
        maps.push_back(std::move(m));
    }

    double sink = 0.0;  // keeps the comparisons observable
    std::size_t comparisons = 0;
    const auto start = std::chrono::steady_clock::now();
    double elapsed = 0.0;
    while (elapsed < min_seconds) {
        for (std::size_t i = 0; i < kMaps; ++i) {
            for (std::size_t j = 0; j < kMaps; ++j) {
                sink += similarity(maps[i], maps[j]);
            }
        }
        comparisons += kMaps * kMaps;
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();
    }
    volatile double keep = sink;
    (void)keep;
    return static_cast<double>(comparisons) / elapsed;
}

BenchReport run_bench(const PipelineConfig& config, std::ostream* progress) {
    const std::vector<std::string> frames = dataset_frames(config);
    const GrayImage first = load_grayscale(frames[0]);
    const auto [w, h] = working_size(first.width, first.height, config.work_long_side);

    const DetectResult detect = run_detect(config, progress);

    BenchReport report;
    report.frame_count = detect.frame_count;
    report.stage_means_ms = detect.timing.means();
    report.xi_comparisons_per_second = xi_throughput(w, h, 0.5);
    return report;
}

void write_detections_csv(const std::string& path,
                          const std::vector<LoopDetection>& detections) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "query_id,match_id,xi,match_count\n";
    out << std::setprecision(10);
    for (const LoopDetection& det : detections) {
        if (!det.accepted) continue;
        out << det.query_id << ',' << det.match_id << ',' << det.xi << ','
            << det.match_count << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::vector<LoopDetection> read_detections_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(path);
    if (strip_cr(line) != "query_id,match_id,xi,match_count") {
        throw ParseError(path, 1, "unexpected header '" + line + "'");
    }

    std::vector<LoopDetection> detections;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 4) {
            throw ParseError(path, line_no, "expected 4 fields");
        }
        LoopDetection det;
        try {
            det.query_id = std::stoull(fields[0]);
            det.match_id = std::stoull(fields[1]);
            det.xi = std::stod(fields[2]);
            det.match_count = std::stoi(fields[3]);
        } catch (const std::exception&) {
            throw ParseError(path, line_no, "malformed field in '" + line + "'");
        }
        det.accepted = true;
        detections.push_back(det);
    }
    return detections;
}

void write_report_csv(const std::string& path, const EvalReport& report) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "tp,fp,total_truth,recall_pct,precision_pct,mean_time_ms\n";
    out << std::setprecision(10);
    out << report.true_positives << ',' << report.false_positives << ','
        << report.total_truth << ',' << report.recall_rate << ',';
    if (report.precision) {
        out << *report.precision;
    } else {
        out << "nan";
    }
    out << ',';
    if (report.mean_time_ms) {
        out << *report.mean_time_ms;
    } else {
        out << "nan";
    }
    out << '\n';
    if (!out) throw Error("write failed: " + path);
}

std::string format_report(const EvalReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    out << "true positives:  " << report.true_positives << "\n";
    out << "false positives: " << report.false_positives << "\n";
    out << "total truth:     " << report.total_truth << "\n";
    out << "recall:          " << report.recall_rate << " %\n";
    out << "precision:       ";
    if (report.precision) {
        out << *report.precision << " %\n";
    } else {
        out << "undefined (no detections)\n";
    }
    if (report.mean_time_ms) {
        out << "mean time:       " << *report.mean_time_ms << " ms/frame\n";
    }
    if (!report.per_stage_ms.empty()) {
        out << std::setprecision(2);
        for (const auto& [stage, ms] : report.per_stage_ms) {
            out << "  stage " << stage << ": " << ms << " ms\n";
        }
    }
    return out.str();
}

}  // namespace blc
