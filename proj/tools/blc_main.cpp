#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "blc/errors.hpp"
#include "blc/pipeline.hpp"

namespace {

/// Tuning flags live on the root app so one --config file (plain
/// name=value lines) serves every subcommand; subcommands fall through
/// unmatched flags to the root, and explicit flags beat config values.
void add_tuning_options(CLI::App& app, blc::PipelineConfig& cfg) {
    app.add_option("--long-side", cfg.work_long_side,
                   "working resolution: frames are downscaled so the longer side "
                   "matches this")
        ->check(CLI::PositiveNumber);

    app.add_option("--avg-filter-n", cfg.saliency.avg_filter_n,
                   "spectral residual averaging window (odd)");
    app.add_option("--gaussian-sigma", cfg.saliency.gaussian_sigma,
                   "saliency smoothing sigma")
        ->check(CLI::PositiveNumber);
    app.add_option("--gamma", cfg.saliency.gamma,
                   "binarization threshold as a multiple of mean saliency")
        ->check(CLI::PositiveNumber);
    app.add_option("--log-epsilon", cfg.saliency.log_epsilon,
                   "offset inside the amplitude logarithm")
        ->check(CLI::PositiveNumber);

    app.add_option("--xi-min", cfg.retrieval.xi_min, "minimum similarity factor")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--centroid-max", cfg.retrieval.centroid_max,
                   "maximum centroid distance, fraction of the map diagonal")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--temporal-gap", cfg.retrieval.temporal_gap,
                   "minimum frame separation for loop candidates");
    app.add_option("--max-candidates", cfg.retrieval.max_candidates,
                   "candidates forwarded to verification per frame");

    app.add_option("--ratio", cfg.verify.ratio, "descriptor ratio test threshold")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--min-matches", cfg.verify.min_matches,
                   "matches required to accept a loop")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-features", cfg.verify.max_features,
                   "keypoints per frame for verification")
        ->check(CLI::PositiveNumber);

    app.add_option("--gt-distance", cfg.gt_distance,
                   "ground truth: meters between revisited positions")
        ->check(CLI::PositiveNumber);
    app.add_option("--gt-min-gap", cfg.gt_min_gap,
                   "ground truth: minimum frame separation");
    app.add_option("--frame-tol", cfg.eval_frame_tol,
                   "frame index tolerance when matching detections to truth");

    app.set_config("--config", "", "read tuning options from a name=value file");
}

CLI::App* add_subcommand(CLI::App& app, blc::PipelineConfig& cfg, const std::string& name,
                         const std::string& what) {
    CLI::App* sub = app.add_subcommand(name, what);
    sub->fallthrough();
    sub->add_option("manifest", cfg.manifest_path,
                    "dataset manifest (key=value: image_dir, pose_file, pose_format)")
        ->required();
    return sub;
}

int run(int argc, char** argv) {
    CLI::App app{"binary-content loop closure detection"};
    app.require_subcommand(1);

    blc::PipelineConfig cfg;
    add_tuning_options(app, cfg);

    std::string detect_out = "detections.csv";
    CLI::App* detect = add_subcommand(app, cfg, "detect", "detect loops over a sequence");
    detect->add_option("--out", detect_out, "detections CSV path");

    std::string eval_detections;
    std::string eval_out = "report.csv";
    CLI::App* eval =
        add_subcommand(app, cfg, "eval", "score detections against ground truth");
    eval->add_option("detections", eval_detections, "detections CSV to score")->required();
    eval->add_option("--report-out", eval_out, "report CSV path");

    std::uint64_t dbg_frame = 0;
    std::string dbg_saliency = "saliency.pgm";
    std::string dbg_binary = "binary.pgm";
    CLI::App* dbg = add_subcommand(app, cfg, "saliency-debug",
                                   "dump saliency and binary maps for one frame");
    dbg->add_option("frame", dbg_frame, "frame index")->required();
    dbg->add_option("--saliency-out", dbg_saliency, "saliency PGM path");
    dbg->add_option("--binary-out", dbg_binary, "binary map PGM path");

    CLI::App* bench =
        add_subcommand(app, cfg, "bench", "per-stage timing and similarity throughput");
    (void)bench;

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (detect->parsed()) {
        cfg.saliency.validate();
        const blc::DetectResult result = blc::run_detect(cfg, &std::cout);
        blc::write_detections_csv(detect_out, result.detections);

        std::size_t accepted = 0;
        for (const blc::LoopDetection& det : result.detections) {
            if (det.accepted) ++accepted;
        }
        std::cout << "wrote " << accepted << " detections to " << detect_out << "\n";
        for (const auto& [stage, ms] : result.timing.means()) {
            std::cout << "  stage " << stage << ": " << ms << " ms/frame\n";
        }
        return 0;
    }

    if (eval->parsed()) {
        const blc::EvalReport report = blc::run_eval(cfg, eval_detections);
        std::cout << blc::format_report(report);
        blc::write_report_csv(eval_out, report);
        std::cout << "wrote " << eval_out << "\n";
        return 0;
    }

    if (dbg->parsed()) {
        cfg.saliency.validate();
        blc::run_saliency_debug(cfg, dbg_frame, dbg_saliency, dbg_binary);
        std::cout << "wrote " << dbg_saliency << " and " << dbg_binary << "\n";
        return 0;
    }

    cfg.saliency.validate();
    const blc::BenchReport report = blc::run_bench(cfg, &std::cout);
    std::cout << "frames: " << report.frame_count << "\n";
    for (const auto& [stage, ms] : report.stage_means_ms) {
        std::cout << "  stage " << stage << ": " << ms << " ms/frame\n";
    }
    std::cout << "similarity throughput: "
              << static_cast<std::uint64_t>(report.xi_comparisons_per_second)
              << " comparisons/s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const blc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
