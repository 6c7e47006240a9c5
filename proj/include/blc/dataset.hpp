#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace blc {

/// Camera positions in dataset order, meters.
using Trajectory = std::vector<std::array<double, 3>>;

enum class PoseFormat {
    kitti,  ///< 12 numbers per line, row-major 3x4 pose matrix
    tum,    ///< timestamp tx ty tz qx qy qz qw
};

PoseFormat parse_pose_format(const std::string& name);

/// Reads one position per non-comment line. Lines starting with '#' and
/// blank lines are skipped; anything else malformed raises ParseError with
/// the 1-based line number. An empty result raises EmptyFile.
Trajectory load_poses(const std::string& path, PoseFormat format);

struct GroundTruthPair {
    std::uint64_t query_id = 0;  ///< later frame
    std::uint64_t match_id = 0;  ///< earlier frame
};

/// All frame pairs (i, j) with i - j >= min_gap whose positions lie within
/// max_distance meters of each other. i is the later frame.
std::vector<GroundTruthPair> ground_truth_pairs(const Trajectory& traj,
                                                double max_distance,
                                                std::uint64_t min_gap);

/// Dataset description, key = value per line. image_dir is required;
/// pose_file and pose_format come together or not at all. Relative paths
/// resolve against the manifest's directory.
struct Manifest {
    std::string image_dir;
    std::string pose_file;  ///< empty when absent
    PoseFormat pose_format = PoseFormat::kitti;
    bool has_poses = false;
};

Manifest load_manifest(const std::string& path);

/// Image files (.png .jpg .jpeg .pgm, case-insensitive) in the directory,
/// sorted by filename so frame ids match dataset order.
std::vector<std::string> list_frames(const std::string& image_dir);

}  // namespace blc
