#include "blc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "blc/errors.hpp"

namespace blc {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

bool skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

std::vector<double> parse_numbers(const std::string& path, std::size_t line_no,
                                  const std::string& line, std::size_t expected) {
    std::istringstream in(line);
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(path, line_no, "non-numeric field '" + token + "'");
        }
    }
    if (values.size() != expected) {
        std::ostringstream msg;
        msg << "expected " << expected << " fields, got " << values.size();
        throw ParseError(path, line_no, msg.str());
    }
    return values;
}

}  // namespace

PoseFormat parse_pose_format(const std::string& name) {
    if (name == "kitti") return PoseFormat::kitti;
    if (name == "tum") return PoseFormat::tum;
    throw ParseError("unknown pose format '" + name + "' (expected kitti or tum)");
}

Trajectory load_poses(const std::string& path, PoseFormat format) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);

    Trajectory traj;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        if (format == PoseFormat::kitti) {
            // Row-major 3x4 pose matrix; translation is the last column.
            const std::vector<double> v = parse_numbers(path, line_no, line, 12);
            traj.push_back({v[3], v[7], v[11]});
        } else {
            const std::vector<double> v = parse_numbers(path, line_no, line, 8);
            traj.push_back({v[1], v[2], v[3]});
        }
    }
    if (traj.empty()) throw EmptyFile(path);
    return traj;
}

std::vector<GroundTruthPair> ground_truth_pairs(const Trajectory& traj,
                                                double max_distance,
                                                std::uint64_t min_gap) {
    if (max_distance <= 0.0) throw std::invalid_argument("max_distance must be positive");
    if (min_gap < 1) throw std::invalid_argument("min_gap must be at least 1");

    std::vector<GroundTruthPair> pairs;
    const double max_sq = max_distance * max_distance;
    for (std::size_t i = min_gap; i < traj.size(); ++i) {
        for (std::size_t j = 0; j + min_gap <= i; ++j) {
            const double dx = traj[i][0] - traj[j][0];
            const double dy = traj[i][1] - traj[j][1];
            const double dz = traj[i][2] - traj[j][2];
            if (dx * dx + dy * dy + dz * dz <= max_sq) {
                pairs.push_back({static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(j)});
            }
        }
    }
    return pairs;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    Manifest manifest;
    std::string format_value;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path, line_no, "expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "image_dir") {
            manifest.image_dir = value;
        } else if (key == "pose_file") {
            manifest.pose_file = value;
        } else if (key == "pose_format") {
            format_value = value;
        } else {
            throw ParseError(path, line_no, "unknown key '" + key + "'");
        }
    }

    if (manifest.image_dir.empty()) {
        throw ParseError(path + ": missing required key image_dir");
    }
    if (manifest.pose_file.empty() != format_value.empty()) {
        throw ParseError(path + ": pose_file and pose_format must be given together");
    }

    auto resolve = [&base](const std::string& p) {
        const std::filesystem::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    manifest.image_dir = resolve(manifest.image_dir);
    if (!manifest.pose_file.empty()) {
        manifest.pose_file = resolve(manifest.pose_file);
        manifest.pose_format = parse_pose_format(format_value);
        manifest.has_poses = true;
    }
    return manifest;
}

std::vector<std::string> list_frames(const std::string& image_dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(image_dir)) throw FileNotFound(image_dir);

    std::vector<std::string> frames;
    for (const fs::directory_entry& entry : fs::directory_iterator(image_dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".pgm") {
            frames.push_back(entry.path().string());
        }
    }
    std::sort(frames.begin(), frames.end(),
              [](const std::string& a, const std::string& b) {
                  return fs::path(a).filename().string() < fs::path(b).filename().string();
              });
    return frames;
}

}  // namespace blc
