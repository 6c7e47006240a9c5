#include "blc/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <opencv2/imgcodecs.hpp>

#include "blc/errors.hpp"

namespace blc {

namespace {

constexpr double kLumR = 0.299;
constexpr double kLumG = 0.587;
constexpr double kLumB = 0.114;

// Reads the next PGM header token, skipping whitespace and '#' comments.
std::string next_pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int parse_pgm_int(std::istream& in, const std::string& path, const char* what) {
    const std::string tok = next_pgm_token(in);
    if (tok.empty()) throw DecodeError(path + ": truncated PGM header (" + what + ")");
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw DecodeError(path + ": bad PGM " + what + " '" + tok + "'");
    }
}

bool looks_like_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    return in && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5');
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);

    const std::string magic = next_pgm_token(in);
    if (magic != "P2" && magic != "P5") throw DecodeError(path + ": not a PGM file");
    const int width = parse_pgm_int(in, path, "width");
    const int height = parse_pgm_int(in, path, "height");
    const int maxval = parse_pgm_int(in, path, "maxval");
    if (width < 1 || height < 1) throw DecodeError(path + ": degenerate PGM dimensions");
    if (maxval < 1 || maxval > 255) throw DecodeError(path + ": only 8-bit PGM supported");

    GrayImage img(width, height);
    const std::size_t n = img.size();
    if (magic == "P5") {
        // Exactly one whitespace byte separates maxval from the raster.
        std::vector<unsigned char> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (!in) throw DecodeError(path + ": truncated PGM raster");
        for (std::size_t i = 0; i < n; ++i)
            img.data[i] = static_cast<double>(raw[i]) / maxval;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = parse_pgm_int(in, path, "sample");
            if (v > maxval) throw DecodeError(path + ": sample exceeds maxval");
            img.data[i] = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

GrayImage load_grayscale(const std::string& path) {
    if (!std::filesystem::exists(path)) throw FileNotFound(path);
    if (looks_like_pgm(path)) return load_pgm(path);

    const cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
    if (bgr.empty()) throw DecodeError(path + ": unsupported or corrupt image");

    GrayImage img(bgr.cols, bgr.rows);
    for (int r = 0; r < bgr.rows; ++r) {
        const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(r);
        for (int c = 0; c < bgr.cols; ++c) {
            const double b = row[c][0] / 255.0;
            const double g = row[c][1] / 255.0;
            const double rr = row[c][2] / 255.0;
            img.at(r, c) = kLumR * rr + kLumG * g + kLumB * b;
        }
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    for (double v : img.data) {
        const int byte = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
        out.put(static_cast<char>(byte));
    }
}

void save_pgm_minmax(const RealField& field, const std::string& path) {
    double lo = 0.0, hi = 0.0;
    if (!field.values.empty()) {
        auto [mn, mx] = std::minmax_element(field.values.begin(), field.values.end());
        lo = *mn;
        hi = *mx;
    }
    GrayImage img(field.width, field.height);
    if (hi > lo) {
        for (std::size_t i = 0; i < field.values.size(); ++i)
            img.data[i] = (field.values[i] - lo) / (hi - lo);
    }
    save_pgm(img, path);
}

void save_pgm(const BinaryMap& map, const std::string& path) {
    GrayImage img(map.width(), map.height());
    for (int r = 0; r < map.height(); ++r)
        for (int c = 0; c < map.width(); ++c)
            img.at(r, c) = map.test(r, c) ? 1.0 : 0.0;
    save_pgm(img, path);
}

GrayImage resize_bilinear(const GrayImage& img, int target_w, int target_h) {
    if (target_w < 2 || target_h < 2)
        throw InvalidDimensions("resize target " + std::to_string(target_w) + "x" +
                                std::to_string(target_h) + " (minimum 2x2)");
    if (target_w == img.width && target_h == img.height) return img;

    GrayImage out(target_w, target_h);
    const double sx = static_cast<double>(img.width) / target_w;
    const double sy = static_cast<double>(img.height) / target_h;
    for (int r = 0; r < target_h; ++r) {
        const double fy = (r + 0.5) * sy - 0.5;
        const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, img.height - 1);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = std::clamp(fy - y0, 0.0, 1.0);
        for (int c = 0; c < target_w; ++c) {
            const double fx = (c + 0.5) * sx - 0.5;
            const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, img.width - 1);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = std::clamp(fx - x0, 0.0, 1.0);
            const double top = img.at(y0, x0) * (1.0 - wx) + img.at(y0, x1) * wx;
            const double bot = img.at(y1, x0) * (1.0 - wx) + img.at(y1, x1) * wx;
            out.at(r, c) = top * (1.0 - wy) + bot * wy;
        }
    }
    return out;
}

std::pair<int, int> working_size(int width, int height, int long_side) {
    const int longer = std::max(width, height);
    if (longer <= long_side) return {width, height};
    const double scale = static_cast<double>(long_side) / longer;
    const auto round_even = [](double v) {
        const int e = 2 * static_cast<int>(std::lround(v / 2.0));
        return std::max(e, 2);
    };
    int w = round_even(width * scale);
    int h = round_even(height * scale);
    if (width >= height)
        w = round_even(static_cast<double>(long_side));
    else
        h = round_even(static_cast<double>(long_side));
    return {w, h};
}

}  // namespace blc
