#include <cmath>
#include <fstream>
#include <random>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "blc/errors.hpp"
#include "blc/image_io.hpp"
#include "doctest.h"
#include "support/synthetic.hpp"

using namespace blc;
namespace ts = blc::testsupport;

namespace {

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("binary PGM maps 8-bit values onto [0, 1]") {
    ts::TempDir dir("pgm");
    const std::string path = dir.file("tiny.pgm");
    write_bytes(path, std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\xff' + '\x00');

    const GrayImage img = load_grayscale(path);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.data[0] == 0.0);
    CHECK(img.data[1] == 1.0);
    CHECK(img.data[2] == 1.0);
    CHECK(img.data[3] == 0.0);
}

TEST_CASE("ASCII PGM with comments parses") {
    ts::TempDir dir("pgm_ascii");
    const std::string path = dir.file("ascii.pgm");
    write_bytes(path, "P2\n# a comment\n3 1\n# another\n100\n0 50 100\n");

    const GrayImage img = load_grayscale(path);
    REQUIRE(img.width == 3);
    CHECK(img.data[0] == 0.0);
    CHECK(img.data[1] == 0.5);
    CHECK(img.data[2] == 1.0);
}

TEST_CASE("color images convert by fixed luminance weights") {
    ts::TempDir dir("png");
    const std::string path = dir.file("red.png");
    cv::Mat red(2, 2, CV_8UC3, cv::Scalar(0, 0, 255));  // BGR
    REQUIRE(cv::imwrite(path, red));

    const GrayImage img = load_grayscale(path);
    REQUIRE(img.size() == 4);
    for (double v : img.data) CHECK(v == doctest::Approx(0.299).epsilon(1e-9));
}

TEST_CASE("load errors") {
    ts::TempDir dir("bad");
    CHECK_THROWS_AS(load_grayscale(dir.file("missing.png")), FileNotFound);

    const std::string garbage = dir.file("garbage.png");
    write_bytes(garbage, "this is not an image");
    CHECK_THROWS_AS(load_grayscale(garbage), DecodeError);

    const std::string deep = dir.file("deep.pgm");
    write_bytes(deep, "P2\n2 2\n65535\n0 1 2 3\n");
    CHECK_THROWS_AS(load_grayscale(deep), DecodeError);

    const std::string cut = dir.file("cut.pgm");
    write_bytes(cut, std::string("P5\n4 4\n255\n") + "only5");
    CHECK_THROWS_AS(load_grayscale(cut), DecodeError);
}

TEST_CASE("resize of a constant image stays constant") {
    GrayImage img(100, 100, 0.5);
    const GrayImage out = resize_bilinear(img, 64, 48);
    REQUIRE(out.width == 64);
    REQUIRE(out.height == 48);
    for (double v : out.data) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("resize to the same size is the identity") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    GrayImage img(64, 48);
    for (double& v : img.data) v = dist(rng);
    const GrayImage out = resize_bilinear(img, 64, 48);
    CHECK(out.data == img.data);
}

TEST_CASE("upscaling a ramp is monotone") {
    // the 2x1 ramp {0, 1}, duplicated to two rows to meet the minimum size
    GrayImage tall(2, 2);
    tall.data = {0.0, 1.0, 0.0, 1.0};
    const GrayImage out = resize_bilinear(tall, 4, 2);
    REQUIRE(out.width == 4);
    for (int c = 1; c < 4; ++c) CHECK(out.at(0, c) >= out.at(0, c - 1));
    CHECK(out.at(0, 0) == 0.0);
    CHECK(out.at(0, 3) == 1.0);
}

TEST_CASE("resize keeps values inside [0, 1]") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    GrayImage img(31, 17);
    for (double& v : img.data) v = dist(rng);
    const GrayImage out = resize_bilinear(img, 13, 7);
    for (double v : out.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("degenerate resize targets are rejected") {
    GrayImage img(8, 8, 0.2);
    CHECK_THROWS_AS(resize_bilinear(img, 1, 8), InvalidDimensions);
    CHECK_THROWS_AS(resize_bilinear(img, 8, 0), InvalidDimensions);
}

TEST_CASE("working size downscales the longer side and rounds even") {
    CHECK(working_size(1226, 370, 128) == std::pair{128, 38});
    CHECK(working_size(640, 480, 128) == std::pair{128, 96});
    CHECK(working_size(370, 1226, 128) == std::pair{38, 128});
    CHECK(working_size(500, 500, 128) == std::pair{128, 128});
    // never upscales
    CHECK(working_size(100, 80, 128) == std::pair{100, 80});
    CHECK(working_size(128, 96, 128) == std::pair{128, 96});
}

TEST_CASE("PGM save round-trips quantized intensities") {
    ts::TempDir dir("save");
    GrayImage img(5, 3);
    for (std::size_t i = 0; i < img.size(); ++i) img.data[i] = (i * 17 % 256) / 255.0;
    const std::string path = dir.file("round.pgm");
    save_pgm(img, path);
    const GrayImage back = load_grayscale(path);
    REQUIRE(back.size() == img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(1e-12));
}

TEST_CASE("binary map PGM contains only 0 and 255") {
    ts::TempDir dir("bin");
    std::mt19937 rng(21);
    const BinaryMap m = ts::random_map(19, 11, rng);
    const std::string path = dir.file("map.pgm");
    save_pgm(m, path);

    std::ifstream in(path, std::ios::binary);
    std::string header;
    int w = 0, h = 0, maxv = 0;
    in >> header >> w >> h >> maxv;
    in.get();
    REQUIRE(header == "P5");
    REQUIRE(w == 19);
    REQUIRE(h == 11);
    char byte = 0;
    std::size_t set = 0;
    while (in.get(byte)) {
        const unsigned char v = static_cast<unsigned char>(byte);
        CHECK((v == 0 || v == 255));
        if (v == 255) ++set;
    }
    CHECK(set == popcount(m));
}

TEST_CASE("min-max scaled saliency export") {
    ts::TempDir dir("minmax");

    SUBCASE("constant field maps to black") {
        RealField field(4, 4, 3.25);
        const std::string path = dir.file("flat.pgm");
        save_pgm_minmax(field, path);
        const GrayImage back = load_grayscale(path);
        for (double v : back.data) CHECK(v == 0.0);
    }

    SUBCASE("extremes map to 0 and 255") {
        RealField field(3, 1);
        field.values = {2.0, 4.0, 6.0};
        const std::string path = dir.file("ramp.pgm");
        save_pgm_minmax(field, path);
        const GrayImage back = load_grayscale(path);
        CHECK(back.data[0] == 0.0);
        // midpoint is quantized to the 8-bit grid, off by at most one level
        CHECK(std::abs(back.data[1] - 0.5) <= 1.0 / 255.0);
        CHECK(back.data[2] == 1.0);
    }
}
