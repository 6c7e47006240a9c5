#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace blc {

/// Grayscale image with intensities in [0, 1], row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // width * height values

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int row, int col) {
        assert(row >= 0 && row < height && col >= 0 && col < width);
        return data[static_cast<std::size_t>(row) * width + col];
    }
    double at(int row, int col) const {
        assert(row >= 0 && row < height && col >= 0 && col < width);
        return data[static_cast<std::size_t>(row) * width + col];
    }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
};

/// Unconstrained scalar field with the same layout as GrayImage. Used for
/// log spectra, residuals and saliency maps.
struct RealField {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    RealField() = default;
    RealField(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int row, int col) {
        assert(row >= 0 && row < height && col >= 0 && col < width);
        return values[static_cast<std::size_t>(row) * width + col];
    }
    double at(int row, int col) const {
        assert(row >= 0 && row < height && col >= 0 && col < width);
        return values[static_cast<std::size_t>(row) * width + col];
    }

    std::size_t size() const { return values.size(); }
};

}  // namespace blc
