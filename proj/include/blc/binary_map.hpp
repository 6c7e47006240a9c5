#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "blc/errors.hpp"

namespace blc {

/// Bit-packed binary salient-region map. Rows are padded to 64-bit word
/// boundaries; padding bits past each row's width are kept zero so that
/// word-wise popcount kernels need no masking.
class BinaryMap {
public:
    BinaryMap() = default;
    BinaryMap(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool test(int row, int col) const;
    void set(int row, int col, bool value);

    const std::vector<std::uint64_t>& words() const { return words_; }
    const std::uint64_t* row_words(int row) const {
        return words_.data() + static_cast<std::size_t>(row) * words_per_row_;
    }

    /// Clears any stray padding bits. Construction paths keep padding zero
    /// already; exposed so tests can verify the hygiene invariant.
    void mask_padding();

    bool operator==(const BinaryMap& other) const = default;

    friend BinaryMap deserialize(std::istream& in);

private:
    int width_ = 0;
    int height_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Fractional mean coordinate of the set bits. Undefined for empty maps.
struct Centroid {
    double row = 0.0;
    double col = 0.0;
    bool defined = false;
};

/// Number of set bits.
std::uint64_t popcount(const BinaryMap& map);

/// Number of positions set in both maps, computed word-wise without
/// materializing the intersection. Throws DimensionMismatch.
std::uint64_t and_count(const BinaryMap& a, const BinaryMap& b);

/// Similarity factor: intersection popcount over the larger popcount.
/// Two empty maps (or empty vs nonempty) compare as 0.
double similarity(const BinaryMap& a, const BinaryMap& b);

Centroid centroid(const BinaryMap& map);

/// Euclidean distance between two centroids normalized by the image
/// diagonal. Empty when either centroid is undefined.
std::optional<double> centroid_distance(const Centroid& a, const Centroid& b,
                                        double diagonal);

/// Wire format: width and height as 32-bit little-endian unsigned,
/// followed by the packed rows as little-endian 64-bit words.
void serialize(const BinaryMap& map, std::ostream& out);
BinaryMap deserialize(std::istream& in);

}  // namespace blc
