#include "blc/binary_map.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>

namespace blc {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for_width(int width) {
    return (static_cast<std::size_t>(width) + kWordBits - 1) / kWordBits;
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw DecodeError("truncated binary map header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw DecodeError("truncated binary map payload");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

BinaryMap::BinaryMap(int width, int height)
    : width_(width),
      height_(height),
      words_per_row_(words_for_width(width)),
      words_(words_per_row_ * static_cast<std::size_t>(height), 0) {
    if (width < 1 || height < 1)
        throw InvalidDimensions("binary map must be at least 1x1");
}

bool BinaryMap::test(int row, int col) const {
    assert(row >= 0 && row < height_ && col >= 0 && col < width_);
    const std::size_t idx = static_cast<std::size_t>(row) * words_per_row_ +
                            static_cast<std::size_t>(col) / kWordBits;
    return (words_[idx] >> (static_cast<std::size_t>(col) % kWordBits)) & 1u;
}

void BinaryMap::set(int row, int col, bool value) {
    assert(row >= 0 && row < height_ && col >= 0 && col < width_);
    const std::size_t idx = static_cast<std::size_t>(row) * words_per_row_ +
                            static_cast<std::size_t>(col) / kWordBits;
    const std::uint64_t bit = std::uint64_t{1} << (static_cast<std::size_t>(col) % kWordBits);
    if (value)
        words_[idx] |= bit;
    else
        words_[idx] &= ~bit;
}

void BinaryMap::mask_padding() {
    const std::size_t tail_bits = static_cast<std::size_t>(width_) % kWordBits;
    if (tail_bits == 0) return;
    const std::uint64_t mask = (std::uint64_t{1} << tail_bits) - 1;
    for (int r = 0; r < height_; ++r)
        words_[static_cast<std::size_t>(r) * words_per_row_ + words_per_row_ - 1] &= mask;
}

std::uint64_t popcount(const BinaryMap& map) {
    std::uint64_t count = 0;
    for (std::uint64_t w : map.words()) count += static_cast<std::uint64_t>(std::popcount(w));
    return count;
}

std::uint64_t and_count(const BinaryMap& a, const BinaryMap& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionMismatch("and_count over " + std::to_string(a.width()) + "x" +
                                std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                "x" + std::to_string(b.height()));
    const auto& wa = a.words();
    const auto& wb = b.words();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < wa.size(); ++i)
        count += static_cast<std::uint64_t>(std::popcount(wa[i] & wb[i]));
    return count;
}

double similarity(const BinaryMap& a, const BinaryMap& b) {
    const std::uint64_t inter = and_count(a, b);
    const std::uint64_t larger = std::max(popcount(a), popcount(b));
    if (larger == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(larger);
}

Centroid centroid(const BinaryMap& map) {
    std::uint64_t count = 0;
    std::uint64_t row_sum = 0;
    std::uint64_t col_sum = 0;
    for (int r = 0; r < map.height(); ++r) {
        const std::uint64_t* row = map.row_words(r);
        for (std::size_t w = 0; w < map.words_per_row(); ++w) {
            std::uint64_t word = row[w];
            const std::uint64_t base = w * kWordBits;
            const auto bits = static_cast<std::uint64_t>(std::popcount(word));
            count += bits;
            row_sum += bits * static_cast<std::uint64_t>(r);
            while (word) {
                col_sum += base + static_cast<std::uint64_t>(std::countr_zero(word));
                word &= word - 1;
            }
        }
    }
    if (count == 0) return {};
    Centroid c;
    c.row = static_cast<double>(row_sum) / static_cast<double>(count);
    c.col = static_cast<double>(col_sum) / static_cast<double>(count);
    c.defined = true;
    return c;
}

std::optional<double> centroid_distance(const Centroid& a, const Centroid& b, double diagonal) {
    assert(diagonal > 0.0);
    if (!a.defined || !b.defined) return std::nullopt;
    const double dr = a.row - b.row;
    const double dc = a.col - b.col;
    return std::sqrt(dr * dr + dc * dc) / diagonal;
}

void serialize(const BinaryMap& map, std::ostream& out) {
    write_u32_le(out, static_cast<std::uint32_t>(map.width()));
    write_u32_le(out, static_cast<std::uint32_t>(map.height()));
    for (std::uint64_t w : map.words()) write_u64_le(out, w);
}

BinaryMap deserialize(std::istream& in) {
    const std::uint32_t w = read_u32_le(in);
    const std::uint32_t h = read_u32_le(in);
    if (w == 0 || h == 0) throw DecodeError("binary map with zero dimension");
    BinaryMap map(static_cast<int>(w), static_cast<int>(h));
    for (auto& word : map.words_) word = read_u64_le(in);
    // The stream is untrusted; re-assert padding hygiene.
    map.mask_padding();
    return map;
}

}  // namespace blc
