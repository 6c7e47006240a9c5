#pragma once

#include <string>
#include <utility>

#include "blc/binary_map.hpp"
#include "blc/image.hpp"

namespace blc {

/// Loads an 8-bit PNG, JPEG or PGM frame and maps intensities linearly to
/// [0, 1]. Color inputs are reduced by fixed luminance weights
/// (0.299 R + 0.587 G + 0.114 B) so the result does not depend on the
/// decoder's own grayscale conversion.
/// Throws FileNotFound and DecodeError.
GrayImage load_grayscale(const std::string& path);

/// PGM (P2/P5) reader, 8-bit maxval only.
GrayImage load_pgm(const std::string& path);

/// Writes a binary (P5) PGM with intensities scaled back to [0, 255].
void save_pgm(const GrayImage& img, const std::string& path);

/// Writes the field min-max scaled to [0, 255]; a constant field writes 0.
void save_pgm_minmax(const RealField& field, const std::string& path);

/// Writes set bits as 255 and clear bits as 0.
void save_pgm(const BinaryMap& map, const std::string& path);

/// Bilinear resize with pixel-center alignment and edge clamping. Targets
/// must be at least 2x2 (throws InvalidDimensions). Resizing to the source
/// size returns pixel-identical data.
GrayImage resize_bilinear(const GrayImage& img, int target_w, int target_h);

/// Working resolution for saliency extraction: downscale so the longer
/// side equals long_side, preserving aspect ratio, both sides rounded to
/// even (minimum 2). Images already at or below long_side are unchanged.
std::pair<int, int> working_size(int width, int height, int long_side);

}  // namespace blc
