#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cflab/grid.hpp"

namespace cflab {

/// 8-bit grayscale raster.
struct GrayImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

/// Decodes PGM (P2/P5), PPM (P3/P6) or PNG into intensities in [0, 255].
/// Color is reduced with luma = 0.299 R + 0.587 G + 0.114 B.
RealGrid read_image(const std::filesystem::path& path);

/// Min-max normalization to [0, 255]; a constant grid maps to mid-gray 128.
GrayImage to_display_image(const RealGrid& g);

/// Intensities rounded and clamped to [0, 255].
GrayImage quantize(const RealGrid& g);

/// Binary PGM (P5), written atomically.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// 8-bit grayscale PNG, written atomically.
void write_png(const std::filesystem::path& path, const GrayImage& image);

}  // namespace cflab
