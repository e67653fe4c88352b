// 8-bit grayscale rasters, PGM (P2/P5) I/O and Sobel gradient-norm maps.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stereogen/errors.hpp"

namespace stereogen {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // row-major

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    std::uint8_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * width + c]; }
    std::uint8_t& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * width + c]; }
    const std::uint8_t* row(int r) const { return pixels.data() + static_cast<std::size_t>(r) * width; }
    std::uint8_t* row(int r) { return pixels.data() + static_cast<std::size_t>(r) * width; }

    bool same_size(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
};

// Rectified pair: matching searches row r of `target` at columns c+d.
struct StereoPair {
    GrayImage reference; // right image
    GrayImage target;    // left image
};

// Throws DimensionError unless both images have identical, nonzero dimensions.
StereoPair make_stereo_pair(GrayImage reference, GrayImage target);

struct GradientMap {
    int width = 0;
    int height = 0;
    std::vector<double> norms; // row-major, >= 0

    double at(int r, int c) const { return norms[static_cast<std::size_t>(r) * width + c]; }
    const double* row(int r) const { return norms.data() + static_cast<std::size_t>(r) * width; }
};

// Parses a P2 (ASCII) or P5 (binary) PGM with maxval <= 255.
// Header comments (#...) are skipped. Throws PgmError on malformed input.
GrayImage load_pgm(std::string_view bytes);

// Serializes to P5 when `binary`, else P2. Round-trips through load_pgm.
std::string save_pgm(const GrayImage& img, bool binary);

GrayImage load_pgm_file(const std::string& path);
void save_pgm_file(const GrayImage& img, const std::string& path, bool binary = true);

// Euclidean norm of the two 3x3 Sobel responses, edge-replicated borders.
// Requires width >= 3 and height >= 3.
GradientMap sobel_gradient_norm(const GrayImage& img);

} // namespace stereogen
