#pragma once

#include <cstdint>
#include <vector>

namespace qimage {

/// Row-major grayscale image with intensities in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)]; }
    void validate() const;
};

/// Square binary image with power-of-two side, row-major bits.
struct BinaryImage {
    int side = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int row, int col) const { return bits[static_cast<std::size_t>(row) * static_cast<std::size_t>(side) + static_cast<std::size_t>(col)]; }
    /// log2(side): the image needs 2n position qubits.
    int n() const;
    void validate() const;
};

/// Pixel-center-aligned bilinear resampling: output pixel (i, j) samples the
/// input at ((i + 0.5) * H/N - 0.5, (j + 0.5) * W/N - 0.5), clamped at the
/// borders. Output values stay in [0, 1].
GrayImage bilinear_downsample(const GrayImage& img, int target_side);

/// bit = 1 iff pixel >= threshold. Requires a square power-of-two image.
BinaryImage binarize(const GrayImage& img, double threshold = 0.5);

}  // namespace qimage
