#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qimage/image.hpp"

namespace qimage {

/// IDX image set: `count` images of rows x cols bytes, values 0..255.
struct IdxImages {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols

    GrayImage image(int index) const;  // normalized to [0, 1]
};

struct IdxLabels {
    std::vector<std::uint8_t> labels;
};

/// Reads the big-endian IDX format (magic 0x00000803 for images,
/// 0x00000801 for labels). Transparently inflates gzip-wrapped files.
IdxImages read_idx_images(const std::string& path);
IdxLabels read_idx_labels(const std::string& path);

/// Raw file loader used by both readers; exposed for digest computation.
std::vector<std::uint8_t> read_file_maybe_gzip(const std::string& path);

}  // namespace qimage
