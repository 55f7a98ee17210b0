#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qimage/image.hpp"

namespace qimage {

/// Preprocessed image set: binarized power-of-two squares with their
/// original digit labels.
struct BinaryDataset {
    int side = 0;
    std::vector<BinaryImage> images;
    std::vector<std::uint8_t> digits;

    std::size_t size() const { return images.size(); }
};

/// Downsample + binarize every image whose label is in `digits`, preserving
/// file order.
BinaryDataset preprocess_idx(const std::string& images_path, const std::string& labels_path,
                             const std::vector<int>& digits, int side, double threshold = 0.5);

// Binary container: magic "QMB1", u32 count, u32 side (little-endian), then
// per record one label byte and side*side bit bytes.
void write_binary_dataset(const std::string& path, const BinaryDataset& dataset);
BinaryDataset read_binary_dataset(const std::string& path);

}  // namespace qimage
