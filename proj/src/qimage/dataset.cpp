#include "qimage/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "qimage/mnist.hpp"

namespace qimage {

BinaryDataset preprocess_idx(const std::string& images_path, const std::string& labels_path,
                             const std::vector<int>& digits, int side, double threshold) {
    const IdxImages images = read_idx_images(images_path);
    const IdxLabels labels = read_idx_labels(labels_path);
    if (static_cast<std::size_t>(images.count) != labels.labels.size()) {
        throw std::runtime_error("preprocess_idx: image/label count mismatch");
    }

    BinaryDataset out;
    out.side = side;
    for (int i = 0; i < images.count; ++i) {
        const int digit = labels.labels[static_cast<std::size_t>(i)];
        if (std::find(digits.begin(), digits.end(), digit) == digits.end()) continue;
        const GrayImage small = bilinear_downsample(images.image(i), side);
        out.images.push_back(binarize(small, threshold));
        out.digits.push_back(static_cast<std::uint8_t>(digit));
    }
    return out;
}

namespace {

constexpr char kMagic[4] = {'Q', 'M', 'B', '1'};

void put_u32(std::ofstream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("binary dataset: truncated header");
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
           (std::uint32_t{b[3]} << 24);
}

}  // namespace

void write_binary_dataset(const std::string& path, const BinaryDataset& dataset) {
    if (dataset.images.size() != dataset.digits.size()) {
        throw std::invalid_argument("write_binary_dataset: image/label count mismatch");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(dataset.images.size()));
    put_u32(out, static_cast<std::uint32_t>(dataset.side));
    for (std::size_t i = 0; i < dataset.images.size(); ++i) {
        const BinaryImage& img = dataset.images[i];
        if (img.side != dataset.side) throw std::invalid_argument("write_binary_dataset: inconsistent side");
        out.put(static_cast<char>(dataset.digits[i]));
        out.write(reinterpret_cast<const char*>(img.bits.data()), static_cast<std::streamsize>(img.bits.size()));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

BinaryDataset read_binary_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("binary dataset: bad magic in " + path);
    }
    BinaryDataset out;
    const std::uint32_t count = get_u32(in);
    out.side = static_cast<int>(get_u32(in));
    const std::size_t pixels = static_cast<std::size_t>(out.side) * static_cast<std::size_t>(out.side);
    out.images.resize(count);
    out.digits.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        int label = in.get();
        if (label == EOF) throw std::runtime_error("binary dataset: truncated record in " + path);
        out.digits[i] = static_cast<std::uint8_t>(label);
        out.images[i].side = out.side;
        out.images[i].bits.resize(pixels);
        in.read(reinterpret_cast<char*>(out.images[i].bits.data()), static_cast<std::streamsize>(pixels));
        if (!in) throw std::runtime_error("binary dataset: truncated record in " + path);
    }
    return out;
}

}  // namespace qimage
