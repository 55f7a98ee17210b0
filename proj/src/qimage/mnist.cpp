#include "qimage/mnist.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qimage {

namespace {

std::vector<std::uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& compressed) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw std::runtime_error("gzip: inflateInit failed");

    std::vector<std::uint8_t> out;
    out.reserve(compressed.size() * 4);
    std::uint8_t buffer[1 << 16];
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());

    int rc = Z_OK;
    do {
        zs.next_out = buffer;
        zs.avail_out = sizeof(buffer);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("gzip: corrupt stream");
        }
        out.insert(out.end(), buffer, buffer + (sizeof(buffer) - zs.avail_out));
    } while (rc != Z_STREAM_END);

    inflateEnd(&zs);
    return out;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& data, std::size_t offset) {
    if (offset + 4 > data.size()) throw std::runtime_error("idx: truncated header");
    return (std::uint32_t{data[offset]} << 24) | (std::uint32_t{data[offset + 1]} << 16) |
           (std::uint32_t{data[offset + 2]} << 8) | std::uint32_t{data[offset + 3]};
}

}  // namespace

std::vector<std::uint8_t> read_file_maybe_gzip(const std::string& path) {
    auto data = read_all(path);
    if (data.size() >= 2 && data[0] == 0x1f && data[1] == 0x8b) {
        return gunzip(data);
    }
    return data;
}

GrayImage IdxImages::image(int index) const {
    if (index < 0 || index >= count) throw std::out_of_range("IdxImages: index out of range");
    GrayImage img;
    img.width = cols;
    img.height = rows;
    img.pixels.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    const std::size_t offset = static_cast<std::size_t>(index) * img.pixels.size();
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        img.pixels[i] = pixels[offset + i] / 255.0;
    }
    return img;
}

IdxImages read_idx_images(const std::string& path) {
    const auto data = read_file_maybe_gzip(path);
    if (read_be32(data, 0) != 0x00000803u) throw std::runtime_error("idx: bad image magic in " + path);
    IdxImages set;
    set.count = static_cast<int>(read_be32(data, 4));
    set.rows = static_cast<int>(read_be32(data, 8));
    set.cols = static_cast<int>(read_be32(data, 12));
    const std::size_t expected = 16 + static_cast<std::size_t>(set.count) * set.rows * set.cols;
    if (data.size() < expected) throw std::runtime_error("idx: truncated image payload in " + path);
    set.pixels.assign(data.begin() + 16, data.begin() + static_cast<std::ptrdiff_t>(expected));
    return set;
}

IdxLabels read_idx_labels(const std::string& path) {
    const auto data = read_file_maybe_gzip(path);
    if (read_be32(data, 0) != 0x00000801u) throw std::runtime_error("idx: bad label magic in " + path);
    const std::size_t count = read_be32(data, 4);
    if (data.size() < 8 + count) throw std::runtime_error("idx: truncated label payload in " + path);
    IdxLabels labels;
    labels.labels.assign(data.begin() + 8, data.begin() + 8 + static_cast<std::ptrdiff_t>(count));
    return labels;
}

}  // namespace qimage
