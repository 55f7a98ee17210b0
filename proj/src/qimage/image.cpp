#include "qimage/image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qimage {

void GrayImage::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("GrayImage: empty image");
    if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("GrayImage: pixel count does not match dimensions");
    }
    for (double p : pixels) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("GrayImage: pixel outside [0, 1]");
    }
}

int BinaryImage::n() const {
    if (side < 1 || !std::has_single_bit(static_cast<unsigned>(side))) {
        throw std::invalid_argument("BinaryImage: side must be a positive power of two");
    }
    return std::countr_zero(static_cast<unsigned>(side));
}

void BinaryImage::validate() const {
    n();
    if (bits.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
        throw std::invalid_argument("BinaryImage: bit count does not match side");
    }
    for (std::uint8_t b : bits) {
        if (b != 0 && b != 1) throw std::invalid_argument("BinaryImage: non-binary value");
    }
}

GrayImage bilinear_downsample(const GrayImage& img, int target_side) {
    img.validate();
    if (target_side < 1) throw std::invalid_argument("bilinear_downsample: target side must be >= 1");

    GrayImage out;
    out.width = target_side;
    out.height = target_side;
    out.pixels.resize(static_cast<std::size_t>(target_side) * static_cast<std::size_t>(target_side));

    const double sx = static_cast<double>(img.width) / target_side;
    const double sy = static_cast<double>(img.height) / target_side;

    for (int i = 0; i < target_side; ++i) {
        const double y = std::clamp((i + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(std::floor(y));
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = y - y0;
        for (int j = 0; j < target_side; ++j) {
            const double x = std::clamp((j + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(std::floor(x));
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = x - x0;

            const double top = img.at(y0, x0) * (1.0 - wx) + img.at(y0, x1) * wx;
            const double bot = img.at(y1, x0) * (1.0 - wx) + img.at(y1, x1) * wx;
            out.pixels[static_cast<std::size_t>(i) * static_cast<std::size_t>(target_side) + static_cast<std::size_t>(j)] =
                std::clamp(top * (1.0 - wy) + bot * wy, 0.0, 1.0);
        }
    }
    return out;
}

BinaryImage binarize(const GrayImage& img, double threshold) {
    img.validate();
    if (img.width != img.height) throw std::invalid_argument("binarize: image must be square");
    if (!std::has_single_bit(static_cast<unsigned>(img.width))) {
        throw std::invalid_argument("binarize: side must be a power of two");
    }
    BinaryImage out;
    out.side = img.width;
    out.bits.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.bits[i] = img.pixels[i] >= threshold ? 1 : 0;
    }
    return out;
}

}  // namespace qimage
