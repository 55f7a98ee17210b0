#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "qimage/frqi.hpp"
#include "qimage/image.hpp"
#include "qimage/mnist.hpp"
#include "util/rng.hpp"

using qimage::BinaryImage;
using qimage::GrayImage;
using qsim::cd;

namespace {

constexpr double kPi = std::numbers::pi;

GrayImage constant_image(int side, double value) {
    return {side, side, std::vector<double>(static_cast<std::size_t>(side) * side, value)};
}

BinaryImage random_binary(util::Rng& rng, int side) {
    BinaryImage img;
    img.side = side;
    img.bits.resize(static_cast<std::size_t>(side) * side);
    for (auto& b : img.bits) b = rng.bernoulli(0.5) ? 1 : 0;
    return img;
}

double state_deviation(const qsim::StateVector& a, const qsim::StateVector& b) {
    REQUIRE(a.dim() == b.dim());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a.amplitude(i) - b.amplitude(i)));
    return worst;
}

}  // namespace

TEST_CASE("bilinear downsampling") {
    SUBCASE("constant image stays constant at any size") {
        const GrayImage img = constant_image(8, 0.37);
        for (int target : {1, 2, 4, 8}) {
            const GrayImage out = qimage::bilinear_downsample(img, target);
            for (double p : out.pixels) CHECK(p == doctest::Approx(0.37).epsilon(1e-12));
        }
    }
    SUBCASE("same-size target reproduces the image") {
        GrayImage img = constant_image(4, 0.0);
        util::Rng rng(2);
        for (auto& p : img.pixels) p = rng.uniform();
        const GrayImage out = qimage::bilinear_downsample(img, 4);
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            CHECK(out.pixels[i] == doctest::Approx(img.pixels[i]).epsilon(1e-12));
        }
    }
    SUBCASE("4x4 checkerboard halves to all 0.5") {
        GrayImage img = constant_image(4, 0.0);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                img.pixels[static_cast<std::size_t>(r) * 4 + c] = (r + c) % 2 ? 1.0 : 0.0;
            }
        }
        const GrayImage out = qimage::bilinear_downsample(img, 2);
        for (double p : out.pixels) CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("zero target is rejected") {
        CHECK_THROWS_AS(qimage::bilinear_downsample(constant_image(4, 0.0), 0), std::invalid_argument);
    }
}

TEST_CASE("binarize thresholding") {
    GrayImage img = constant_image(2, 0.0);
    img.pixels = {0.49, 0.51, 0.5, 1.0};
    const BinaryImage out = qimage::binarize(img);
    CHECK(out.bits == std::vector<std::uint8_t>{0, 1, 1, 1});  // exactly 0.5 maps to 1

    const BinaryImage white = qimage::binarize(constant_image(4, 1.0));
    for (auto b : white.bits) CHECK(b == 1);

    GrayImage rect{2, 1, {0.0, 0.0}};
    CHECK_THROWS_AS(qimage::binarize(rect), std::invalid_argument);
}

TEST_CASE("preprocessing is idempotent at fixed size") {
    util::Rng rng(5);
    GrayImage img = constant_image(16, 0.0);
    for (auto& p : img.pixels) p = rng.uniform();
    const GrayImage once = qimage::bilinear_downsample(img, 8);
    const GrayImage twice = qimage::bilinear_downsample(once, 8);
    for (std::size_t i = 0; i < once.pixels.size(); ++i) {
        CHECK(twice.pixels[i] == doctest::Approx(once.pixels[i]).epsilon(1e-12));
    }
    const BinaryImage b1 = qimage::binarize(once);
    const BinaryImage b2 = qimage::binarize(once);
    CHECK(b1.bits == b2.bits);
}

TEST_CASE("frqi_state on 2x2 images") {
    SUBCASE("all black: 0.5 on each position with color 0") {
        BinaryImage img{2, {0, 0, 0, 0}};
        const auto state = qimage::frqi_state(img);
        REQUIRE(state.num_qubits() == 3);
        for (std::size_t q = 0; q < 4; ++q) {
            CHECK(std::abs(state.amplitude(q) - cd(0.5, 0.0)) < 1e-12);
            CHECK(std::abs(state.amplitude(q + 4)) < 1e-12);
        }
    }
    SUBCASE("single white pixel at position 3") {
        BinaryImage img{2, {0, 0, 0, 1}};
        const auto state = qimage::frqi_state(img);
        CHECK(std::abs(state.amplitude(3)) < 1e-12);            // cos(pi/2) = 0
        CHECK(std::abs(state.amplitude(7) - cd(0.5, 0.0)) < 1e-12);  // sin(pi/2)/2
        for (std::size_t q = 0; q < 3; ++q) {
            CHECK(std::abs(state.amplitude(q) - cd(0.5, 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("frqi_state invariants on random images") {
    util::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const BinaryImage img = random_binary(rng, 8);
        const auto state = qimage::frqi_state(img);
        CHECK(std::abs(state.norm() - 1.0) < 1e-10);
        // binary input: amplitude magnitudes are exactly 0 or 1/2^n
        const double expected = 1.0 / 8.0;
        for (std::size_t i = 0; i < state.dim(); ++i) {
            const double mag = std::abs(state.amplitude(i));
            CHECK((mag < 1e-14 || std::abs(mag - expected) < 1e-14));
        }
    }
}

TEST_CASE("compressed_angle formula and injectivity") {
    CHECK(qimage::compressed_angle(0, 0, 0) == 0.0);
    CHECK(qimage::compressed_angle(1, 0, 0) == doctest::Approx(kPi / 2.0));
    CHECK(qimage::compressed_angle(1, 1, 1) == doctest::Approx(7.0 * kPi / 8.0));

    std::set<double> angles;
    for (int c = 0; c < 2; ++c) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                angles.insert(qimage::compressed_angle(c, a, b));
            }
        }
    }
    CHECK(angles.size() == 8);
    CHECK_THROWS_AS(qimage::compressed_angle(2, 0, 0), std::invalid_argument);
}

TEST_CASE("compressed_state on the 4x4 all-black image") {
    BinaryImage img{4, std::vector<std::uint8_t>(16, 0)};
    const auto state = qimage::compressed_state(img);
    REQUIRE(state.num_qubits() == 3);  // 2 position qubits + color

    // per-prefix color vector proportional to sum of (cos, sin) over
    // {0, pi/8, pi/4, 3pi/8}, identical for all four prefixes
    double cs = 0.0, sn = 0.0;
    for (int t = 0; t < 4; ++t) {
        cs += std::cos(t * kPi / 8.0);
        sn += std::sin(t * kPi / 8.0);
    }
    const double nrm = std::sqrt(cs * cs + sn * sn);
    for (std::size_t p = 0; p < 4; ++p) {
        CHECK(std::abs(state.amplitude(p) - cd(cs / nrm / 2.0, 0.0)) < 1e-12);
        CHECK(std::abs(state.amplitude(p + 4) - cd(sn / nrm / 2.0, 0.0)) < 1e-12);
    }
    CHECK(std::abs(state.norm() - 1.0) < 1e-12);
}

TEST_CASE("compressed_state rejects 2x2 input and keeps unit norm") {
    BinaryImage tiny{2, {0, 1, 1, 0}};
    CHECK_THROWS_AS(qimage::compressed_state(tiny), std::invalid_argument);

    util::Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const BinaryImage img = random_binary(rng, 8);
        const auto state = qimage::compressed_state(img);
        CHECK(std::abs(state.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("encode_circuit equals frqi_state for all 16 2x2 images") {
    for (int mask = 0; mask < 16; ++mask) {
        BinaryImage img{2, {static_cast<std::uint8_t>(mask & 1), static_cast<std::uint8_t>((mask >> 1) & 1),
                            static_cast<std::uint8_t>((mask >> 2) & 1), static_cast<std::uint8_t>((mask >> 3) & 1)}};
        const auto direct = qimage::frqi_state(img);
        const auto program = qimage::encode_circuit(img, false);
        const auto synthesized = program.simulate();
        CHECK(state_deviation(direct, synthesized) < 1e-10);
    }
}

TEST_CASE("encode_circuit structure") {
    SUBCASE("all-black image needs Hadamards only") {
        BinaryImage img{4, std::vector<std::uint8_t>(16, 0)};
        const auto program = qimage::encode_circuit(img, false);
        CHECK(program.ops.size() == 4);  // one H per position qubit
        for (const auto& op : program.ops) CHECK(op.kind == qsim::GateKind::H);
    }
    SUBCASE("single white pixel gives exactly one controlled-rotation block") {
        BinaryImage img{2, {0, 1, 0, 0}};
        const auto program = qimage::encode_circuit(img, false);
        int rotations = 0;
        for (const auto& op : program.ops) rotations += (op.kind == qsim::GateKind::MCRY);
        CHECK(rotations == 1);
        CHECK(state_deviation(qimage::frqi_state(img), program.simulate()) < 1e-10);
    }
}

TEST_CASE("encode_circuit equals the constructed state on random 8x8 images") {
    util::Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const BinaryImage img = random_binary(rng, 8);
        CHECK(state_deviation(qimage::frqi_state(img), qimage::encode_circuit(img, false).simulate()) < 1e-10);
        CHECK(state_deviation(qimage::compressed_state(img), qimage::encode_circuit(img, true).simulate()) < 1e-10);
    }
}

TEST_CASE("idx reader handles plain and gzip payloads") {
    // 2 images of 2x2 plus labels, written in IDX format.
    const unsigned char images_raw[] = {
        0, 0, 8, 3, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2,
        0, 255, 128, 64,
        10, 20, 30, 40,
    };
    const unsigned char labels_raw[] = {0, 0, 8, 1, 0, 0, 0, 2, 3, 6};

    const std::string img_path = "test_idx_images.bin";
    const std::string lbl_path = "test_idx_labels.bin";
    {
        std::ofstream out(img_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(images_raw), sizeof(images_raw));
    }
    {
        std::ofstream out(lbl_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(labels_raw), sizeof(labels_raw));
    }

    const auto images = qimage::read_idx_images(img_path);
    CHECK(images.count == 2);
    CHECK(images.rows == 2);
    CHECK(images.cols == 2);
    const GrayImage first = images.image(0);
    CHECK(first.pixels[0] == 0.0);
    CHECK(first.pixels[1] == doctest::Approx(1.0));
    CHECK(first.pixels[2] == doctest::Approx(128.0 / 255.0));

    const auto labels = qimage::read_idx_labels(lbl_path);
    CHECK(labels.labels == std::vector<std::uint8_t>{3, 6});

    // magic mismatch: feeding labels to the image reader must fail
    CHECK_THROWS(qimage::read_idx_images(lbl_path));

    // gzip-wrapped copy decodes to the same content
    const std::string gz_path = "test_idx_images.bin.gz";
    {
        gzFile gz = gzopen(gz_path.c_str(), "wb");
        REQUIRE(gz != nullptr);
        gzwrite(gz, images_raw, sizeof(images_raw));
        gzclose(gz);
    }
    const auto gz_images = qimage::read_idx_images(gz_path);
    CHECK(gz_images.pixels == images.pixels);

    std::remove(img_path.c_str());
    std::remove(lbl_path.c_str());
    std::remove(gz_path.c_str());
}

TEST_CASE("idx reader rejects truncated payloads") {
    const unsigned char truncated[] = {0, 0, 8, 3, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 255};
    const std::string path = "test_idx_trunc.bin";
    {
        std::ofstream out(path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(truncated), sizeof(truncated));
    }
    CHECK_THROWS(qimage::read_idx_images(path));
    std::remove(path.c_str());
}
