#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sff/error.hpp"
#include "sff/filter.hpp"
#include "sff/image.hpp"
#include "sff/io.hpp"
#include "test_util.hpp"

using namespace sff;
using testutil::TempDir;

TEST_CASE("round_half_even ties go to the even integer") {
    CHECK(round_half_even(0.5) == 0.0);
    CHECK(round_half_even(1.5) == 2.0);
    CHECK(round_half_even(2.5) == 2.0);
    CHECK(round_half_even(254.5) == 254.0);
    CHECK(round_half_even(127.2) == 127.0);
    CHECK(round_half_even(127.8) == 128.0);
}

TEST_CASE("pgm decode maps bytes directly") {
    std::string bytes = "P5\n2 2\n255\n";
    bytes += static_cast<char>(0);
    bytes += static_cast<char>(128);
    bytes += static_cast<char>(255);
    bytes += static_cast<char>(64);
    Image image = decode_pgm(bytes);
    CHECK(image.width == 2);
    CHECK(image.height == 2);
    CHECK(image.at(0, 0) == 0.0);
    CHECK(image.at(1, 0) == 128.0);
    CHECK(image.at(0, 1) == 255.0);
    CHECK(image.at(1, 1) == 64.0);
}

TEST_CASE("pgm decode rejects bad input") {
    CHECK_THROWS_AS(decode_pgm("P6\n2 2\n255\n0000"), FormatError);       // wrong magic
    CHECK_THROWS_AS(decode_pgm("P5\n2 2\n255\nab"), FormatError);         // truncated payload
    CHECK_THROWS_AS(decode_pgm("P5\n2 2\n65535\n\0\0\0\0"), FormatError); // unsupported maxval
    CHECK_THROWS_AS(decode_pgm("P5\n-3 2\n255\n"), FormatError);
    CHECK_THROWS_AS(decode_pgm(""), FormatError);
}

TEST_CASE("pgm decode tolerates comments and loose whitespace") {
    std::string bytes = "P5 # magic\n# a comment line\n 2\t1 \n255\n";
    bytes += static_cast<char>(7);
    bytes += static_cast<char>(9);
    Image image = decode_pgm(bytes);
    CHECK(image.width == 2);
    CHECK(image.height == 1);
    CHECK(image.at(0, 0) == 7.0);
    CHECK(image.at(1, 0) == 9.0);
}

TEST_CASE("pgm 302x302 header and payload size") {
    Image image = testutil::random_image(302, 302, 42);
    for (double& p : image.pixels)
        p = std::floor(p);
    std::string bytes = encode_pgm(image);
    CHECK(bytes.rfind("P5\n302 302\n255\n", 0) == 0);
    CHECK(bytes.size() == 15 + 302u * 302u);
    Image back = decode_pgm(bytes);
    CHECK(back.width == 302);
    CHECK(back.height == 302);
}

TEST_CASE("pgm encode enforces the pixel range") {
    Image image(1, 2);
    image.at(0, 0) = 0.0;
    image.at(0, 1) = 255.6;
    CHECK_THROWS_AS(encode_pgm(image), std::range_error);
    image.at(0, 1) = -0.2;
    CHECK_THROWS_AS(encode_pgm(image), std::range_error);
    image.at(0, 1) = std::nan("");
    CHECK_THROWS_AS(encode_pgm(image), std::range_error);
}

TEST_CASE("pgm encode writes exact bytes and rounds half to even") {
    Image image(2, 1);
    image.at(0, 0) = 0.0;
    image.at(1, 0) = 255.0;
    std::string bytes = encode_pgm(image);
    CHECK(bytes == std::string("P5\n2 1\n255\n") + '\0' + '\xff');
    image.at(0, 0) = 126.5; // ties to 126
    image.at(1, 0) = 127.5; // ties to 128
    bytes = encode_pgm(image);
    CHECK(static_cast<unsigned char>(bytes[bytes.size() - 2]) == 126);
    CHECK(static_cast<unsigned char>(bytes[bytes.size() - 1]) == 128);
}

TEST_CASE("pgm save/load round-trips integral images through disk") {
    TempDir dir("pgm");
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 100; ++trial) {
        int w = 1 + static_cast<int>(gen() % 40);
        int h = 1 + static_cast<int>(gen() % 40);
        Image image(w, h);
        for (double& p : image.pixels)
            p = static_cast<double>(gen() % 256);
        auto path = dir.path / ("img_" + std::to_string(trial) + ".pgm");
        save_pgm(image, path);
        Image back = load_pgm(path);
        REQUIRE(back.width == w);
        REQUIRE(back.height == h);
        CHECK(back.pixels == image.pixels);
    }
}

TEST_CASE("sffd layout: 1x1 grid is 20 bytes, 302x302 is 12 + 302*302*8") {
    FloatGrid tiny(1, 1);
    tiny.values[0] = 3.5;
    std::string bytes = encode_float_grid(tiny);
    CHECK(bytes.size() == 20);
    FloatGrid back = decode_float_grid(bytes);
    CHECK(back.values[0] == 3.5);

    FloatGrid big(302, 302, 1.25);
    CHECK(encode_float_grid(big).size() == 12u + 302u * 302u * 8u);
}

TEST_CASE("sffd decode rejects bad input") {
    FloatGrid grid(2, 2, 1.0);
    std::string good = encode_float_grid(grid);
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(decode_float_grid(bad_magic), FormatError);
    CHECK_THROWS_AS(decode_float_grid(good.substr(0, good.size() - 1)), FormatError);
    CHECK_THROWS_AS(decode_float_grid(good + "x"), FormatError);
    grid.values[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(encode_float_grid(grid), FormatError);
}

TEST_CASE("sffd round-trips arbitrary finite reals bitwise") {
    TempDir dir("sffd");
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        int w = 1 + static_cast<int>(gen() % 24);
        int h = 1 + static_cast<int>(gen() % 24);
        FloatGrid grid(w, h);
        for (double& v : grid.values) {
            switch (gen() % 5) {
                case 0: v = -0.0; break;
                case 1: v = 1e-308; break;
                case 2: v = -3.7e250; break;
                case 3: v = static_cast<double>(gen()) / 7.0; break;
                default: v = std::ldexp(static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5, static_cast<int>(gen() % 64) - 32);
            }
        }
        auto path = dir.path / ("grid_" + std::to_string(trial) + ".sffd");
        save_float_grid(grid, path);
        FloatGrid back = load_float_grid(path);
        REQUIRE(back.width == w);
        REQUIRE(back.height == h);
        for (std::size_t i = 0; i < grid.values.size(); ++i) {
            CHECK(std::bit_cast<std::uint64_t>(back.values[i]) == std::bit_cast<std::uint64_t>(grid.values[i]));
        }
    }
}

TEST_CASE("convolve with the identity kernel is a no-op") {
    Kernel identity;
    identity.radius = 1;
    identity.weights = {0, 0, 0, 0, 1, 0, 0, 0, 0};
    Image image = testutil::random_image(16, 12, 3);
    FloatGrid out = convolve(image, identity);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x)
            CHECK(out.at(x, y) == image.at(x, y));
}

TEST_CASE("convolve of a constant scales by the kernel sum") {
    Kernel kernel;
    kernel.radius = 1;
    kernel.weights = {1, 2, 1, 2, 4, 2, 1, 2, 1}; // sums to 16
    Image image(9, 9, 3.0);
    FloatGrid out = convolve(image, kernel);
    for (double v : out.values)
        CHECK(v == doctest::Approx(48.0).epsilon(1e-14));
}

TEST_CASE("convolve matches the hand-evaluated Laplacian stencil") {
    Image image(3, 3);
    for (int i = 0; i < 9; ++i)
        image.pixels[i] = i + 1; // 1..9 row-major
    Kernel laplacian;
    laplacian.radius = 1;
    laplacian.weights = {0, 1, 0, 1, -4, 1, 0, 1, 0};
    FloatGrid out = convolve(image, laplacian);
    CHECK(out.at(1, 1) == 2.0 + 4.0 + 6.0 + 8.0 - 20.0); // = 0
}

TEST_CASE("convolve rejects oversized kernels") {
    Kernel kernel;
    kernel.radius = 3;
    kernel.weights.assign(49, 1.0 / 49.0);
    Image small(3, 3, 1.0);
    CHECK_THROWS_AS(convolve(small, kernel), std::invalid_argument);
}

TEST_CASE("convolve is linear") {
    Kernel kernel = gaussian_kernel(0.8);
    FloatGrid x = testutil::random_grid(32, 32, 21, -50, 50);
    FloatGrid y = testutil::random_grid(32, 32, 22, -50, 50);
    const double a = 2.25, b = -0.75;
    FloatGrid combined(32, 32);
    for (std::size_t i = 0; i < combined.values.size(); ++i)
        combined.values[i] = a * x.values[i] + b * y.values[i];
    FloatGrid lhs = convolve(combined, kernel);
    FloatGrid cx = convolve(x, kernel);
    FloatGrid cy = convolve(y, kernel);
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
        CHECK(lhs.values[i] == doctest::Approx(a * cx.values[i] + b * cy.values[i]).epsilon(1e-9));
}

TEST_CASE("normalized gaussian preserves constants and the value range") {
    Kernel kernel = gaussian_kernel(1.5);
    Image constant(20, 20, 77.0);
    FloatGrid out = convolve(constant, kernel);
    for (double v : out.values)
        CHECK(v == doctest::Approx(77.0).epsilon(1e-12));

    Image noisy = testutil::random_image(32, 32, 5);
    double lo = 255.0, hi = 0.0;
    for (double p : noisy.pixels) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    FloatGrid blurred = convolve(noisy, kernel);
    for (double v : blurred.values) {
        CHECK(v >= lo - 1e-9);
        CHECK(v <= hi + 1e-9);
    }
}

TEST_CASE("gaussian_kernel shape and normalization") {
    Kernel tight = gaussian_kernel(0.1);
    CHECK(tight.radius == 1);
    CHECK(tight.at(0, 0) > 0.99);

    Kernel wide = gaussian_kernel(2.0);
    CHECK(wide.radius == 6);
    CHECK(wide.weights.size() == 13u * 13u);

    for (double sigma : {0.1, 0.7, 1.0, 2.0, 3.3}) {
        Kernel k = gaussian_kernel(sigma);
        double sum = 0.0;
        for (double w : k.weights)
            sum += w;
        CHECK(std::fabs(sum - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(gaussian_kernel(0.0), std::domain_error);
    CHECK_THROWS_AS(gaussian_kernel(-1.0), std::domain_error);
}

TEST_CASE("grid_to_gray affine map, clamping and monotonicity") {
    FloatGrid grid(3, 1);
    grid.values = {0.0, 29.5, 59.0};
    Image gray = grid_to_gray(grid, 0.0, 59.0);
    CHECK(gray.at(0, 0) == 0.0);
    CHECK(gray.at(1, 0) == 127.5);
    CHECK(gray.at(2, 0) == 255.0);

    FloatGrid constant(4, 4, -3.0);
    Image zeros = grid_to_gray(constant, -3.0, 5.0);
    for (double p : zeros.pixels)
        CHECK(p == 0.0);

    FloatGrid wild(2, 1);
    wild.values = {-100.0, 1000.0};
    Image clamped = grid_to_gray(wild, 0.0, 59.0);
    CHECK(clamped.at(0, 0) == 0.0);
    CHECK(clamped.at(1, 0) == 255.0);

    std::mt19937_64 gen(13);
    FloatGrid a = testutil::random_grid(8, 8, 31, -20, 80);
    Image mapped = grid_to_gray(a, -20.0, 80.0);
    for (std::size_t i = 0; i + 1 < a.values.size(); ++i) {
        if (a.values[i] <= a.values[i + 1])
            CHECK(mapped.pixels[i] <= mapped.pixels[i + 1]);
        else
            CHECK(mapped.pixels[i] >= mapped.pixels[i + 1]);
    }

    CHECK_THROWS_AS(grid_to_gray(grid, 5.0, 5.0), std::domain_error);
    CHECK_THROWS_AS(grid_to_gray(grid, 9.0, 5.0), std::domain_error);
}
