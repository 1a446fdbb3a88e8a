#include "sff/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sff/error.hpp"

namespace sff {

double round_half_even(double v) {
    double f = std::floor(v);
    double frac = v - f;
    if (frac > 0.5) return f + 1.0;
    if (frac < 0.5) return f;
    return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failed on " + path.string());
    return bytes;
}

void atomic_write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("write failed on " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

namespace {

// PGM header tokenizer: skips whitespace and '#' comments.
struct TokenReader {
    const std::string& bytes;
    std::size_t pos = 0;

    std::string next() {
        while (pos < bytes.size()) {
            char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
        std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
               bytes[pos] != '#')
            ++pos;
        if (start == pos)
            throw FormatError("unexpected end of PGM header");
        return bytes.substr(start, pos - start);
    }
};

int parse_positive_int(const std::string& token, const char* what) {
    std::size_t consumed = 0;
    long value = 0;
    try {
        value = std::stol(token, &consumed);
    } catch (const std::exception&) {
        throw FormatError(std::string("bad PGM ") + what + ": '" + token + "'");
    }
    if (consumed != token.size() || value <= 0 || value > 1 << 24)
        throw FormatError(std::string("bad PGM ") + what + ": '" + token + "'");
    return static_cast<int>(value);
}

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const std::string& bytes, std::size_t pos) {
    auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + i])); };
    return b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24);
}

} // namespace

Image decode_pgm(const std::string& bytes) {
    TokenReader reader{bytes};
    std::string magic = reader.next();
    if (magic != "P5")
        throw FormatError("not a binary PGM (magic '" + magic + "', want P5)");
    int width = parse_positive_int(reader.next(), "width");
    int height = parse_positive_int(reader.next(), "height");
    int maxval = parse_positive_int(reader.next(), "maxval");
    if (maxval != 255)
        throw FormatError("unsupported PGM maxval " + std::to_string(maxval) + " (want 255)");
    // Exactly one whitespace byte separates the header from the payload.
    std::size_t payload = reader.pos + 1;
    std::size_t count = static_cast<std::size_t>(width) * height;
    if (payload + count > bytes.size())
        throw FormatError("truncated PGM payload");
    Image image(width, height);
    for (std::size_t i = 0; i < count; ++i)
        image.pixels[i] = static_cast<double>(static_cast<unsigned char>(bytes[payload + i]));
    return image;
}

std::string encode_pgm(const Image& image) {
    if (image.width <= 0 || image.height <= 0)
        throw std::invalid_argument("cannot encode an empty image");
    for (double v : image.pixels)
        if (!(v >= 0.0 && v <= 255.0))
            throw std::range_error("pixel value " + std::to_string(v) + " outside [0,255] on save");
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.pixels.size());
    for (double v : image.pixels)
        out.push_back(static_cast<char>(static_cast<unsigned char>(round_half_even(v))));
    return out;
}

Image load_pgm(const std::filesystem::path& path) {
    return decode_pgm(read_file_bytes(path));
}

void save_pgm(const Image& image, const std::filesystem::path& path) {
    atomic_write_bytes(path, encode_pgm(image));
}

std::string encode_float_grid(const FloatGrid& grid) {
    if (grid.width <= 0 || grid.height <= 0)
        throw std::invalid_argument("cannot encode an empty grid");
    for (double v : grid.values)
        if (!std::isfinite(v))
            throw FormatError("non-finite value in float grid on save");
    std::string out = "SFFD";
    put_u32le(out, static_cast<std::uint32_t>(grid.width));
    put_u32le(out, static_cast<std::uint32_t>(grid.height));
    out.reserve(out.size() + grid.values.size() * 8);
    for (double v : grid.values) {
        std::uint64_t raw = std::bit_cast<std::uint64_t>(v);
        for (int shift = 0; shift < 64; shift += 8)
            out.push_back(static_cast<char>((raw >> shift) & 0xff));
    }
    return out;
}

FloatGrid decode_float_grid(const std::string& bytes) {
    if (bytes.size() < 12 || bytes.compare(0, 4, "SFFD") != 0)
        throw FormatError("bad SFFD magic");
    std::uint32_t width = get_u32le(bytes, 4);
    std::uint32_t height = get_u32le(bytes, 8);
    if (width == 0 || height == 0 || width > (1u << 24) || height > (1u << 24))
        throw FormatError("bad SFFD dimensions");
    std::size_t count = static_cast<std::size_t>(width) * height;
    if (bytes.size() != 12 + count * 8)
        throw FormatError("SFFD size mismatch: " + std::to_string(bytes.size()) + " bytes for " +
                          std::to_string(width) + "x" + std::to_string(height));
    FloatGrid grid(static_cast<int>(width), static_cast<int>(height));
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t raw = 0;
        for (int byte = 0; byte < 8; ++byte)
            raw |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[12 + i * 8 + byte])) << (8 * byte);
        double v = std::bit_cast<double>(raw);
        if (!std::isfinite(v))
            throw FormatError("non-finite value in SFFD payload");
        grid.values[i] = v;
    }
    return grid;
}

FloatGrid load_float_grid(const std::filesystem::path& path) {
    return decode_float_grid(read_file_bytes(path));
}

void save_float_grid(const FloatGrid& grid, const std::filesystem::path& path) {
    atomic_write_bytes(path, encode_float_grid(grid));
}

} // namespace sff
