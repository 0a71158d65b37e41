#include "cflab/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "cflab/curve_table.hpp"
#include "cflab/errors.hpp"

namespace cflab {

namespace {

namespace fs = std::filesystem;

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image '" + path.string() + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

// Netpbm header/ASCII token reader with '#' comments.
class PnmReader {
public:
    PnmReader(const std::string& data, const fs::path& path) : data_(data), path_(path) {}

    unsigned long next_number() {
        skip_space_and_comments();
        if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            throw DataError("malformed netpbm header in '" + path_.string() + "'");
        }
        unsigned long v = 0;
        while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(data_[pos_++] - '0');
            if (v > 1'000'000'000UL) throw DataError("netpbm value too large in '" + path_.string() + "'");
        }
        return v;
    }

    // Exactly one whitespace byte separates the header from binary data.
    void skip_single_space() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw DataError("malformed netpbm header in '" + path_.string() + "'");
        }
        ++pos_;
    }

    std::size_t position() const { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& data_;
    const fs::path& path_;
    std::size_t pos_ = 2;
};

RealGrid decode_pnm(const std::string& data, const fs::path& path) {
    const char kind = data[1];
    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';
    PnmReader reader(data, path);
    const auto width = reader.next_number();
    const auto height = reader.next_number();
    const auto maxval = reader.next_number();
    if (width == 0 || height == 0 || maxval == 0 || maxval > 65535) {
        throw DataError("invalid netpbm dimensions or maxval in '" + path.string() + "'");
    }
    const std::size_t channels = color ? 3 : 1;
    const std::size_t count = width * height * channels;
    std::vector<double> samples(count);
    if (binary) {
        reader.skip_single_space();
        const std::size_t bytes_per = maxval > 255 ? 2 : 1;
        const std::size_t offset = reader.position();
        if (data.size() < offset + count * bytes_per) {
            throw DataError("truncated netpbm data in '" + path.string() + "'");
        }
        for (std::size_t k = 0; k < count; ++k) {
            const auto* p = reinterpret_cast<const unsigned char*>(data.data() + offset + k * bytes_per);
            samples[k] = bytes_per == 2 ? static_cast<double>((p[0] << 8) | p[1]) : static_cast<double>(p[0]);
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) samples[k] = static_cast<double>(reader.next_number());
    }
    const double scale = 255.0 / static_cast<double>(maxval);
    RealGrid out(height, width);
    for (std::size_t k = 0; k < height * width; ++k) {
        out[k] = color ? luma(samples[3 * k], samples[3 * k + 1], samples[3 * k + 2]) * scale
                       : samples[k] * scale;
    }
    return out;
}

RealGrid decode_png(const std::string& data, const fs::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
        throw DataError("cannot decode png '" + path.string() + "': " + image.message);
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw DataError("cannot decode png '" + path.string() + "': " + msg);
    }
    RealGrid out(image.height, image.width);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = luma(buffer[3 * k], buffer[3 * k + 1], buffer[3 * k + 2]);
    }
    return out;
}

}  // namespace

RealGrid read_image(const fs::path& path) {
    const std::string data = read_bytes(path);
    if (data.size() >= 2 && data[0] == 'P' && data[1] >= '2' && data[1] <= '6' && data[1] != '4') {
        return decode_pnm(data, path);
    }
    if (data.size() >= 8 && static_cast<unsigned char>(data[0]) == 0x89 && data.compare(1, 3, "PNG") == 0) {
        return decode_png(data, path);
    }
    throw DataError("unsupported image format '" + path.string() + "' (expected pgm, ppm or png)");
}

GrayImage to_display_image(const RealGrid& g) {
    GrayImage img{g.height(), g.width(), std::vector<std::uint8_t>(g.size(), 128)};
    const auto [lo_it, hi_it] = std::minmax_element(g.begin(), g.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) return img;
    for (std::size_t k = 0; k < g.size(); ++k) {
        img.pixels[k] = static_cast<std::uint8_t>(std::lround(255.0 * (g[k] - lo) / (hi - lo)));
    }
    return img;
}

GrayImage quantize(const RealGrid& g) {
    GrayImage img{g.height(), g.width(), std::vector<std::uint8_t>(g.size())};
    for (std::size_t k = 0; k < g.size(); ++k) {
        img.pixels[k] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(g[k]), 0, 255));
    }
    return img;
}

void write_pgm(const fs::path& path, const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(image.pixels.begin(), image.pixels.end());
    write_file_atomic(path, out);
}

void write_png(const fs::path& path, const GrayImage& image) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_GRAY;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.pixels.data(), 0, nullptr)) {
        throw DataError("cannot encode png '" + path.string() + "': " + png.message);
    }
    std::string buffer(size, '\0');
    if (!png_image_write_to_memory(&png, buffer.data(), &size, 0, image.pixels.data(), 0, nullptr)) {
        throw DataError("cannot encode png '" + path.string() + "': " + png.message);
    }
    buffer.resize(size);
    write_file_atomic(path, buffer);
}

}  // namespace cflab
