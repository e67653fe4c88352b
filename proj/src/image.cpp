#include "stereogen/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stereogen {

StereoPair make_stereo_pair(GrayImage reference, GrayImage target) {
    if (!reference.same_size(target)) {
        throw DimensionError("stereo pair images differ in size: " +
                             std::to_string(reference.width) + "x" + std::to_string(reference.height) +
                             " vs " + std::to_string(target.width) + "x" + std::to_string(target.height));
    }
    if (reference.width <= 0 || reference.height <= 0) {
        throw DimensionError("stereo pair images must be non-empty");
    }
    return StereoPair{std::move(reference), std::move(target)};
}

namespace {

// Pulls the next whitespace-separated header token, skipping '#' comments.
bool next_token(std::string_view bytes, std::size_t& pos, std::string& token) {
    while (pos < bytes.size()) {
        char ch = bytes[pos];
        if (ch == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= bytes.size()) return false;
    std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#') ++pos;
    token.assign(bytes.substr(start, pos - start));
    return true;
}

int parse_header_int(std::string_view bytes, std::size_t& pos, const char* what) {
    std::string token;
    if (!next_token(bytes, pos, token)) {
        throw PgmError(std::string("malformed header: missing ") + what);
    }
    int value = 0;
    for (char ch : token) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw PgmError(std::string("malformed header: bad ") + what + " '" + token + "'");
        }
        value = value * 10 + (ch - '0');
        if (value > 1 << 30) throw PgmError(std::string("malformed header: ") + what + " out of range");
    }
    return value;
}

} // namespace

GrayImage load_pgm(std::string_view bytes) {
    std::size_t pos = 0;
    std::string magic;
    if (!next_token(bytes, pos, magic)) throw PgmError("malformed header: empty input");
    if (magic != "P2" && magic != "P5") throw PgmError("unsupported magic '" + magic + "' (want P2 or P5)");

    const int width = parse_header_int(bytes, pos, "width");
    const int height = parse_header_int(bytes, pos, "height");
    const int maxval = parse_header_int(bytes, pos, "maxval");
    if (width <= 0 || height <= 0) throw PgmError("malformed header: zero image dimension");
    if (maxval > 255) throw PgmError("maxval " + std::to_string(maxval) + " unsupported (must be <= 255)");
    if (maxval <= 0) throw PgmError("malformed header: maxval must be positive");

    GrayImage img(width, height);
    const std::size_t count = img.pixels.size();

    if (magic == "P5") {
        // Exactly one whitespace byte separates maxval from the raster.
        if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
            throw PgmError("malformed header: missing separator before binary data");
        }
        ++pos;
        if (bytes.size() - pos < count) throw PgmError("truncated pixel data");
        std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data()) + pos, count, img.pixels.begin());
        for (std::uint8_t v : img.pixels) {
            if (v > maxval) throw PgmError("pixel value exceeds maxval");
        }
    } else {
        std::string token;
        for (std::size_t i = 0; i < count; ++i) {
            if (!next_token(bytes, pos, token)) throw PgmError("truncated pixel data");
            int value = 0;
            for (char ch : token) {
                if (!std::isdigit(static_cast<unsigned char>(ch))) {
                    throw PgmError("bad pixel token '" + token + "'");
                }
                value = value * 10 + (ch - '0');
                if (value > 255) break;
            }
            if (value > maxval) throw PgmError("pixel value exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(value);
        }
    }
    return img;
}

std::string save_pgm(const GrayImage& img, bool binary) {
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << "\n" << img.width << " " << img.height << "\n255\n";
    if (binary) {
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    } else {
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                out << static_cast<int>(img.at(r, c)) << (c + 1 == img.width ? "" : " ");
            }
            out << "\n";
        }
    }
    return std::move(out).str();
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return load_pgm(buf.str());
}

void save_pgm_file(const GrayImage& img, const std::string& path, bool binary) {
    const std::string bytes = save_pgm(img, binary);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on '" + path + "'");
}

GradientMap sobel_gradient_norm(const GrayImage& img) {
    if (img.width < 3 || img.height < 3) {
        throw DimensionError("sobel needs at least 3x3, got " +
                             std::to_string(img.width) + "x" + std::to_string(img.height));
    }
    GradientMap map;
    map.width = img.width;
    map.height = img.height;
    map.norms.resize(img.pixels.size());

    const int w = img.width;
    const int h = img.height;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        const std::uint8_t* up = img.row(r == 0 ? 0 : r - 1);
        const std::uint8_t* mid = img.row(r);
        const std::uint8_t* down = img.row(r == h - 1 ? h - 1 : r + 1);
        double* out = map.norms.data() + static_cast<std::size_t>(r) * w;
        for (int c = 0; c < w; ++c) {
            const int cl = c == 0 ? 0 : c - 1;
            const int cr = c == w - 1 ? w - 1 : c + 1;
            const int gx = (up[cr] + 2 * mid[cr] + down[cr]) - (up[cl] + 2 * mid[cl] + down[cl]);
            const int gy = (down[cl] + 2 * down[c] + down[cr]) - (up[cl] + 2 * up[c] + up[cr]);
            out[c] = std::sqrt(static_cast<double>(gx) * gx + static_cast<double>(gy) * gy);
        }
    }
    return map;
}

} // namespace stereogen
