#include "gmt/mask_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "gmt/errors.hpp"

namespace gmt {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open mask file: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write file: " + path.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

Grid grid_for(int dim, int w, int h, int d) {
    if (w <= 0 || h <= 0 || d <= 0) throw InvalidInput("mask has zero size");
    const int level = level_for_extent(std::max({w, h, d}));
    return Grid::make(dim, level, {w, h, d});
}

class PbmReader {
public:
    explicit PbmReader(std::string_view b) : b_(b) {}

    CellSet read() {
        if (b_.size() < 2 || b_[0] != 'P' || (b_[1] != '1' && b_[1] != '4'))
            throw ParseError("not a PBM file (expected P1 or P4 magic)", 0);
        const bool binary = b_[1] == '4';
        pos_ = 2;
        const long w = number();
        const long h = number();
        if (w == 0 || h == 0) throw InvalidInput("mask has zero size");
        const Grid g = grid_for(2, int(w), int(h), 1);
        CellSet s(g);
        if (binary) {
            if (pos_ >= b_.size() || !std::isspace(static_cast<unsigned char>(b_[pos_])))
                throw ParseError("expected whitespace before raster", pos_);
            ++pos_;
            const std::size_t row_bytes = std::size_t((w + 7) / 8);
            if (b_.size() - pos_ < row_bytes * std::size_t(h))
                throw ParseError("truncated P4 raster", b_.size());
            for (long r = 0; r < h; ++r)
                for (long x = 0; x < w; ++x) {
                    const auto byte = static_cast<unsigned char>(b_[pos_ + std::size_t(r) * row_bytes + std::size_t(x / 8)]);
                    if (byte & (0x80u >> (x % 8))) s.set(g.index(int(x), int(h - 1 - r)));
                }
        } else {
            for (long r = 0; r < h; ++r)
                for (long x = 0; x < w; ++x) {
                    skip_space();
                    if (pos_ >= b_.size()) throw ParseError("truncated P1 raster", pos_);
                    const char c = b_[pos_];
                    if (c != '0' && c != '1') throw ParseError("unexpected character in P1 raster", pos_);
                    ++pos_;
                    if (c == '1') s.set(g.index(int(x), int(h - 1 - r)));
                }
        }
        return s;
    }

private:
    void skip_space() {
        while (pos_ < b_.size()) {
            const char c = b_[pos_];
            if (c == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long number() {
        skip_space();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
            v = v * 10 + (b_[pos_] - '0');
            if (v > (1L << 24)) throw ParseError("image dimension too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected an unsigned integer", start);
        return v;
    }

    std::string_view b_;
    std::size_t pos_ = 0;
};

CellSet read_png(std::string_view b) {
    static constexpr unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (b.size() < 8 || std::memcmp(b.data(), sig, 8) != 0) throw ParseError("not a PNG file (bad signature)", 0);
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&img, b.data(), b.size()))
        throw ParseError(std::string("malformed PNG: ") + img.message, 8);
    img.format = PNG_FORMAT_GRAY;
    if (img.width == 0 || img.height == 0) {
        png_image_free(&img);
        throw InvalidInput("mask has zero size");
    }
    std::vector<png_byte> buf(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
        const std::string msg = img.message;
        png_image_free(&img);
        throw ParseError("malformed PNG: " + msg, 8);
    }
    const int w = int(img.width), h = int(img.height);
    const Grid g = grid_for(2, w, h, 1);
    CellSet s(g);
    for (int r = 0; r < h; ++r)
        for (int x = 0; x < w; ++x)
            if (buf[std::size_t(r) * std::size_t(w) + std::size_t(x)] > 0) s.set(g.index(x, h - 1 - r));
    return s;
}

CellSet read_layers(std::string_view b) {
    std::vector<std::vector<std::string>> layers(1);
    std::vector<std::size_t> line_offsets;
    std::size_t pos = 0;
    while (pos < b.size()) {
        std::size_t end = b.find('\n', pos);
        if (end == std::string_view::npos) end = b.size();
        std::string line(b.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (!layers.back().empty()) layers.emplace_back();
        } else {
            for (std::size_t k = 0; k < line.size(); ++k)
                if (line[k] != '#' && line[k] != '.') throw ParseError("layer text must contain only '#' and '.'", pos + k);
            if (!layers.back().empty() && line.size() != layers.back().front().size())
                throw ParseError("ragged row in layer", pos);
            if (!layers.front().empty() && !layers.front().front().empty() && line.size() != layers.front().front().size())
                throw ParseError("row width differs from first layer", pos);
            layers.back().push_back(std::move(line));
        }
        pos = end + 1;
    }
    if (layers.back().empty()) layers.pop_back();
    if (layers.empty()) throw InvalidInput("mask has zero size");
    const std::size_t rows = layers.front().size();
    for (const auto& l : layers)
        if (l.size() != rows) throw ParseError("layers differ in row count", b.size());
    const int w = int(layers.front().front().size()), h = int(rows), d = int(layers.size());
    const Grid g = grid_for(3, w, h, d);
    CellSet s(g);
    for (int z = 0; z < d; ++z)
        for (int r = 0; r < h; ++r)
            for (int x = 0; x < w; ++x)
                if (layers[std::size_t(z)][std::size_t(r)][std::size_t(x)] == '#') s.set(g.index(x, h - 1 - r, z));
    return s;
}

}  // namespace

int level_for_extent(int max_axis) {
    if (max_axis <= 0) throw InvalidInput("mask has zero size");
    int level = 1;
    while ((1 << level) < max_axis) ++level;
    return level;
}

CellSet parse_mask(std::string_view bytes, MaskFormat format) {
    if (bytes.empty()) throw InvalidInput("mask has zero size");
    if (format == MaskFormat::Auto) {
        if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '1' || bytes[1] == '4'))
            format = MaskFormat::Pbm;
        else if (static_cast<unsigned char>(bytes[0]) == 0x89)
            format = MaskFormat::Png;
        else
            format = MaskFormat::Layers;
    }
    switch (format) {
        case MaskFormat::Pbm: return PbmReader(bytes).read();
        case MaskFormat::Png: return read_png(bytes);
        default: return read_layers(bytes);
    }
}

CellSet load_mask(const std::filesystem::path& path, MaskFormat format) {
    return parse_mask(read_file(path), format);
}

std::string encode_pbm(const CellSet& s, bool binary) {
    const Grid& g = s.grid();
    if (g.dim != 2) throw InvalidInput("PBM output needs a 2D grid");
    const int w = g.cells[0], h = g.cells[1];
    std::ostringstream out;
    out << (binary ? "P4\n" : "P1\n") << w << ' ' << h << '\n';
    if (binary) {
        const std::size_t row_bytes = std::size_t((w + 7) / 8);
        std::string raster(row_bytes * std::size_t(h), '\0');
        for (int r = 0; r < h; ++r)
            for (int x = 0; x < w; ++x)
                if (s.test(g.index(x, h - 1 - r)))
                    raster[std::size_t(r) * row_bytes + std::size_t(x / 8)] |= char(0x80u >> (x % 8));
        out << raster;
    } else {
        for (int r = 0; r < h; ++r) {
            for (int x = 0; x < w; ++x) out << (s.test(g.index(x, h - 1 - r)) ? '1' : '0');
            out << '\n';
        }
    }
    return out.str();
}

std::string encode_layers(const CellSet& s) {
    const Grid& g = s.grid();
    std::string out;
    for (int z = 0; z < g.cells[2]; ++z) {
        if (z) out += '\n';
        for (int r = 0; r < g.cells[1]; ++r) {
            for (int x = 0; x < g.cells[0]; ++x) out += s.test(g.index(x, g.cells[1] - 1 - r, z)) ? '#' : '.';
            out += '\n';
        }
    }
    return out;
}

void save_pbm(const CellSet& s, const std::filesystem::path& path) { write_file(path, encode_pbm(s, true)); }

void save_layers(const CellSet& s, const std::filesystem::path& path) { write_file(path, encode_layers(s)); }

void save_gray_png(const Grid& g, const std::vector<std::uint8_t>& pixels, const std::filesystem::path& path) {
    if (g.dim != 2) throw InvalidInput("PNG output needs a 2D grid");
    const int w = g.cells[0], h = g.cells[1];
    std::vector<png_byte> buf(std::size_t(w) * std::size_t(h));
    for (int r = 0; r < h; ++r)
        for (int x = 0; x < w; ++x) buf[std::size_t(r) * std::size_t(w) + std::size_t(x)] = pixels[std::size_t(g.index(x, h - 1 - r))];
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    img.width = png_uint_32(w);
    img.height = png_uint_32(h);
    img.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&img, path.string().c_str(), 0, buf.data(), 0, nullptr))
        throw InvalidInput(std::string("PNG write failed: ") + img.message);
}

void save_png(const CellSet& s, const std::filesystem::path& path) {
    std::vector<std::uint8_t> px(std::size_t(s.size()));
    for (Index i = 0; i < s.size(); ++i) px[std::size_t(i)] = s.test(i) ? 255 : 0;
    save_gray_png(s.grid(), px, path);
}

}  // namespace gmt
