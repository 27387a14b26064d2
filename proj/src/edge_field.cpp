#include "nhp/edge_field.hpp"

#include <cstring>
#include <fstream>
#include <numeric>

#include "nhp/errors.hpp"
#include "pgm_io.hpp"

namespace nhp {

void EdgeField::validate() const {
    if (px.size() != static_cast<std::size_t>(width) * height ||
        py.size() != px.size())
        throw DimensionMismatch("EdgeField channel size mismatch");
    for (std::size_t k = 0; k < px.size(); ++k) {
        if (px[k] < 0.0 || px[k] > 1.0 || py[k] < 0.0 || py[k] > 1.0)
            throw ParseError("EdgeField entry outside [0,1]");
    }
    for (int i = 0; i < height; ++i)
        if (px[idx(i, width - 1)] != 0.0)
            throw ParseError("EdgeField x-channel column padding is nonzero");
    for (int j = 0; j < width; ++j)
        if (py[idx(height - 1, j)] != 0.0)
            throw ParseError("EdgeField y-channel row padding is nonzero");
}

std::size_t RegionMask::count() const {
    return static_cast<std::size_t>(
        std::accumulate(mask.begin(), mask.end(), std::size_t{0}));
}

namespace {

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::ofstream& out, std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
        static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void read_f32_channel(std::ifstream& in, std::vector<double>& channel,
                      std::size_t n, const std::string& path) {
    std::vector<unsigned char> buf(n * 4);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size()))
        throw ParseError("truncated EFLD payload in " + path);
    channel.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t bits = read_u32_le(buf.data() + 4 * k);
        float f;
        std::memcpy(&f, &bits, 4);
        channel[k] = static_cast<double>(f);
    }
}

void write_f32_channel(std::ofstream& out, const std::vector<double>& channel) {
    std::vector<unsigned char> buf(channel.size() * 4);
    for (std::size_t k = 0; k < channel.size(); ++k) {
        const float f = static_cast<float>(channel[k]);
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        buf[4 * k] = static_cast<unsigned char>(bits & 0xff);
        buf[4 * k + 1] = static_cast<unsigned char>((bits >> 8) & 0xff);
        buf[4 * k + 2] = static_cast<unsigned char>((bits >> 16) & 0xff);
        buf[4 * k + 3] = static_cast<unsigned char>((bits >> 24) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
}

} // namespace

EdgeField load_efld(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    unsigned char header[16];
    in.read(reinterpret_cast<char*>(header), 16);
    if (in.gcount() != 16 || std::memcmp(header, "EFLD", 4) != 0)
        throw ParseError("not an EFLD file: " + path);
    const std::uint32_t w = read_u32_le(header + 4);
    const std::uint32_t h = read_u32_le(header + 8);
    if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20)
        throw ParseError("bad EFLD dimensions in " + path);
    EdgeField field(static_cast<int>(w), static_cast<int>(h));
    const std::size_t n = static_cast<std::size_t>(w) * h;
    read_f32_channel(in, field.px, n, path);
    read_f32_channel(in, field.py, n, path);
    return field;
}

void save_efld(const EdgeField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write("EFLD", 4);
    write_u32_le(out, static_cast<std::uint32_t>(field.width));
    write_u32_le(out, static_cast<std::uint32_t>(field.height));
    write_u32_le(out, 0);
    write_f32_channel(out, field.px);
    write_f32_channel(out, field.py);
    if (!out) throw IoError("failed writing " + path);
}

RegionMask load_region_pgm(const std::string& path) {
    int w = 0, h = 0;
    const auto pixels = detail::load_pgm_bytes(path, w, h);
    RegionMask region(w, h);
    for (std::size_t k = 0; k < pixels.size(); ++k)
        region.mask[k] = pixels[k] >= 128 ? 1 : 0;
    return region;
}

void save_region_pgm(const RegionMask& region, const std::string& path) {
    std::vector<std::uint8_t> pixels(region.mask.size());
    for (std::size_t k = 0; k < pixels.size(); ++k)
        pixels[k] = region.mask[k] ? 255 : 0;
    detail::save_pgm_bytes(path, region.width, region.height, pixels);
}

} // namespace nhp
