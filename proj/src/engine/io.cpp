#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vmf/engine.hpp"
#include "vmf/error.hpp"

namespace vmf {

namespace {

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Reads one whitespace-delimited header token, skipping '#' comments.
struct HeaderReader {
  const std::vector<unsigned char>& buf;
  std::size_t pos = 0;
  const std::string& path;

  long number() {
    skip();
    const std::size_t start = pos;
    while (pos < buf.size() && std::isdigit(buf[pos])) ++pos;
    if (pos == start) throw ValidationError("'" + path + "': malformed PGM header");
    return std::stol(std::string(buf.begin() + static_cast<std::ptrdiff_t>(start), buf.begin() + static_cast<std::ptrdiff_t>(pos)));
  }
  void skip() {
    while (pos < buf.size()) {
      if (buf[pos] == '#') {
        while (pos < buf.size() && buf[pos] != '\n') ++pos;
      } else if (std::isspace(buf[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  }
};

void put_u32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

Image read_pgm(const std::string& path) {
  const auto buf = slurp(path);
  if (buf.size() < 2 || buf[0] != 'P' || (buf[1] != '2' && buf[1] != '5'))
    throw ValidationError("'" + path + "' is not a P2/P5 PGM file");
  const bool binary = buf[1] == '5';
  HeaderReader hr{buf, 2, path};
  const long w = hr.number();
  const long h = hr.number();
  const long maxval = hr.number();
  if (w < 1 || h < 1 || w > (1 << 16) || h > (1 << 16)) throw ValidationError("'" + path + "': unsupported PGM dimensions");
  if (maxval < 1 || maxval > 65535) throw ValidationError("'" + path + "': PGM maxval must lie in [1, 65535]");
  Image img(static_cast<int>(w), static_cast<int>(h));
  const std::size_t n = img.size();
  if (binary) {
    std::size_t pos = hr.pos + 1;  // single whitespace byte after maxval
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    if (buf.size() < pos + n * bytes) throw ValidationError("'" + path + "': truncated PGM pixel data");
    for (std::size_t i = 0; i < n; ++i) {
      unsigned v = buf[pos];
      if (bytes == 2) v = (v << 8) | buf[pos + 1];
      pos += bytes;
      img.px[i] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      hr.skip();
      if (hr.pos >= buf.size()) throw ValidationError("'" + path + "': truncated PGM pixel data");
      const long v = hr.number();
      if (v > maxval) throw ValidationError("'" + path + "': PGM sample exceeds maxval");
      img.px[i] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  }
  return img;
}

void write_pgm(const Image& img, const std::string& path, int maxval, bool binary) {
  if (maxval < 1 || maxval > 65535) throw ValidationError("PGM maxval must lie in [1, 65535]");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << (binary ? "P5" : "P2") << "\n" << img.width << " " << img.height << "\n" << maxval << "\n";
  auto quantize = [maxval](double v) {
    if (!std::isfinite(v)) v = 0.0;
    return static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
  };
  if (binary) {
    std::vector<unsigned char> data;
    data.reserve(img.size() * (maxval > 255 ? 2 : 1));
    for (double v : img.px) {
      const unsigned q = quantize(v);
      if (maxval > 255) data.push_back(static_cast<unsigned char>(q >> 8));
      data.push_back(static_cast<unsigned char>(q & 0xff));
    }
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  } else {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) out << (x ? " " : "") << quantize(img.at(x, y));
      out << "\n";
    }
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Image read_raw_f32(const std::string& path) {
  const auto buf = slurp(path);
  if (buf.size() < 8) throw ValidationError("'" + path + "': raw float32 file is too short");
  const std::uint32_t w = get_u32(buf.data());
  const std::uint32_t h = get_u32(buf.data() + 4);
  if (w < 1 || h < 1 || w > (1u << 16) || h > (1u << 16)) throw ValidationError("'" + path + "': unsupported raw dimensions");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (buf.size() != 8 + 4 * n) throw ValidationError("'" + path + "': raw float32 size does not match its header");
  Image img(static_cast<int>(w), static_cast<int>(h));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = get_u32(buf.data() + 8 + 4 * i);
    float f;
    std::memcpy(&f, &bits, 4);
    img.px[i] = f;
  }
  return img;
}

void write_raw_f32(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  put_u32(out, static_cast<std::uint32_t>(img.width));
  put_u32(out, static_cast<std::uint32_t>(img.height));
  for (double v : img.px) {
    const float f = static_cast<float>(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

Image read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) return read_pgm(path);
  return read_raw_f32(path);
}

}  // namespace vmf
