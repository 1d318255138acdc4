#include "lumiprobe/io/rgbe.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "lumiprobe/core/errors.hpp"

namespace lumiprobe {

std::array<unsigned char, 4> rgbe_encode(double r, double g, double b) {
  const double m = std::max(r, std::max(g, b));
  if (m < 1e-38) return {0, 0, 0, 0};
  int e;
  const double mantissa = std::frexp(m, &e);
  const double scale = mantissa * 256.0 / m;
  auto quant = [&](double x) {
    const int q = static_cast<int>(x * scale + 0.5);
    return static_cast<unsigned char>(std::min(q, 255));
  };
  return {quant(r), quant(g), quant(b), static_cast<unsigned char>(e + 128)};
}

void rgbe_decode(const std::array<unsigned char, 4>& rgbe, double& r, double& g, double& b) {
  if (rgbe[3] == 0) {
    r = g = b = 0.0;
    return;
  }
  const double f = std::ldexp(1.0, static_cast<int>(rgbe[3]) - (128 + 8));
  r = rgbe[0] * f;
  g = rgbe[1] * f;
  b = rgbe[2] * f;
}

namespace {

[[noreturn]] void fail_at(const std::string& path, std::istream& in, const std::string& msg) {
  const auto off = in.tellg();
  throw ParseError(path + ": " + msg + " (byte offset " +
                   std::to_string(off < 0 ? -1 : static_cast<long long>(off)) + ")");
}

void read_flat_scanline(std::istream& in, const std::string& path,
                        std::vector<unsigned char>& scan, int width) {
  in.read(reinterpret_cast<char*>(scan.data()), static_cast<std::streamsize>(4) * width);
  if (!in) fail_at(path, in, "truncated scanline data");
}

}  // namespace

Image read_hdr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line.rfind("#?", 0) != 0)
    fail_at(path, in, "missing #? signature");
  bool format_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) break;
    if (line.rfind("FORMAT=", 0) == 0) {
      if (line != "FORMAT=32-bit_rle_rgbe") fail_at(path, in, "unsupported FORMAT");
      format_seen = true;
    }
  }
  if (!format_seen) fail_at(path, in, "missing FORMAT line");
  if (!std::getline(in, line)) fail_at(path, in, "missing resolution line");
  int w = 0, h = 0;
  if (std::sscanf(line.c_str(), "-Y %d +X %d", &h, &w) != 2 || w < 1 || h < 1)
    fail_at(path, in, "unsupported resolution line '" + line + "'");

  Image img(w, h, 3);
  std::vector<unsigned char> scan(static_cast<std::size_t>(4) * w);
  for (int r = 0; r < h; ++r) {
    unsigned char head[4];
    in.read(reinterpret_cast<char*>(head), 4);
    if (!in) fail_at(path, in, "truncated scanline header");
    if (head[0] == 2 && head[1] == 2 && ((head[2] << 8) | head[3]) == w) {
      // New-style RLE: four independently run-length coded component streams.
      for (int comp = 0; comp < 4; ++comp) {
        int x = 0;
        while (x < w) {
          const int code = in.get();
          if (code == EOF) fail_at(path, in, "truncated RLE stream");
          if (code > 128) {
            const int count = code - 128;
            const int value = in.get();
            if (value == EOF || x + count > w) fail_at(path, in, "bad RLE run");
            for (int k = 0; k < count; ++k)
              scan[static_cast<std::size_t>(4) * (x + k) + comp] =
                  static_cast<unsigned char>(value);
            x += count;
          } else {
            if (code == 0 || x + code > w) fail_at(path, in, "bad RLE literal");
            for (int k = 0; k < code; ++k) {
              const int value = in.get();
              if (value == EOF) fail_at(path, in, "truncated RLE literal");
              scan[static_cast<std::size_t>(4) * (x + k) + comp] =
                  static_cast<unsigned char>(value);
            }
            x += code;
          }
        }
      }
    } else if (head[0] == 1 && head[1] == 1 && head[2] == 1) {
      fail_at(path, in, "old-style RLE is unsupported");
    } else {
      std::memcpy(scan.data(), head, 4);
      in.read(reinterpret_cast<char*>(scan.data() + 4), static_cast<std::streamsize>(4) * (w - 1));
      if (!in) fail_at(path, in, "truncated flat scanline");
    }
    for (int c = 0; c < w; ++c) {
      std::array<unsigned char, 4> px;
      std::memcpy(px.data(), &scan[static_cast<std::size_t>(4) * c], 4);
      double rr, gg, bb;
      rgbe_decode(px, rr, gg, bb);
      img.at(0, r, c) = rr;
      img.at(1, r, c) = gg;
      img.at(2, r, c) = bb;
    }
  }
  return img;
}

namespace {

void write_rle_component(std::ofstream& out, const std::vector<unsigned char>& data) {
  const std::size_t n = data.size();
  std::size_t i = 0;
  while (i < n) {
    // Length of the run starting at i.
    std::size_t run = 1;
    while (i + run < n && run < 127 && data[i + run] == data[i]) ++run;
    if (run >= 4) {
      out.put(static_cast<char>(128 + run));
      out.put(static_cast<char>(data[i]));
      i += run;
    } else {
      // Literal block up to the next worthwhile run.
      std::size_t j = i + run;
      while (j < n && j - i < 128) {
        std::size_t r2 = 1;
        while (j + r2 < n && r2 < 4 && data[j + r2] == data[j]) ++r2;
        if (r2 >= 4) break;
        j += r2;
      }
      const std::size_t count = std::min<std::size_t>(j - i, 128);
      out.put(static_cast<char>(count));
      out.write(reinterpret_cast<const char*>(&data[i]), static_cast<std::streamsize>(count));
      i += count;
    }
  }
}

}  // namespace

void write_hdr(const std::string& path, const Image& img, bool rle) {
  if (img.channels() != 3) throw std::domain_error("HDR output requires 3 channels");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open for writing");
  const int w = img.width(), h = img.height();
  out << "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " << h << " +X " << w << "\n";
  const bool use_rle = rle && w >= 8 && w < 32768;
  std::vector<unsigned char> comp[4];
  for (auto& c : comp) c.resize(static_cast<std::size_t>(w));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const auto px = rgbe_encode(img.at(0, r, c), img.at(1, r, c), img.at(2, r, c));
      if (use_rle) {
        for (int k = 0; k < 4; ++k) comp[k][static_cast<std::size_t>(c)] = px[k];
      } else {
        out.write(reinterpret_cast<const char*>(px.data()), 4);
      }
    }
    if (use_rle) {
      const unsigned char head[4] = {2, 2, static_cast<unsigned char>(w >> 8),
                                     static_cast<unsigned char>(w & 0xff)};
      out.write(reinterpret_cast<const char*>(head), 4);
      for (int k = 0; k < 4; ++k) write_rle_component(out, comp[k]);
    }
  }
  if (!out) throw ParseError(path + ": short write");
}

}  // namespace lumiprobe
