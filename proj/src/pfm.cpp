#include "lumiprobe/io/pfm.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "lumiprobe/core/errors.hpp"

namespace lumiprobe {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string next_token(std::FILE* f, const std::string& path) {
  std::string tok;
  int ch;
  while ((ch = std::fgetc(f)) != EOF && std::isspace(ch)) {
  }
  if (ch == EOF) throw ParseError(path + ": truncated PFM header");
  do {
    tok.push_back(static_cast<char>(ch));
  } while ((ch = std::fgetc(f)) != EOF && !std::isspace(ch));
  return tok;
}

}  // namespace

Image read_pfm(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw ParseError(path + ": cannot open");
  const std::string magic = next_token(f.get(), path);
  int channels;
  if (magic == "PF")
    channels = 3;
  else if (magic == "Pf")
    channels = 1;
  else
    throw ParseError(path + ": not a PFM file");
  const int w = std::stoi(next_token(f.get(), path));
  const int h = std::stoi(next_token(f.get(), path));
  const double scale = std::stod(next_token(f.get(), path));
  if (w < 1 || h < 1) throw ParseError(path + ": bad PFM dimensions");
  const bool little_endian = scale < 0.0;
  if (!little_endian) throw ParseError(path + ": big-endian PFM unsupported");

  Image img(w, h, channels);
  std::vector<float> row(static_cast<std::size_t>(w) * channels);
  for (int r = h - 1; r >= 0; --r) {  // bottom-up
    if (std::fread(row.data(), sizeof(float), row.size(), f.get()) != row.size())
      throw ParseError(path + ": truncated PFM data at row " + std::to_string(r));
    for (int c = 0; c < w; ++c)
      for (int ch = 0; ch < channels; ++ch)
        img.at(ch, r, c) = static_cast<double>(row[static_cast<std::size_t>(c) * channels + ch]);
  }
  return img;
}

void write_pfm(const std::string& path, const Image& img) {
  const int channels = img.channels();
  if (channels != 1 && channels != 3)
    throw std::domain_error("PFM supports 1 or 3 channels");
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw ParseError(path + ": cannot open for writing");
  std::fprintf(f.get(), "%s\n%d %d\n-1.0\n", channels == 3 ? "PF" : "Pf", img.width(),
               img.height());
  std::vector<float> row(static_cast<std::size_t>(img.width()) * channels);
  for (int r = img.height() - 1; r >= 0; --r) {
    for (int c = 0; c < img.width(); ++c)
      for (int ch = 0; ch < channels; ++ch)
        row[static_cast<std::size_t>(c) * channels + ch] = static_cast<float>(img.at(ch, r, c));
    if (std::fwrite(row.data(), sizeof(float), row.size(), f.get()) != row.size())
      throw ParseError(path + ": short write");
  }
}

}  // namespace lumiprobe
