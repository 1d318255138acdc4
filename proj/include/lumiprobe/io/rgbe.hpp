#pragma once

#include <array>
#include <string>

#include "lumiprobe/core/image.hpp"

namespace lumiprobe {

// Shared-exponent pixel encoding of the Radiance picture format.
std::array<unsigned char, 4> rgbe_encode(double r, double g, double b);
void rgbe_decode(const std::array<unsigned char, 4>& rgbe, double& r, double& g, double& b);

// Radiance ".hdr" files, "-Y H +X W" raster order. The writer emits new-style
// RLE scanlines when the width allows it; the reader accepts both RLE and
// flat scanlines. Parse failures report the byte offset.
Image read_hdr(const std::string& path);
void write_hdr(const std::string& path, const Image& img, bool rle = true);

}  // namespace lumiprobe
