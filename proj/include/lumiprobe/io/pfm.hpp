#pragma once

#include <string>

#include "lumiprobe/core/image.hpp"

namespace lumiprobe {

// Portable FloatMap: "PF" (3-channel) / "Pf" (1-channel), 32-bit floats,
// negative scale marks little-endian, rows stored bottom-up.
Image read_pfm(const std::string& path);
void write_pfm(const std::string& path, const Image& img);

}  // namespace lumiprobe
