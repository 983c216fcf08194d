#pragma once

#include <string>

#include "texseg/image.hpp"

namespace texseg {

// Loads an 8-bit grayscale PGM (P2 or P5) or a PNG (color is converted by
// luminance); intensities map to [0,1].
Image load_image(const std::string& path);

Image load_pgm(const std::string& path);
Image load_png_gray(const std::string& path);

// 8-bit binary PGM; values clamped to [0,1] then quantized.
void save_pgm(const Image& x, const std::string& path);

// Raw little-endian doubles, row-major, for lossless test round-trips.
void save_raw(const Image& x, const std::string& path);

}  // namespace texseg
