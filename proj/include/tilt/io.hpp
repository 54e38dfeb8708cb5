#pragma once

#include <string>

#include "tilt/grid.hpp"
#include "tilt/projection.hpp"

namespace tilt {

// 8-bit binary PGM (P5). Binary grids are written as 0/255.
void write_pgm(const std::string& path, const BinaryGrid& g);
// Linear map of [lo, hi] to 0..255; lo == hi uses the data range.
void write_pgm(const std::string& path, const Image& img, double lo = 0, double hi = 0);
// Values scaled to [0, 1] by the file's maxval.
Image read_pgm(const std::string& path);

// Greyscale PFM ("Pf"), little-endian, rows stored bottom to top.
void write_pfm(const std::string& path, const Image& img);
Image read_pfm(const std::string& path);

// Raw little-endian float32, view-major, plus JSON sidecar at path + ".json".
void write_sinogram(const std::string& path, const Sinogram& s);
Sinogram read_sinogram(const std::string& path);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace tilt
