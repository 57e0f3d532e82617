#ifndef BOUNDARYLAB_IMAGE_IO_HPP
#define BOUNDARYLAB_IMAGE_IO_HPP

#include <array>
#include <stdexcept>
#include <string>

#include "boundarylab/raster.hpp"

namespace boundarylab {

// File-system problems (unwritable path, failed stream) as opposed to bad
// arguments; the CLI maps this to its I/O exit code.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Formats a double with up to 12 significant digits, locale-independent.
// All text outputs route through this so files are byte-stable.
std::string format_double(double v);

// Fixed palette for color label maps; labels beyond 8 wrap around.
extern const std::array<std::array<int, 3>, 8> kLabelPalette;

// Plain-text PGM ("P2"), one gray level per label, maxval = label_count - 1.
void write_pgm(const LabelRaster& raster, const std::string& path);

// Plain-text PPM ("P3"), maxval 255, palette colors per label.
void write_ppm(const LabelRaster& raster, const std::string& path);

// Plain-text PGM with unstable cells at 255 and stable cells at 0.
void write_instability_pgm(const InstabilityMap& map, const std::string& path);

// CSV with header depth,cells_per_side,boundary_cells,log_inv_s,log_N.
void write_boxcount_csv(const BoxCountResult& result, const std::string& path);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_IMAGE_IO_HPP
