#ifndef BOUNDARYLAB_RASTER_HPP
#define BOUNDARYLAB_RASTER_HPP

#include <cstdint>
#include <vector>

#include "boundarylab/core.hpp"
#include "boundarylab/filterbank.hpp"

namespace boundarylab {

// Axis-aligned window inside the unit square.
struct Extent {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

// Throws unless the extent is nonempty and inside [0,1]^2.
void validate_extent(const Extent& e);

// Label indices on a pixel grid. Row 0 is the top of the extent (largest y),
// matching image conventions, so a raster written to disk is upright.
struct LabelRaster {
    int width = 0;
    int height = 0;
    Extent extent;
    int label_count = 1;
    std::vector<int> labels;  // row-major, size width*height

    int at(int row, int col) const {
        return labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)];
    }
    int& at(int row, int col) {
        return labels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(col)];
    }
};

// Per-class probability planes plus the hard argmax plane derived from them.
struct SoftRaster {
    int width = 0;
    int height = 0;
    Extent extent;
    int label_count = 0;
    double temperature = 1.0;
    std::vector<double> probabilities;  // size width*height*label_count, class-minor
    LabelRaster argmax;

    double prob(int row, int col, int k) const {
        return probabilities[(static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                              static_cast<std::size_t>(col)) *
                                 static_cast<std::size_t>(label_count) +
                             static_cast<std::size_t>(k)];
    }
};

// Marks cells that disagree with at least one neighbour.
struct InstabilityMap {
    LabelRaster raster;  // the map this was computed from
    int width = 0;
    int height = 0;
    int neighborhood = 8;  // 4 or 8
    std::vector<std::uint8_t> unstable;  // row-major, 1 = unstable
    std::int64_t unstable_count = 0;
    double unstable_fraction = 0.0;
};

// One grid refinement level: 2^depth cells per side over the extent; a cell
// is a boundary cell when its four corners do not all share one label.
struct BoxCountLevel {
    int depth = 0;
    std::int64_t cells_per_side = 0;
    std::int64_t boundary_cells = 0;
    double log_inv_s = 0.0;  // log(1/s), s = cell side in extent units
    double log_n = 0.0;      // log(boundary_cells)
};

struct BoxCountResult {
    std::vector<BoxCountLevel> levels;
    // Least-squares slope of log N on log(1/s) over the last three depths
    // (earlier depths are pre-asymptotic). Undefined when a window level has
    // no boundary cells or fewer than two levels exist.
    double dimension_estimate = 0.0;
    bool dimension_defined = false;
};

// Evaluates f at every cell centre. f must be 2-D and width, height >= 2.
// threads=0 means auto.
LabelRaster rasterize(const DecisionFunction& f, const Extent& extent, int width,
                      int height, int threads = 1);

// Softmax of temperature-scaled bank scores at every cell centre (single
// cells allowed). Ties in the argmax plane resolve to the lowest index.
SoftRaster soft_rasterize(const FilterBank& bank, const Extent& extent,
                          int width, int height, double temperature,
                          int threads = 1);

// Fraction of cells agreeing between two equally sized label rasters.
double label_agreement(const LabelRaster& a, const LabelRaster& b);

InstabilityMap unstable_cells(const LabelRaster& raster, int neighborhood = 8);

// Corner-sampled boundary-cell counts at the given depths plus the
// box-counting dimension estimate (slope of log N against log 1/s).
BoxCountResult refine_and_count(const DecisionFunction& f, const Extent& extent,
                                const std::vector<int>& depths, int threads = 1);

// Per-label cell counts of a raster; length equals label_count.
std::vector<std::int64_t> label_histogram(const LabelRaster& raster);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_RASTER_HPP
