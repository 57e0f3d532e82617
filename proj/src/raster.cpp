#include "boundarylab/raster.hpp"

#include <cmath>
#include <stdexcept>

#include "boundarylab/parallel.hpp"

namespace boundarylab {

void validate_extent(const Extent& e) {
    if (!(e.x0 >= 0.0 && e.y0 >= 0.0 && e.x1 <= 1.0 && e.y1 <= 1.0))
        throw std::invalid_argument("extent must lie inside the unit square");
    if (!(e.x0 < e.x1 && e.y0 < e.y1))
        throw std::invalid_argument("extent must have positive width and height");
}

namespace {

// Centre of cell (row, col); row 0 sits at the top of the extent.
Point cell_center(const Extent& e, int width, int height, int row, int col) {
    double x = e.x0 + (col + 0.5) * e.width() / width;
    double y = e.y1 - (row + 0.5) * e.height() / height;
    return Point({x, y});
}

}  // namespace

LabelRaster rasterize(const DecisionFunction& f, const Extent& extent, int width,
                      int height, int threads) {
    validate_extent(extent);
    if (width < 2 || height < 2)
        throw std::invalid_argument("raster dimensions must be >= 2");
    if (f.dim() != 2) throw std::invalid_argument("rasterization needs a 2-D classifier");
    LabelRaster out;
    out.width = width;
    out.height = height;
    out.extent = extent;
    out.label_count = f.label_count();
    out.labels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    parallel_for(static_cast<std::int64_t>(width) * height, threads, [&](std::int64_t i) {
        int row = static_cast<int>(i / width);
        int col = static_cast<int>(i % width);
        out.labels[static_cast<std::size_t>(i)] =
            f.evaluate(cell_center(extent, width, height, row, col)).index;
    });
    return out;
}

SoftRaster soft_rasterize(const FilterBank& bank, const Extent& extent,
                          int width, int height, double temperature, int threads) {
    validate_extent(extent);
    if (width < 1 || height < 1)
        throw std::invalid_argument("raster dimensions must be >= 1");
    if (bank.dim() != 2) throw std::invalid_argument("rasterization needs a 2-D bank");
    SoftmaxBank soft(bank, temperature);

    SoftRaster out;
    out.width = width;
    out.height = height;
    out.extent = extent;
    out.label_count = bank.label_count();
    out.temperature = temperature;
    std::size_t cells = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    out.probabilities.assign(cells * static_cast<std::size_t>(out.label_count), 0.0);
    out.argmax.width = width;
    out.argmax.height = height;
    out.argmax.extent = extent;
    out.argmax.label_count = out.label_count;
    out.argmax.labels.assign(cells, 0);

    parallel_for(static_cast<std::int64_t>(cells), threads, [&](std::int64_t i) {
        int row = static_cast<int>(i / width);
        int col = static_cast<int>(i % width);
        std::vector<double> p =
            soft.evaluate(cell_center(extent, width, height, row, col));
        int best = 0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            out.probabilities[static_cast<std::size_t>(i) * p.size() + k] = p[k];
            if (p[k] > p[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
        }
        out.argmax.labels[static_cast<std::size_t>(i)] = best;
    });
    return out;
}

double label_agreement(const LabelRaster& a, const LabelRaster& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("raster size mismatch");
    std::int64_t same = 0;
    for (std::size_t i = 0; i < a.labels.size(); ++i)
        if (a.labels[i] == b.labels[i]) ++same;
    return static_cast<double>(same) / static_cast<double>(a.labels.size());
}

InstabilityMap unstable_cells(const LabelRaster& raster, int neighborhood) {
    if (neighborhood != 4 && neighborhood != 8)
        throw std::invalid_argument("neighborhood must be 4 or 8");
    if (raster.width < 1 || raster.height < 1)
        throw std::invalid_argument("empty raster");

    InstabilityMap out;
    out.raster = raster;
    out.width = raster.width;
    out.height = raster.height;
    out.neighborhood = neighborhood;
    out.unstable.assign(raster.labels.size(), 0);

    static const int dr4[] = {-1, 1, 0, 0};
    static const int dc4[] = {0, 0, -1, 1};
    static const int dr8[] = {-1, -1, -1, 0, 0, 1, 1, 1};
    static const int dc8[] = {-1, 0, 1, -1, 1, -1, 0, 1};
    const int* dr = neighborhood == 4 ? dr4 : dr8;
    const int* dc = neighborhood == 4 ? dc4 : dc8;

    for (int r = 0; r < raster.height; ++r) {
        for (int c = 0; c < raster.width; ++c) {
            int own = raster.at(r, c);
            for (int k = 0; k < neighborhood; ++k) {
                int nr = r + dr[k];
                int nc = c + dc[k];
                if (nr < 0 || nr >= raster.height || nc < 0 || nc >= raster.width) continue;
                if (raster.at(nr, nc) != own) {
                    out.unstable[static_cast<std::size_t>(r) * raster.width + c] = 1;
                    ++out.unstable_count;
                    break;
                }
            }
        }
    }
    out.unstable_fraction = static_cast<double>(out.unstable_count) /
                            static_cast<double>(raster.labels.size());
    return out;
}

BoxCountResult refine_and_count(const DecisionFunction& f, const Extent& extent,
                                const std::vector<int>& depths, int threads) {
    validate_extent(extent);
    if (f.dim() != 2) throw std::invalid_argument("box counting needs a 2-D classifier");
    if (depths.empty()) throw std::invalid_argument("need at least one depth");
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] < 0 || depths[i] > 14)
            throw std::invalid_argument("depth outside [0, 14]");
        if (i > 0 && depths[i] <= depths[i - 1])
            throw std::invalid_argument("depths must be strictly increasing");
    }

    BoxCountResult out;
    for (int depth : depths) {
        std::int64_t side = std::int64_t{1} << depth;
        std::int64_t corners = side + 1;

        // Corner labels on the (side+1)^2 lattice; corner (i, j) sits at
        // (x0 + j*w/side, y0 + i*h/side). Cells share corner evaluations.
        std::vector<int> corner_labels(
            static_cast<std::size_t>(corners) * static_cast<std::size_t>(corners));
        parallel_for(corners * corners, threads, [&](std::int64_t idx) {
            std::int64_t i = idx / corners;
            std::int64_t j = idx % corners;
            double x = extent.x0 + static_cast<double>(j) * extent.width() /
                                       static_cast<double>(side);
            double y = extent.y0 + static_cast<double>(i) * extent.height() /
                                       static_cast<double>(side);
            corner_labels[static_cast<std::size_t>(idx)] =
                f.evaluate(Point({x, y})).index;
        });

        std::int64_t boundary = 0;
        for (std::int64_t i = 0; i < side; ++i) {
            for (std::int64_t j = 0; j < side; ++j) {
                int a = corner_labels[static_cast<std::size_t>(i * corners + j)];
                int b = corner_labels[static_cast<std::size_t>(i * corners + j + 1)];
                int c = corner_labels[static_cast<std::size_t>((i + 1) * corners + j)];
                int d = corner_labels[static_cast<std::size_t>((i + 1) * corners + j + 1)];
                if (a != b || a != c || a != d) ++boundary;
            }
        }

        BoxCountLevel level;
        level.depth = depth;
        level.cells_per_side = side;
        level.boundary_cells = boundary;
        level.log_inv_s = static_cast<double>(depth) * std::log(2.0);
        level.log_n = boundary > 0 ? std::log(static_cast<double>(boundary)) : 0.0;
        out.levels.push_back(level);
    }

    // Slope over the last three depths; undefined if the window has an
    // empty level (log of zero) or there are not at least two levels.
    std::size_t window = out.levels.size() < 3 ? out.levels.size() : 3;
    if (window >= 2) {
        bool usable = true;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = out.levels.size() - window; i < out.levels.size(); ++i) {
            const auto& l = out.levels[i];
            if (l.boundary_cells <= 0) usable = false;
            sx += l.log_inv_s;
            sy += l.log_n;
            sxx += l.log_inv_s * l.log_inv_s;
            sxy += l.log_inv_s * l.log_n;
        }
        if (usable) {
            double n = static_cast<double>(window);
            out.dimension_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            out.dimension_defined = true;
        }
    }
    return out;
}

std::vector<std::int64_t> label_histogram(const LabelRaster& raster) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(raster.label_count), 0);
    for (int v : raster.labels) {
        if (v < 0 || v >= raster.label_count)
            throw std::invalid_argument("label value outside raster alphabet");
        ++counts[static_cast<std::size_t>(v)];
    }
    return counts;
}

}  // namespace boundarylab
