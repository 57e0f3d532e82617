#include "boundarylab/image_io.hpp"

#include <cstdio>
#include <fstream>

namespace boundarylab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const std::array<std::array<int, 3>, 8> kLabelPalette = {{
    {{230, 25, 75}},    // red
    {{60, 180, 75}},    // green
    {{0, 130, 200}},    // blue
    {{255, 225, 25}},   // yellow
    {{145, 30, 180}},   // purple
    {{70, 240, 240}},   // cyan
    {{245, 130, 48}},   // orange
    {{240, 50, 230}},   // magenta
}};

namespace {

std::ofstream open_text(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void write_pgm(const LabelRaster& raster, const std::string& path) {
    if (raster.label_count < 1 || raster.label_count > 65536)
        throw std::invalid_argument("label count unsupported by PGM");
    std::ofstream out = open_text(path);
    int maxval = raster.label_count > 1 ? raster.label_count - 1 : 1;
    out << "P2\n" << raster.width << ' ' << raster.height << '\n' << maxval << '\n';
    for (int r = 0; r < raster.height; ++r) {
        for (int c = 0; c < raster.width; ++c) {
            out << raster.at(r, c);
            out << (c + 1 == raster.width ? '\n' : ' ');
        }
    }
    finish(out, path);
}

void write_ppm(const LabelRaster& raster, const std::string& path) {
    std::ofstream out = open_text(path);
    out << "P3\n" << raster.width << ' ' << raster.height << '\n' << 255 << '\n';
    for (int r = 0; r < raster.height; ++r) {
        for (int c = 0; c < raster.width; ++c) {
            const auto& rgb = kLabelPalette[static_cast<std::size_t>(raster.at(r, c)) %
                                            kLabelPalette.size()];
            out << rgb[0] << ' ' << rgb[1] << ' ' << rgb[2];
            out << (c + 1 == raster.width ? '\n' : ' ');
        }
    }
    finish(out, path);
}

void write_instability_pgm(const InstabilityMap& map, const std::string& path) {
    std::ofstream out = open_text(path);
    out << "P2\n" << map.width << ' ' << map.height << '\n' << 255 << '\n';
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            out << (map.unstable[static_cast<std::size_t>(r) * map.width + c] ? 255 : 0);
            out << (c + 1 == map.width ? '\n' : ' ');
        }
    }
    finish(out, path);
}

void write_boxcount_csv(const BoxCountResult& result, const std::string& path) {
    std::ofstream out = open_text(path);
    out << "depth,cells_per_side,boundary_cells,log_inv_s,log_N\n";
    for (const auto& l : result.levels) {
        out << l.depth << ',' << l.cells_per_side << ',' << l.boundary_cells << ','
            << format_double(l.log_inv_s) << ',' << format_double(l.log_n) << '\n';
    }
    finish(out, path);
}

}  // namespace boundarylab
