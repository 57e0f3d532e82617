#include "boundarylab/measure.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "boundarylab/image_io.hpp"

namespace boundarylab {

double log_ball_volume(int k, double epsilon) {
    if (k < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("radius must be > 0");
    double kd = static_cast<double>(k);
    // ln(pi) to full double precision
    constexpr double kLnPi = 1.1447298858494001741434273513531;
    return 0.5 * kd * kLnPi - std::lgamma(0.5 * kd + 1.0) + kd * std::log(epsilon);
}

double orbit_volume_bound(int k, double epsilon, const SymmetryClass& sym_class) {
    return sym_class.log_count(static_cast<double>(k)) + log_ball_volume(k, epsilon);
}

std::vector<BoundCurvePoint> bound_curve(const std::vector<int>& k_range,
                                         double epsilon,
                                         const SymmetryClass& sym_class,
                                         bool preimage_adjusted) {
    if (k_range.empty()) throw std::invalid_argument("empty dimension range");
    for (std::size_t i = 1; i < k_range.size(); ++i) {
        if (k_range[i] <= k_range[i - 1])
            throw std::invalid_argument("dimensions must be strictly increasing");
    }
    std::vector<BoundCurvePoint> out;
    out.reserve(k_range.size());
    for (int k : k_range) {
        BoundCurvePoint p;
        p.k = k;
        p.epsilon = epsilon;
        p.log_sym_count = sym_class.log_count(static_cast<double>(k));
        if (preimage_adjusted) p.log_sym_count += std::log(static_cast<double>(k));
        p.log_ball_volume = log_ball_volume(k, epsilon);
        p.log_orbit_bound = p.log_sym_count + p.log_ball_volume;
        p.log_orbit_bound_capped = p.log_orbit_bound < 0.0 ? p.log_orbit_bound : 0.0;
        out.push_back(p);
    }
    return out;
}

double feature_preimage_factor(int k, int r) {
    if (r < 1) throw std::invalid_argument("feature dimension must be >= 1");
    if (k < r) throw std::invalid_argument("feature dimension exceeds input dimension");
    return static_cast<double>(k) / static_cast<double>(r);
}

std::vector<MitigationRow> resolution_mitigation_curve(const std::vector<int>& m_range,
                                                       int channels, double epsilon) {
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("channels must be 1 or 3");
    if (m_range.empty()) throw std::invalid_argument("empty resolution range");
    for (std::size_t i = 1; i < m_range.size(); ++i) {
        if (m_range[i] <= m_range[i - 1])
            throw std::invalid_argument("resolutions must be strictly increasing");
    }

    SymmetryClass image = SymmetryClass::image_poly();
    std::vector<MitigationRow> out;
    out.reserve(m_range.size());
    for (int m : m_range) {
        if (m < 1) throw std::invalid_argument("resolution must be >= 1");
        long long k = static_cast<long long>(channels) * m * m;
        if (k > 100000000ll) throw std::invalid_argument("resolution too large");
        MitigationRow row;
        row.m = m;
        row.k = k;
        row.bound = bound_curve({static_cast<int>(k)}, epsilon, image).front();
        out.push_back(row);
    }
    return out;
}

namespace {

void write_point(std::ofstream& out, const BoundCurvePoint& p) {
    out << p.k << ',' << format_double(p.epsilon) << ','
        << format_double(p.log_sym_count) << ',' << format_double(p.log_ball_volume)
        << ',' << format_double(p.log_orbit_bound) << ','
        << format_double(p.log_orbit_bound_capped) << '\n';
}

}  // namespace

void write_bound_curve_csv(const std::vector<BoundCurvePoint>& curve,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "k,epsilon,log_sym_count,log_ball_volume,log_orbit_bound,log_orbit_bound_capped\n";
    for (const auto& p : curve) write_point(out, p);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_mitigation_csv(const std::vector<MitigationRow>& rows,
                          const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "m,k,epsilon,log_sym_count,log_ball_volume,log_orbit_bound,log_orbit_bound_capped\n";
    for (const auto& r : rows) {
        out << r.m << ',';
        write_point(out, r.bound);
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace boundarylab
