#include "pwa/explorer/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pwa::explorer {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path, std::ios_base::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

}  // namespace

void write_orbit_csv(const std::string& path, const OrbitTrace& trace) {
    auto os = open_out(path, std::ios_base::out);
    os << "step,x,y\n";
    for (std::size_t k = 0; k < trace.points.size(); ++k) {
        os << k << ',' << format_double(trace.points[k].x) << ','
           << format_double(trace.points[k].y) << '\n';
    }
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    auto os = open_out(path, std::ios_base::out);
    os << header << '\n';
    for (const auto& row : rows) os << row << '\n';
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

void RasterAccumulator::add(Vec2 p) {
    const int ix = std::clamp(static_cast<int>(p.x * width), 0, width - 1);
    // Row 0 is the top of the image (y = 1).
    const int iy = std::clamp(static_cast<int>((1.0 - p.y) * height), 0, height - 1);
    ++counts[static_cast<std::size_t>(iy) * width + ix];
}

std::uint64_t RasterAccumulator::total() const {
    std::uint64_t sum = 0;
    for (const auto c : counts) sum += c;
    return sum;
}

void write_ppm(const std::string& path, const RasterAccumulator& raster) {
    auto os = open_out(path, std::ios_base::out | std::ios_base::binary);
    os << "P5\n" << raster.width << ' ' << raster.height << "\n255\n";
    std::uint64_t cmax = 0;
    for (const auto c : raster.counts) cmax = std::max(cmax, c);
    // Log-density shading: hit counts in an orbit ensemble span several
    // orders of magnitude, so a linear ramp washes out the thin annuli.
    const double denom = cmax > 0 ? std::log1p(static_cast<double>(cmax)) : 1.0;
    std::vector<unsigned char> row(raster.width);
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            const std::uint64_t c = raster.counts[static_cast<std::size_t>(y) * raster.width + x];
            double shade = 1.0;
            if (c > 0) {
                const double density = std::log1p(static_cast<double>(c)) / denom;
                shade = 1.0 - std::pow(density, raster.gamma);
            }
            row[x] = static_cast<unsigned char>(std::lround(255.0 * shade));
        }
        os.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace pwa::explorer
