#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pwa/map.hpp"
#include "pwa/vec.hpp"

namespace pwa::explorer {

/// Shortest decimal that round-trips a double (17 significant digits).
std::string format_double(double v);

/// Write an orbit trace as "step,x,y" rows. Throws std::runtime_error on I/O
/// failure. Output is byte-deterministic for identical traces.
void write_orbit_csv(const std::string& path, const OrbitTrace& trace);

/// Write a generic CSV given a header line and preformatted rows.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

/// Hit-count grid over the unit square with a gamma display exponent for the
/// density-to-gray mapping.
struct RasterAccumulator {
    int width = 2000;
    int height = 2000;
    double gamma = 0.5;
    std::vector<std::uint64_t> counts;

    RasterAccumulator(int w, int h, double gamma_ = 0.5)
        : width(w), height(h), gamma(gamma_), counts(static_cast<std::size_t>(w) * h, 0) {}

    void add(Vec2 p);
    std::uint64_t total() const;
};

/// Binary P5 grayscale raster; dense cells map to black on white background.
void write_ppm(const std::string& path, const RasterAccumulator& raster);

}  // namespace pwa::explorer
