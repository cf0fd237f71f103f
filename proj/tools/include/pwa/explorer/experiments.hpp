#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwa/circles.hpp"
#include "pwa/vec.hpp"

namespace pwa::explorer {

enum class OutputFormat { csv, ppm };

/// One batch orbit run: iterate every seed and emit one CSV per seed and/or
/// one accumulated raster per run. Fully deterministic: randomness enters
/// only through explicit "random:<rng-seed>" seed tokens.
struct ExperimentSpec {
    double theta = 0.0;
    std::vector<Vec2> seeds;
    long iterations = 100000;
    std::string out_prefix = "orbit";
    bool emit_csv = true;
    bool emit_ppm = false;
    int raster_width = 2000;
    int raster_height = 2000;
    double gamma = 0.5;

    /// Throws std::invalid_argument when the spec is unusable (iterations
    /// < 1, seed outside the open square, raster smaller than 16 pixels).
    void validate() const;
};

/// Seed token: "x,y" with decimal coordinates, or "random:<rng-seed>" for a
/// reproducible pseudo-random interior point.
Vec2 parse_seed(const std::string& token);

struct OrbitSummary {
    std::vector<std::string> files;
    std::vector<double> min_radius;  // per seed, over all iterates
    std::vector<double> max_radius;
    std::uint64_t raster_total = 0;  // hits accumulated (seeds x iterations)
};

OrbitSummary run_orbit(const ExperimentSpec& spec);

struct CircleRow {
    int K = 0;
    int N = 0;
    double theta = 0.0;
    int vertices = 0;
    double rho = 0.0;
    double closure_residual = 0.0;
    double verify_residual = 0.0;
    bool certified = false;
};

/// Solve theta_K, emit Gamma_K^N vertex CSVs for N = 0..n_max plus a
/// certification summary CSV. Returns the summary rows.
std::vector<CircleRow> run_circles(int K, int n_max, const std::string& out_prefix);

struct ScanRow {
    double theta = 0.0;
    Vec2 seed;
    double rho = 0.0;
    double min_radius = 0.0;
    double max_radius = 0.0;
    bool within_bound = false;  // rho <= 1/4 - theta/pi + 1e-4
    std::string error;          // per-row failure, scan continues
};

/// Rotation-number survey: seeds_per_theta reproducible random interior
/// seeds per angle, iterated `iterations` times each.
std::vector<ScanRow> run_scan(const std::vector<double>& thetas, int seeds_per_theta,
                              long iterations);

void write_scan_csv(const std::string& path, const std::vector<ScanRow>& rows);

/// theta_K table rows for the golden solver output.
struct ThetaKRow {
    int K = 0;
    double theta = 0.0, t = 0.0, s = 0.0, lambda = 0.0;
    double residual = 0.0;  // |B^K(P_4) - P_1|
};

std::vector<ThetaKRow> solve_theta_k_table(int k_min, int k_max);
void write_theta_k_csv(const std::string& path, const std::vector<ThetaKRow>& rows);
std::vector<ThetaKRow> read_theta_k_csv(const std::string& path);

}  // namespace pwa::explorer
