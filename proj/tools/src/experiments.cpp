#include "pwa/explorer/experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pwa/errors.hpp"
#include "pwa/explorer/io.hpp"
#include "pwa/map.hpp"
#include "pwa/parallel.hpp"

namespace pwa::explorer {

namespace {
constexpr Vec2 kCentre{0.5, 0.5};
}

void ExperimentSpec::validate() const {
    if (iterations < 1) throw std::invalid_argument("spec: iterations must be >= 1");
    if (seeds.empty()) throw std::invalid_argument("spec: at least one seed required");
    for (const Vec2& s : seeds) {
        if (!(s.x > 0.0 && s.x < 1.0 && s.y > 0.0 && s.y < 1.0)) {
            throw std::invalid_argument("spec: seeds must lie in the open unit square");
        }
    }
    if (raster_width < 16 || raster_height < 16) {
        throw std::invalid_argument("spec: raster dimensions must be at least 16");
    }
}

Vec2 parse_seed(const std::string& token) {
    if (token.rfind("random:", 0) == 0) {
        unsigned long long rng_seed = 0;
        try {
            rng_seed = std::stoull(token.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_seed: bad rng seed in \"" + token + "\"");
        }
        std::mt19937_64 rng(rng_seed);
        std::uniform_real_distribution<double> coord(0.01, 0.99);
        const double x = coord(rng);
        const double y = coord(rng);
        return {x, y};
    }
    const std::size_t comma = token.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("parse_seed: expected \"x,y\" or \"random:<seed>\", got \"" +
                                    token + "\"");
    }
    try {
        std::size_t ux = 0, uy = 0;
        const std::string xs = token.substr(0, comma), ys = token.substr(comma + 1);
        const double x = std::stod(xs, &ux);
        const double y = std::stod(ys, &uy);
        if (ux != xs.size() || uy != ys.size()) throw std::invalid_argument("trailing");
        return {x, y};
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_seed: bad coordinates in \"" + token + "\"");
    }
}

OrbitSummary run_orbit(const ExperimentSpec& spec) {
    spec.validate();
    const MapF map = build_map(params_from_theta(spec.theta));
    const int n_seeds = static_cast<int>(spec.seeds.size());

    std::vector<std::vector<Vec2>> traces(n_seeds);
    OrbitSummary summary;
    summary.min_radius.assign(n_seeds, 0.0);
    summary.max_radius.assign(n_seeds, 0.0);

    parallel_for(n_seeds, [&](int i) {
        std::vector<Vec2>& tr = traces[i];
        tr.reserve(spec.iterations + 1);
        Vec2 cur = spec.seeds[i];
        tr.push_back(cur);
        double rmin = dist(cur, kCentre), rmax = rmin;
        for (long k = 0; k < spec.iterations; ++k) {
            cur = apply_F(cur, map);
            tr.push_back(cur);
            const double r = dist(cur, kCentre);
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        summary.min_radius[i] = rmin;
        summary.max_radius[i] = rmax;
    });

    if (spec.emit_csv) {
        for (int i = 0; i < n_seeds; ++i) {
            const std::string path = spec.out_prefix + "_seed" + std::to_string(i) + ".csv";
            OrbitTrace tr;
            tr.points = traces[i];
            write_orbit_csv(path, tr);
            summary.files.push_back(path);
        }
    }
    if (spec.emit_ppm) {
        RasterAccumulator raster(spec.raster_width, spec.raster_height, spec.gamma);
        // Iterates only, so that total hits = seeds x iterations.
        for (int i = 0; i < n_seeds; ++i) {
            for (std::size_t k = 1; k < traces[i].size(); ++k) raster.add(traces[i][k]);
        }
        summary.raster_total = raster.total();
        const std::string path = spec.out_prefix + ".ppm";
        write_ppm(path, raster);
        summary.files.push_back(path);
    }
    return summary;
}

std::vector<CircleRow> run_circles(int K, int n_max, const std::string& out_prefix) {
    const Params p = solve_theta_K(K);
    const MapF map = build_map(p);
    std::vector<CircleRow> rows;
    std::vector<std::string> summary_rows;

    for (int N = 0; N <= n_max; ++N) {
        CircleRow row;
        row.K = K;
        row.N = N;
        row.theta = p.theta;
        const PolyCircle g = build_gamma(p, K, N);
        row.vertices = static_cast<int>(g.vertices.size());
        row.rho = g.rho;

        Vec2 cur = g.vertices.front();
        for (int k = 0; k < 4 * (K + N); ++k) cur = apply_F(cur, map);
        row.closure_residual = dist(cur, g.vertices.front());

        const CircleReport rep = verify_invariant_circle(g, map, 500, 1e-8);
        row.verify_residual = rep.max_residual;
        row.certified = rep.passed && row.closure_residual < 1e-8;

        std::vector<std::string> vert_rows;
        vert_rows.reserve(g.vertices.size());
        for (std::size_t i = 0; i < g.vertices.size(); ++i) {
            vert_rows.push_back(std::to_string(i) + ',' + format_double(g.vertices[i].x) + ',' +
                                format_double(g.vertices[i].y));
        }
        write_csv(out_prefix + "_gamma_K" + std::to_string(K) + "_N" + std::to_string(N) + ".csv",
                  "index,x,y", vert_rows);

        std::ostringstream os;
        os << K << ',' << N << ',' << format_double(row.theta) << ',' << row.vertices << ','
           << format_double(row.rho) << ',' << format_double(row.closure_residual) << ','
           << format_double(row.verify_residual) << ',' << (row.certified ? 1 : 0);
        summary_rows.push_back(os.str());
        rows.push_back(row);
    }
    write_csv(out_prefix + "_summary_K" + std::to_string(K) + ".csv",
              "K,N,theta,vertices,rho,closure_residual,verify_residual,certified", summary_rows);
    return rows;
}

std::vector<ScanRow> run_scan(const std::vector<double>& thetas, int seeds_per_theta,
                              long iterations) {
    if (seeds_per_theta < 1) throw std::invalid_argument("run_scan: seeds_per_theta must be >= 1");
    if (iterations < 1) throw std::invalid_argument("run_scan: iterations must be >= 1");

    const int n_rows = static_cast<int>(thetas.size()) * seeds_per_theta;
    std::vector<ScanRow> rows(n_rows);

    parallel_for(static_cast<int>(thetas.size()), [&](int ti) {
        const double theta = thetas[ti];
        MapF map;
        bool theta_ok = true;
        std::string theta_err;
        try {
            map = build_map(params_from_theta(theta));
        } catch (const std::exception& e) {
            theta_ok = false;
            theta_err = e.what();
        }
        // Reproducible seeds: one generator per (theta index, seed index).
        for (int si = 0; si < seeds_per_theta; ++si) {
            ScanRow& row = rows[ti * seeds_per_theta + si];
            row.theta = theta;
            if (!theta_ok) {
                row.error = theta_err;
                continue;
            }
            std::mt19937_64 rng(0x5CA1ABLL * (ti + 1) + si);
            std::uniform_real_distribution<double> coord(0.01, 0.99);
            row.seed = {coord(rng), coord(rng)};
            try {
                const OrbitTrace tr = orbit(row.seed, static_cast<int>(iterations), map);
                row.rho = rotation_number(tr);
                double rmin = 1e300, rmax = 0.0;
                for (const Vec2& q : tr.points) {
                    const double r = dist(q, kCentre);
                    rmin = std::min(rmin, r);
                    rmax = std::max(rmax, r);
                }
                row.min_radius = rmin;
                row.max_radius = rmax;
                row.within_bound = row.rho <= 0.25 - theta / std::numbers::pi + 1e-4;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    });
    return rows;
}

void write_scan_csv(const std::string& path, const std::vector<ScanRow>& rows) {
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& r : rows) {
        std::ostringstream os;
        os << format_double(r.theta) << ',' << format_double(r.seed.x) << ','
           << format_double(r.seed.y) << ',' << format_double(r.rho) << ','
           << format_double(r.min_radius) << ',' << format_double(r.max_radius) << ','
           << (r.within_bound ? 1 : 0);
        lines.push_back(os.str());
    }
    write_csv(path, "theta,seed_x,seed_y,rho_estimate,min_radius,max_radius,within_bound", lines);
}

std::vector<ThetaKRow> solve_theta_k_table(int k_min, int k_max) {
    std::vector<ThetaKRow> rows;
    for (int K = k_min; K <= k_max; ++K) {
        const Params p = solve_theta_K(K);
        ThetaKRow row;
        row.K = K;
        row.theta = p.theta;
        row.t = p.t;
        row.s = p.s;
        row.lambda = spectral(p).lambda;
        const MapF map = build_map(p);
        Vec2 v{p.t, 1.0 - p.s};
        const Mat2 B = map.piece(region_b(1)).map.m;
        for (int k = 0; k < K; ++k) v = B * v;
        row.residual = dist(v, Vec2{p.s, p.t});
        rows.push_back(row);
    }
    return rows;
}

void write_theta_k_csv(const std::string& path, const std::vector<ThetaKRow>& rows) {
    std::vector<std::string> lines;
    for (const auto& r : rows) {
        std::ostringstream os;
        os << r.K << ',' << format_double(r.theta) << ',' << format_double(r.t) << ','
           << format_double(r.s) << ',' << format_double(r.lambda) << ','
           << format_double(r.residual);
        lines.push_back(os.str());
    }
    write_csv(path, "K,theta,t,s,lambda,residual", lines);
}

std::vector<ThetaKRow> read_theta_k_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::vector<ThetaKRow> rows;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        ThetaKRow row;
        char comma = 0;
        ls >> row.K >> comma >> row.theta >> comma >> row.t >> comma >> row.s >> comma >>
            row.lambda >> comma >> row.residual;
        if (!ls) throw std::runtime_error("bad theta_k row: " + line);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pwa::explorer
