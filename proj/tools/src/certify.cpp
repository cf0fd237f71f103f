#include "pwa/explorer/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "pwa/circles.hpp"
#include "pwa/explorer/experiments.hpp"
#include "pwa/explorer/io.hpp"
#include "pwa/map.hpp"
#include "pwa/parallel.hpp"

namespace pwa::explorer {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// Independent eigen-solver for 2x2 matrices via the characteristic
// polynomial; used to cross-check the closed-form spectral data.
struct EigenPair {
    double l1 = 0.0, l2 = 0.0;
    Vec2 v1, v2;
};

EigenPair charpoly_eigen(const Mat2& m) {
    const double tr = m.a + m.d;
    const double det = m.det();
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    EigenPair e;
    e.l1 = 0.5 * (tr + disc);
    e.l2 = 0.5 * (tr - disc);
    auto kernel_dir = [&](double l) {
        const Vec2 r1{m.a - l, m.b}, r2{m.c, m.d - l};
        const Vec2 v = (norm(r1) >= norm(r2)) ? Vec2{-r1.y, r1.x} : Vec2{-r2.y, r2.x};
        return v;
    };
    e.v1 = kernel_dir(e.l1);
    e.v2 = kernel_dir(e.l2);
    return e;
}

double sine_angle(Vec2 a, Vec2 b) { return std::fabs(cross(a, b)) / (norm(a) * norm(b)); }

std::vector<double> theta_grid_10() {
    std::vector<double> g;
    for (int j = 1; j <= 10; ++j) g.push_back(j * kPi / 44.0);
    return g;
}

// Angles where the shear coefficient stays moderate, for the continuity
// residual (offset 1e-9 is amplified by the piece norms).
std::vector<double> theta_grid_continuity() {
    std::vector<double> g;
    const double lo = kPi / 16.0, hi = kPi / 4.0 - kPi / 64.0;
    for (int j = 1; j <= 10; ++j) g.push_back(lo + (hi - lo) * j / 11.0);
    return g;
}

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

CriterionResult criterion_1() {
    Timer timer;
    CriterionResult r;
    r.id = 1;
    r.name = "algebraic identities (t - t^2 = s^2, det = 1)";
    std::mt19937_64 rng(0xA1);
    std::uniform_real_distribution<double> th(kThetaMin, theta_max());
    double max_rel = 0.0, max_det = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Params p = params_from_theta(th(rng));
        max_rel = std::max(max_rel, std::fabs(p.t - p.t * p.t - p.s * p.s));
        const MapF map = build_map(p);
        for (const auto& piece : map.pieces) {
            max_det = std::max(max_det, std::fabs(piece.map.m.det() - 1.0));
        }
    }
    r.pass = max_rel < 1e-14 && max_det < 1e-12;
    r.detail = "max |t-t^2-s^2| = " + fmt(max_rel) + ", max |det-1| = " + fmt(max_det);
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_2() {
    Timer timer;
    CriterionResult r;
    r.id = 2;
    r.name = "symmetry suite (R commutes; S, T1, T2 reverse)";
    const auto grid = theta_grid_10();
    std::vector<double> worst(grid.size(), 0.0);
    parallel_for(static_cast<int>(grid.size()), [&](int gi) {
        const MapF map = build_map(params_from_theta(grid[gi]));
        std::mt19937_64 rng(0xB2 + gi);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        double w = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Vec2 q{coord(rng), coord(rng)};
            w = std::max(w, dist(apply_F(sym_R(q), map), sym_R(apply_F(q, map))));
            w = std::max(w, dist(sym_S(apply_F(sym_S(apply_F(q, map)), map)), q));
            w = std::max(w, dist(sym_T1(apply_F(sym_T1(apply_F(q, map)), map)), q));
            w = std::max(w, dist(sym_T2(apply_F(sym_T2(apply_F(q, map)), map)), q));
        }
        worst[gi] = w;
    });
    const double sup = *std::max_element(worst.begin(), worst.end());
    r.pass = sup < 1e-10;
    r.detail = "sup residual = " + fmt(sup) + " over 10 thetas x 1e4 points";
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_3() {
    Timer timer;
    CriterionResult r;
    r.id = 3;
    r.name = "boundary fixed exactly; continuity across break lines";
    const auto grid = theta_grid_continuity();
    double boundary_worst = 0.0, continuity_worst = 0.0;
    std::mt19937_64 rng(0xC3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (const double theta : grid) {
        const MapF map = build_map(params_from_theta(theta));
        for (int i = 0; i < 100; ++i) {
            const double u = unit(rng);
            const Vec2 pts[4] = {{u, 0.0}, {1.0, u}, {u, 1.0}, {0.0, u}};
            for (const Vec2 q : pts) {
                boundary_worst = std::max(boundary_worst, dist(apply_F(q, map), q));
            }
        }
        for (int i = 0; i < 1000; ++i) {
            const auto& seg = map.partition.break_segments[i % 12];
            const Vec2 d = seg.b - seg.a;
            const Vec2 q = seg.a + (0.05 + 0.9 * unit(rng)) * d;
            const Vec2 n = Vec2{-d.y, d.x} / norm(d);
            const double off = 1e-9;
            const Vec2 lhs = apply_F(q + off * n, map);
            const Vec2 rhs = apply_F(q - off * n, map);
            continuity_worst = std::max(continuity_worst, dist(lhs, rhs));
        }
    }
    r.pass = boundary_worst == 0.0 && continuity_worst < 1e-7;
    r.detail = "boundary sup = " + fmt(boundary_worst) +
               " (exact), continuity sup = " + fmt(continuity_worst) + " at offset 1e-9";
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_4() {
    Timer timer;
    CriterionResult r;
    r.id = 4;
    r.name = "special parameter theta_3 = pi/8";
    const Params p = solve_theta_K(3);
    const double err = std::fabs(p.theta - kPi / 8.0);
    r.pass = err < 1e-10;
    r.detail = "|theta_3 - pi/8| = " + fmt(err);
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_5() {
    Timer timer;
    CriterionResult r;
    r.id = 5;
    r.name = "certified circles Gamma_K^N, K = 3..6, N = 0..10";
    double worst_closure = 0.0;
    bool ok = true;
    std::string why;
    for (int K = 3; K <= 6 && ok; ++K) {
        const Params p = solve_theta_K(K);
        const MapF map = build_map(p);
        for (int N = 0; N <= 10 && ok; ++N) {
            const PolyCircle g = build_gamma(p, K, N);
            const int period = 4 * (K + N);
            if (static_cast<int>(g.vertices.size()) != period) {
                ok = false;
                why = "vertex count mismatch";
                break;
            }
            Vec2 cur = g.vertices.front();
            for (int k = 0; k < period; ++k) cur = apply_F(cur, map);
            const double closure = dist(cur, g.vertices.front());
            worst_closure = std::max(worst_closure, closure);
            if (closure >= 1e-8) {
                ok = false;
                why = "closure residual";
                break;
            }
            const double rho = rotation_number(orbit(g.vertices.front(), period, map));
            if (rho != 1.0 / period) {
                ok = false;
                why = "winding count disagrees with 1/(4(K+N))";
                break;
            }
        }
    }
    r.pass = ok;
    r.detail = ok ? "44 circles certified, worst closure = " + fmt(worst_closure) : why;
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_6() {
    Timer timer;
    CriterionResult r;
    r.id = 6;
    r.name = "cancellation structure on every Gamma_K^N";
    bool ok = true;
    std::string why;
    for (int K = 3; K <= 6 && ok; ++K) {
        const Params p = solve_theta_K(K);
        const MapF map = build_map(p);
        for (int N = 0; N <= 10 && ok; ++N) {
            const PolyCircle g = build_gamma(p, K, N);
            const CancellationReport rep = check_cancellation(g, map);
            if (!rep.all_u_meet_v || !rep.alternating) {
                ok = false;
                why = "K=" + std::to_string(K) + " N=" + std::to_string(N) +
                      (rep.all_u_meet_v ? " hits do not alternate" : " U-orbit misses V");
            }
        }
    }
    r.pass = ok;
    r.detail = ok ? "U/V hits alternate and every U-orbit meets a V (44 circles)" : why;
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_7() {
    Timer timer;
    CriterionResult r;
    r.id = 7;
    r.name = "foliation between Gamma_3^0 and Gamma_3^1 at pi/8";
    const Params p = solve_theta_K(3);
    const auto rows = foliation_scan(p, 3, 0, 50);
    bool ok = rows.size() == 50;
    double worst_res = 0.0;
    std::string why;
    for (const auto& row : rows) {
        worst_res = std::max(worst_res, row.residual);
        if (!row.ok || row.residual >= 1e-7) {
            ok = false;
            why = "sample u=" + fmt(row.u) + " residual " + fmt(row.residual);
            break;
        }
        if (row.corners != 12) {
            ok = false;
            why = "sample u=" + fmt(row.u) + " has " + std::to_string(row.corners) + " segments";
            break;
        }
    }
    double linearity = 0.0;  // deviation from a linear rho(u) profile; logged, not asserted
    if (ok) {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].rho > rows[i - 1].rho + 1e-6) {
                ok = false;
                why = "rho not monotone at sample " + std::to_string(i);
                break;
            }
        }
        const bool ends = rows.front().rho == 1.0 / 12.0 && rows.back().rho == 1.0 / 16.0;
        if (!ends) {
            ok = false;
            why = "endpoint rotation numbers not 1/12 and 1/16";
        }
        for (const auto& row : rows) {
            const double lin = (1.0 - row.u) / 12.0 + row.u / 16.0;
            linearity = std::max(linearity, std::fabs(row.rho - lin));
        }
    }
    r.pass = ok;
    r.detail = ok ? "50 twelve-segment circles, max residual = " + fmt(worst_res) +
                        ", rho monotone 1/12 -> 1/16, linearity gap = " + fmt(linearity)
                  : why;
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_8() {
    Timer timer;
    CriterionResult r;
    r.id = 8;
    r.name = "return map preserves y on the cell quadrangle";
    const Params p = solve_theta_K(3);
    const MapF map = build_map(p);
    const ReturnCell cell = make_return_cell(p, 3, 0);
    const ReturnMapReport rep = return_map_check(cell, map, 100, 0xD8);
    r.pass = rep.max_y_drift < 1e-8 && rep.d1_residual < 1e-8 && rep.d2_residual < 1e-8;
    r.detail = "max |dy| = " + fmt(rep.max_y_drift) + ", cell residuals d1 = " +
               fmt(rep.d1_residual) + ", d2 = " + fmt(rep.d2_residual);
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_9() {
    Timer timer;
    CriterionResult r;
    r.id = 9;
    r.name = "rotation-number bound rho <= 1/4 - theta/pi";
    const auto grid = theta_grid_10();
    std::vector<double> margin(grid.size(), -1e300);
    std::vector<char> okv(grid.size(), 1);
    parallel_for(static_cast<int>(grid.size()), [&](int gi) {
        const double theta = grid[gi];
        const MapF map = build_map(params_from_theta(theta));
        const double bound = 0.25 - theta / kPi + 1e-4;
        std::mt19937_64 rng(0xE9 + gi);
        std::uniform_real_distribution<double> coord(1e-3, 1.0 - 1e-3);
        for (int i = 0; i < 100; ++i) {
            const Vec2 seed{coord(rng), coord(rng)};
            const double rho = rotation_number(orbit(seed, 10000, map));
            margin[gi] = std::max(margin[gi], rho - (0.25 - theta / kPi));
            if (rho > bound) okv[gi] = 0;
        }
    });
    const bool ok = std::all_of(okv.begin(), okv.end(), [](char c) { return c != 0; });
    const double worst = *std::max_element(margin.begin(), margin.end());
    r.pass = ok;
    r.detail = "1000 orbits x 1e4 iterates, worst rho - bound = " + fmt(worst);
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_10(const CertifyOptions& opts) {
    Timer timer;
    CriterionResult r;
    r.id = 10;
    r.name = "figure ensemble at pi/11: annular confinement, deterministic files";
    ExperimentSpec spec;
    spec.theta = kPi / 11.0;
    spec.seeds = {{0.92, 0.5}, {0.95, 0.5}, {0.97, 0.5}};
    spec.iterations = 100000;
    spec.out_prefix = opts.out_dir + "/fig_pi11";
    spec.emit_csv = true;
    spec.emit_ppm = true;
    spec.raster_width = 512;
    spec.raster_height = 512;

    // Radius extremes at half time vs full time, per seed.
    const MapF map = build_map(params_from_theta(spec.theta));
    double worst_drift = 0.0;
    for (const Vec2 seed : spec.seeds) {
        Vec2 cur = seed;
        double rmin = dist(cur, {0.5, 0.5}), rmax = rmin;
        double rmin_half = 0.0, rmax_half = 0.0;
        for (long k = 1; k <= spec.iterations; ++k) {
            cur = apply_F(cur, map);
            const double rad = dist(cur, {0.5, 0.5});
            rmin = std::min(rmin, rad);
            rmax = std::max(rmax, rad);
            if (k == spec.iterations / 2) {
                rmin_half = rmin;
                rmax_half = rmax;
            }
        }
        worst_drift = std::max({worst_drift, rmin_half - rmin, rmax - rmax_half});
    }

    const OrbitSummary first = run_orbit(spec);
    ExperimentSpec again = spec;
    again.out_prefix = opts.out_dir + "/fig_pi11_rerun";
    const OrbitSummary second = run_orbit(again);

    auto file_bytes = [](const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
    };
    bool identical = first.files.size() == second.files.size();
    for (std::size_t i = 0; identical && i < first.files.size(); ++i) {
        identical = file_bytes(first.files[i]) == file_bytes(second.files[i]);
    }
    const bool conserved =
        first.raster_total ==
        static_cast<std::uint64_t>(spec.seeds.size()) * static_cast<std::uint64_t>(spec.iterations);

    r.pass = worst_drift < 1e-3 && identical && conserved;
    r.detail = "radius drift over last 5e4 iterates = " + fmt(worst_drift) +
               (identical ? ", outputs byte-identical" : ", OUTPUTS DIFFER") +
               (conserved ? ", raster hits conserved" : ", RASTER HITS LOST");
    r.seconds = timer.seconds();
    return r;
}

CriterionResult criterion_11() {
    Timer timer;
    CriterionResult r;
    r.id = 11;
    r.name = "spectral oracles (char-poly eigen, K(t(pi/8)) = 3)";
    double worst = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double theta = 0.02 + (kPi / 4.0 - 0.04) * j / 101.0;
        const Params p = params_from_theta(theta);
        const SpectralData sd = spectral(p);
        const MapF map = build_map(p);
        const EigenPair e = charpoly_eigen(map.piece(region_b(1)).map.m);
        worst = std::max(worst, std::fabs(e.l1 - sd.lambda));
        worst = std::max(worst, std::fabs(e.l2 - 1.0 / sd.lambda));
        worst = std::max(worst, sine_angle(e.v1, sd.v1));
        worst = std::max(worst, sine_angle(e.v2, sd.v2));
    }
    const Params p8 = params_from_theta(kPi / 8.0);
    const double k_err = std::fabs(K_of_t(p8.t) - 3.0);
    const MapF map8 = build_map(p8);
    const Mat2 B = map8.piece(region_b(1)).map.m;
    Vec2 v{p8.t, 1.0 - p8.s};
    for (int k = 0; k < 3; ++k) v = B * v;
    const double pow_err = dist(v, Vec2{p8.s, p8.t});

    r.pass = worst < 1e-10 && k_err < 1e-9 && pow_err < 1e-9;
    r.detail = "eigen residual = " + fmt(worst) + ", |K(t(pi/8)) - 3| = " + fmt(k_err) +
               ", |B^3(P4) - P1| = " + fmt(pow_err);
    r.seconds = timer.seconds();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_certification(const CertifyOptions& opts) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_1());
    results.push_back(criterion_2());
    results.push_back(criterion_3());
    results.push_back(criterion_4());
    results.push_back(criterion_5());
    results.push_back(criterion_6());
    results.push_back(criterion_7());
    results.push_back(criterion_8());
    results.push_back(criterion_9());
    results.push_back(criterion_10(opts));
    results.push_back(criterion_11());
    return results;
}

bool print_certification(std::ostream& os, const std::vector<CriterionResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        std::ostringstream line;
        line << '[' << std::setw(2) << r.id << '/' << results.size() << "] "
             << (r.pass ? "PASS" : "FAIL") << ' ' << r.name << " (" << r.detail << ") ["
             << std::fixed << std::setprecision(2) << r.seconds << " s]";
        os << line.str() << '\n';
        all = all && r.pass;
    }
    os << (all ? "certification: all criteria passed" : "certification: FAILURES present") << '\n';
    return all;
}

}  // namespace pwa::explorer
