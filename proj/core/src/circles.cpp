#include "pwa/circles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pwa/errors.hpp"

namespace pwa {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct LambdaRatio {
    double lambda;
    double ratio;
};

// Shared evaluation of the expanding eigenvalue and the expanding-coordinate
// quotient x2/x1 of P_1 over P_4. The f(t)-1 factors are evaluated as
// -4t^2/(1+f) to avoid cancellation for small t.
LambdaRatio lambda_ratio(double t, double s) {
    const double f = std::sqrt(1.0 - 4.0 * t * t);
    const double fm1 = -4.0 * t * t / (1.0 + f);
    const double lambda = (4.0 * t * t - 2.0 * t + (2.0 * s - 1.0) * (1.0 + f)) / (2.0 * (t - s));
    const double ratio = (2.0 * t * s + t * fm1) / (2.0 * t * t + (1.0 - s) * fm1);
    return {lambda, ratio};
}

Mat2 hyperbolic_matrix(const Params& p) {
    const double t = p.t, s = p.s, d = t - s;
    return {(t * t - (1.0 - s) * (1.0 - s)) / d, (1.0 - 2.0 * s) * t / d,
            (2.0 * s - 1.0) * t / d, (2.0 * t - 1.0) * t / d};
}

Vec2 iterate_F(Vec2 pt, int n, const MapF& map) {
    for (int k = 0; k < n; ++k) pt = apply_F(pt, map);
    return pt;
}

Vec2 iterate_F_inv(Vec2 pt, int n, const MapF& map) {
    for (int k = 0; k < n; ++k) pt = apply_F_inv(pt, map);
    return pt;
}

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        const long long r = a % b;
        a = b;
        b = r;
    }
    return a < 0 ? -a : a;
}

Rational reduced(long long num, long long den) {
    const long long g = std::max<long long>(1, gcd_ll(num, den));
    return {num / g, den / g};
}

}  // namespace

SpectralData spectral(const Params& p) {
    const double t = p.t, s = p.s;
    if (!(t > 0.0 && t < 0.5)) {
        throw std::domain_error("spectral: t must lie in (0, 1/2)");
    }
    SpectralData sd;
    sd.f = std::sqrt(1.0 - 4.0 * t * t);
    const auto lr = lambda_ratio(t, s);
    sd.lambda = lr.lambda;
    sd.ratio = lr.ratio;
    sd.v1 = {1.0 + sd.f, 2.0 * t};
    sd.v2 = {2.0 * t, 1.0 + sd.f};

    // Coordinates of P_4 and P_1 in the eigenbasis, by Cramer's rule.
    const Vec2 p4{t, 1.0 - s}, p1{s, t};
    const double det = sd.v1.x * sd.v2.y - sd.v2.x * sd.v1.y;
    auto coords = [&](Vec2 q) -> Vec2 {
        return {(q.x * sd.v2.y - sd.v2.x * q.y) / det,
                (sd.v1.x * q.y - q.x * sd.v1.y) / det};
    };
    sd.p4_coords = coords(p4);
    sd.p1_coords = coords(p1);

    // Internal consistency: eigen residuals and the two routes to the ratio.
    const Mat2 B = hyperbolic_matrix(p);
    const Vec2 r1 = B * sd.v1 - sd.lambda * sd.v1;
    const Vec2 r2 = B * sd.v2 - (1.0 / sd.lambda) * sd.v2;
    if (norm(r1) > 1e-10 * norm(sd.v1) || norm(r2) > 1e-10 * norm(sd.v2)) {
        throw CertificationError("spectral: eigenpair residual too large",
                                 std::max(norm(r1), norm(r2)));
    }
    if (!(sd.lambda > 1.0)) {
        throw CertificationError("spectral: expanding eigenvalue not > 1", sd.lambda);
    }
    const double ratio_coords = sd.p1_coords.x / sd.p4_coords.x;
    if (std::fabs(ratio_coords - sd.ratio) > 1e-9 * std::fabs(sd.ratio)) {
        throw CertificationError("spectral: ratio routes disagree",
                                 std::fabs(ratio_coords - sd.ratio));
    }
    return sd;
}

double K_of_t(double t) {
    if (!(t > 0.0 && t < 0.5)) {
        throw std::domain_error("K_of_t: t must lie in (0, 1/2)");
    }
    const double s = std::sqrt(t - t * t);
    const auto lr = lambda_ratio(t, s);
    return std::log(lr.ratio) / std::log(lr.lambda);
}

Params solve_theta_K(int K) {
    if (K < 3) throw std::domain_error("solve_theta_K: K must be >= 3");

    double lo = 0.05, hi = 0.499;
    int guard = 0;
    while (K_of_t(lo) > static_cast<double>(K)) {
        lo *= 0.5;
        if (++guard > 60) throw SearchError("solve_theta_K: lower bracket expansion failed");
    }
    guard = 0;
    while (K_of_t(hi) < static_cast<double>(K)) {
        hi = 0.5 * (hi + 0.5);
        if (++guard > 60) throw SearchError("solve_theta_K: upper bracket expansion failed");
    }
    // Bisect to full double precision; K_of_t is cheap.
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (K_of_t(mid) < static_cast<double>(K)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double t = 0.5 * (lo + hi);
    const Params p = params_from_theta(std::asin(std::sqrt(t)));

    if (std::fabs(K_of_t(p.t) - K) > 1e-12) {
        throw CertificationError("solve_theta_K: K(t) residual too large at the root",
                                 std::fabs(K_of_t(p.t) - K));
    }
    // A posteriori certificate: B^K carries P_4 onto P_1.
    const Mat2 B = hyperbolic_matrix(p);
    Vec2 v{p.t, 1.0 - p.s};
    for (int k = 0; k < K; ++k) v = B * v;
    const double res = dist(v, Vec2{p.s, p.t});
    if (res > 1e-9) {
        throw CertificationError("solve_theta_K: B^K(P4) != P1", res);
    }
    return p;
}

Vec2 y_point(const Params& p, int N) {
    if (N < 0) throw std::domain_error("y_point: N must be >= 0");
    const double scale = 1.0 / (1.0 + N * (1.0 - 2.0 * p.s));
    const Vec2 y{scale * p.s, scale * p.t};

    // Forward certificate: N shear steps land on E_2P_1.
    const Vec2 img{y.x + N * p.shear_c * y.y, y.y};
    const Segment e2p1{{1.0, 0.0}, {p.s, p.t}};
    const double res = point_segment_distance(img, e2p1);
    if (res > 1e-10) {
        throw CertificationError("y_point: shear image misses E2P1", res);
    }
    return y;
}

Vec2 x_point(const Params& p, int K, int N) {
    if (K < 3) throw std::domain_error("x_point: K must be >= 3");
    const MapF map = build_map(p);
    const Vec2 y = y_point(p, N);
    const Vec2 x = iterate_F_inv(y, K, map);

    const Segment e1p4{{0.0, 0.0}, {p.t, 1.0 - p.s}};
    const double seg_res = point_segment_distance(x, e1p4);
    if (seg_res > 1e-9) {
        throw CertificationError("x_point: B^{-K}(Y_N) misses E1P4; params are not a theta_K root",
                                 seg_res);
    }
    const QuadForm q = quad_form(p);
    const double qb_res = std::fabs(qb_value(x, q) - qb_value(y, q));
    if (qb_res > 1e-10) {
        throw CertificationError("x_point: Q_B level not preserved", qb_res);
    }
    return x;
}

CancellationOrbit cancellation_orbit(const Params& p, int K, int N) {
    const MapF map = build_map(p);
    CancellationOrbit co;
    co.K = K;
    co.N = N;
    co.X = x_point(p, K, N);
    co.Y = y_point(p, N);

    const int period = 4 * (K + N);
    co.points.reserve(period);
    Vec2 cur = co.X;
    for (int k = 0; k < period; ++k) {
        co.points.push_back(cur);
        cur = apply_F(cur, map);
    }
    const double closure = dist(cur, co.X);
    if (closure > 1e-8) {
        throw CertificationError("cancellation_orbit: orbit fails to close", closure);
    }
    const double transfer = dist(co.points[K], co.Y);
    if (transfer > 1e-9) {
        throw CertificationError("cancellation_orbit: F^K(X) != Y", transfer);
    }
    const double quarter = dist(co.points[(K + N) % period], sym_R(co.X));
    if (quarter > 1e-9) {
        throw CertificationError("cancellation_orbit: F^{K+N}(X) != R(X)", quarter);
    }
    // Period must be exactly 4(K+N): no earlier recurrence.
    for (int m = 1; m < period; ++m) {
        if (dist(co.points[m], co.X) < 1e-9) {
            throw CertificationError("cancellation_orbit: premature recurrence", m);
        }
    }

    // Break-segment hits: spokes E_iP_i (U) and E_{i+1}P_i (V).
    struct Hit {
        int step;
        bool is_u;
    };
    std::vector<Hit> hits;
    for (int k = 0; k < period; ++k) {
        for (int i = 0; i < 4; ++i) {
            if (point_segment_distance(co.points[k], map.partition.break_segments[2 * i]) <= 1e-9) {
                co.u_hits.push_back(k);
                hits.push_back({k, true});
            }
        }
        for (int i = 0; i < 4; ++i) {
            if (point_segment_distance(co.points[k], map.partition.break_segments[2 * i + 1]) <= 1e-9) {
                co.v_hits.push_back(k);
                hits.push_back({k, false});
            }
        }
    }
    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        if (a.step != b.step) return a.step < b.step;
        return a.is_u && !b.is_u;  // a U-arrival precedes the V-departure at a shared point
    });
    if (co.u_hits.size() != co.v_hits.size() || co.u_hits.size() != 4) {
        throw CertificationError("cancellation_orbit: expected 4 U-hits and 4 V-hits",
                                 static_cast<double>(hits.size()));
    }
    for (std::size_t h = 1; h < hits.size(); ++h) {
        if (hits[h].is_u == hits[h - 1].is_u) {
            throw CertificationError("cancellation_orbit: U/V hits do not alternate",
                                     static_cast<double>(hits[h].step));
        }
    }
    return co;
}

PolyCircle build_gamma(const Params& p, int K, int N) {
    const CancellationOrbit co = cancellation_orbit(p, K, N);
    PolyCircle circle;
    circle.vertices = co.points;
    const int period = 4 * (K + N);
    circle.rho_exact = Rational{1, period};
    circle.rho = circle.rho_exact->value();
    circle.K = K;
    circle.N = N;
    return circle;
}

CircleReport verify_invariant_circle(const PolyCircle& circle, const MapF& map,
                                     int samples, double tol) {
    CircleReport rep;
    rep.samples = samples;
    const StarPolygon poly(circle.vertices);
    rep.star_shaped = poly.star_shaped();
    rep.simple = rep.star_shaped;  // an angle-monotone boundary cannot self-intersect

    double angle_sum = 0.0;
    double prev_angle = 0.0;
    const double step = poly.perimeter() / samples;
    for (int k = 0; k < samples; ++k) {
        const Vec2 q = poly.at_arclength((k + 0.5) * step);
        const Vec2 img = apply_F(q, map);
        rep.max_residual = std::max(rep.max_residual, poly.distance(img));
        const double ang = polar_angle(img, poly.centre());
        if (k > 0) {
            double d = ang - prev_angle;
            if (d < 0.0) d += kTwoPi;
            angle_sum += d;
        }
        prev_angle = ang;
    }
    // A full sweep of image angles accumulates exactly one turn iff the
    // circular order of samples is preserved.
    double closing = polar_angle(apply_F(poly.at_arclength(0.5 * step), map), poly.centre()) - prev_angle;
    if (closing < 0.0) closing += kTwoPi;
    angle_sum += closing;
    rep.order_preserved = std::fabs(angle_sum - kTwoPi) < 1e-6;

    for (const Vec2& v : circle.vertices) {
        rep.r_invariance = std::max(rep.r_invariance, poly.distance(sym_R(v)));
    }
    rep.passed = rep.star_shaped && rep.order_preserved && rep.max_residual <= tol;
    return rep;
}

CancellationReport check_cancellation(const PolyCircle& circle, const MapF& map,
                                      int max_iter, double tol) {
    CancellationReport rep;
    const auto& verts = circle.vertices;
    const int n = static_cast<int>(verts.size());

    auto intersect_with = [&](const Segment& seg) -> Vec2 {
        for (int e = 0; e < n; ++e) {
            const Segment edge{verts[e], verts[(e + 1) % n]};
            if (auto hit = segment_intersection(edge, seg, 1e-9)) return *hit;
        }
        throw GeometryError("check_cancellation: circle does not meet break segment " +
                            std::to_string(&seg - map.partition.break_segments.data()));
    };
    for (int i = 0; i < 4; ++i) {
        rep.U[i] = intersect_with(map.partition.break_segments[2 * i]);
        rep.V[i] = intersect_with(map.partition.break_segments[2 * i + 1]);
    }

    int bound = max_iter;
    if (bound <= 0) {
        bound = circle.rho_exact ? static_cast<int>(circle.rho_exact->den) + 2
                                 : std::max(64, 2 * n + 16);
    }

    struct Hit {
        int step;
        bool is_u;
    };
    auto forward_hits = [&](Vec2 start) {
        std::vector<Hit> hits;
        Vec2 cur = start;
        for (int step = 0; step <= bound; ++step) {
            for (int i = 0; i < 4; ++i) {
                if (point_segment_distance(cur, map.partition.break_segments[2 * i]) <= tol) {
                    hits.push_back({step, true});
                }
            }
            for (int i = 0; i < 4; ++i) {
                if (point_segment_distance(cur, map.partition.break_segments[2 * i + 1]) <= tol) {
                    hits.push_back({step, false});
                }
            }
            cur = apply_F(cur, map);
        }
        std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
            if (a.step != b.step) return a.step < b.step;
            return a.is_u && !b.is_u;
        });
        return hits;
    };

    std::array<std::vector<Hit>, 4> u_orbit_hits, v_orbit_hits;
    std::array<std::vector<Vec2>, 4> v_orbit_points;
    for (int i = 0; i < 4; ++i) {
        u_orbit_hits[i] = forward_hits(rep.U[i]);
        v_orbit_hits[i] = forward_hits(rep.V[i]);
        Vec2 cur = rep.V[i];
        for (int step = 0; step <= bound; ++step) {
            v_orbit_points[i].push_back(cur);
            cur = apply_F(cur, map);
        }
    }

    rep.alternating = true;
    auto check_alternation = [&](const std::vector<Hit>& hits) {
        for (std::size_t h = 1; h < hits.size(); ++h) {
            if (hits[h].is_u == hits[h - 1].is_u) return false;
        }
        return true;
    };
    for (int i = 0; i < 4; ++i) {
        rep.alternating = rep.alternating && check_alternation(u_orbit_hits[i]) &&
                          check_alternation(v_orbit_hits[i]);
    }

    rep.all_u_meet_v = true;
    for (int i = 0; i < 4; ++i) {
        bool found = std::any_of(u_orbit_hits[i].begin(), u_orbit_hits[i].end(),
                                 [](const Hit& h) { return !h.is_u; });
        if (!found) {
            // The full orbit is two-sided: a V whose forward orbit reaches U_i
            // also witnesses the membership.
            for (int j = 0; j < 4 && !found; ++j) {
                for (const Vec2& q : v_orbit_points[j]) {
                    if (dist(q, rep.U[i]) <= tol) {
                        found = true;
                        break;
                    }
                }
            }
        }
        rep.u_meets_v[i] = found;
        rep.all_u_meet_v = rep.all_u_meet_v && found;

        rep.v_meets_u[i] = std::any_of(v_orbit_hits[i].begin(), v_orbit_hits[i].end(),
                                       [](const Hit& h) { return h.is_u; });
    }

    Vec2 cur = apply_F(rep.U[0], map);
    for (int step = 1; step <= bound; ++step) {
        if (dist(cur, rep.U[0]) <= tol) {
            rep.u1_period = step;
            break;
        }
        cur = apply_F(cur, map);
    }
    return rep;
}

double rotation_number(const OrbitTrace& trace) {
    const int n = trace.n();
    if (n < 1) throw std::domain_error("rotation_number: empty trace");

    bool constant = true;
    for (const Vec2& q : trace.points) {
        if (dist(q, trace.points.front()) > 1e-14) {
            constant = false;
            break;
        }
    }
    if (constant) return 0.0;  // fixed point (centre or boundary)

    for (const Vec2& q : trace.points) {
        if (q.x == 0.0 || q.x == 1.0 || q.y == 0.0 || q.y == 1.0) {
            throw std::runtime_error("rotation_number: trace touches the fixed boundary");
        }
    }

    const double total = trace.winding.back();
    if (dist(trace.points.back(), trace.points.front()) < 1e-8) {
        // One full period: the winding count is an exact integer.
        const long long p = std::llround(total / kTwoPi);
        if (p >= 1) return static_cast<double>(p) / static_cast<double>(n);
    }
    return total / (kTwoPi * n);
}

std::vector<FoliationSample> foliation_scan(const Params& p, int K, int N, int resolution) {
    if (resolution < 2) throw std::domain_error("foliation_scan: resolution must be >= 2");
    const MapF map = build_map(p);
    const Vec2 wa = y_point(p, N);
    const Vec2 wb = y_point(p, N + 1);
    const Segment e1p4{{0.0, 0.0}, {p.t, 1.0 - p.s}};

    const int n_orbit = 16384;
    std::vector<FoliationSample> out;
    out.reserve(resolution);

    for (int j = 0; j < resolution; ++j) {
        FoliationSample fs;
        fs.u = static_cast<double>(j) / (resolution - 1);
        fs.w = wa + fs.u * (wb - wa);
        try {
            // Pull W back through the hyperbolic piece to the spoke E1P4;
            // its K forward images are the kinks of the circle in this
            // quadrant, and the quarter-turn copies complete the polygon.
            const Vec2 x = iterate_F_inv(fs.w, K, map);
            if (point_segment_distance(x, e1p4) > 1e-9) {
                throw CertificationError("foliation_scan: pullback misses E1P4",
                                         point_segment_distance(x, e1p4));
            }
            std::vector<Vec2> corners;
            corners.reserve(4 * K);
            std::vector<Vec2> quadrant;
            Vec2 cur = x;
            for (int m = 1; m <= K; ++m) {
                cur = apply_F(cur, map);
                quadrant.push_back(cur);
            }
            for (int q = 0; q < 4; ++q) {
                for (Vec2 v : quadrant) corners.push_back(v);
                for (Vec2& v : quadrant) v = sym_R(v);
            }

            PolyCircle circle;
            circle.vertices = corners;
            const CircleReport rep = verify_invariant_circle(circle, map, 400, 1e-7);
            fs.residual = rep.max_residual;
            fs.corners = count_corners(corners, 1e-6);

            const OrbitTrace tr = orbit(fs.w, n_orbit, map);
            const StarPolygon poly(corners);
            for (const Vec2& q : tr.points) {
                fs.orbit_residual = std::max(fs.orbit_residual, poly.distance(q));
            }

            // Exact rotation number when the orbit recurs, estimator otherwise.
            fs.rho = rotation_number(tr);
            for (int k = 4; k <= tr.n(); ++k) {
                if (dist(tr.points[k], fs.w) < 1e-9) {
                    const long long windings = std::llround(tr.winding[k] / kTwoPi);
                    fs.rho_exact = reduced(windings, k);
                    fs.rho = fs.rho_exact->value();
                    break;
                }
            }
            fs.ok = rep.passed && rep.star_shaped && fs.orbit_residual < 1e-9;
            fs.polygon = std::move(corners);
        } catch (const CertificationError&) {
            fs.ok = false;
        }
        out.push_back(fs);
    }
    return out;
}

ReturnCell make_return_cell(const Params& p, int K, int N) {
    const MapF map = build_map(p);
    ReturnCell cell;
    cell.K = K;
    cell.N = N;
    const Vec2 X = y_point(p, N);
    const Vec2 Y = y_point(p, N + 1);
    const Vec2 FX = apply_F(X, map);
    const Vec2 FY = apply_F(Y, map);
    cell.quad = {X, Y, FY, FX};
    cell.d1 = {X, FY, FX};
    cell.d2 = {X, Y, FY};
    return cell;
}

bool point_in_cell(const ReturnCell& cell, Vec2 p) {
    if (!point_in_convex_quad(p, cell.quad, kGeoEps)) return false;
    // Exclude the exit edge F(Y)F(X): it is the image of the entry edge, so
    // counting it would make the vertex X "return" after a single step.
    const Vec2 a = cell.quad[2], b = cell.quad[3];
    return cross(b - a, p - a) > 1e-12;
}

ReturnMapReport return_map_check(const ReturnCell& cell, const MapF& map,
                                 int samples, unsigned long long rng_seed) {
    ReturnMapReport rep;
    rep.samples = samples;
    const int K = cell.K, N = cell.N;
    const Vec2 X = cell.quad[0], Y = cell.quad[1], FY = cell.quad[2], FX = cell.quad[3];

    auto fpow = [&](Vec2 q, int n) { return iterate_F(q, n, map); };
    rep.d1_residual = std::max({dist(fpow(X, K + N), sym_R(X)),
                                dist(fpow(FY, K + N), sym_R(Y)),
                                dist(fpow(FX, K + N), sym_R(FX))});
    rep.d2_residual = std::max({dist(fpow(X, K + N + 1), sym_R(FX)),
                                dist(fpow(Y, K + N + 1), sym_R(Y)),
                                dist(fpow(FY, K + N + 1), sym_R(FY))});

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int budget = 8 * (K + N + 2);
    for (int k = 0; k < samples; ++k) {
        const auto& tri = (k % 2 == 0) ? cell.d1 : cell.d2;
        double u = unit(rng), v = unit(rng);
        if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        const Vec2 w = tri[0] + u * (tri[1] - tri[0]) + v * (tri[2] - tri[0]);

        Vec2 cur = w;
        int ret = -1;
        for (int step = 1; step <= budget; ++step) {
            cur = apply_F(cur, map);
            if (point_in_cell(cell, cur)) {
                ret = step;
                break;
            }
        }
        if (ret < 0) {
            throw SearchError("return_map_check: no return within 8(K+N+2) iterates");
        }
        rep.return_steps.push_back(ret);
        rep.max_y_drift = std::max(rep.max_y_drift, std::fabs(cur.y - w.y));
    }
    return rep;
}

}  // namespace pwa
