#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pwa/errors.hpp"
#include "pwa/map.hpp"

using namespace pwa;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 random_in_triangle(std::mt19937_64& rng, const std::array<Vec2, 3>& tri) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng), v = unit(rng);
    if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    return tri[0] + u * (tri[1] - tri[0]) + v * (tri[2] - tri[0]);
}

}  // namespace

TEST_CASE("piece matrices at pi/8") {
    const MapF map = build_map(params_from_theta(kPi / 8.0));
    const Mat2 A = map.piece(region_a(1)).map.m;
    CHECK(A.a == 1.0);
    CHECK(A.b == doctest::Approx(2.0).epsilon(1e-14));  // (1-2s)/t = 2 at pi/8
    CHECK(A.c == 0.0);
    CHECK(A.d == 1.0);

    const Mat2 B = map.piece(region_b(1)).map.m;
    CHECK(B.a == doctest::Approx(1.9142135623730950).epsilon(1e-14));
    CHECK(B.b == doctest::Approx(-0.20710678118654752).epsilon(1e-14));
    CHECK(B.c == doctest::Approx(0.20710678118654752).epsilon(1e-14));
    CHECK(B.d == doctest::Approx(0.5).epsilon(1e-14));

    const AffinePiece& C = map.piece(region_c());
    const Params& p = map.params;
    CHECK(C.map.m.a == doctest::Approx(2.0 * p.s).epsilon(1e-15));
    CHECK(C.map.m.b == doctest::Approx(2.0 * p.t - 1.0).epsilon(1e-15));
    CHECK(C.map.m.c == doctest::Approx(1.0 - 2.0 * p.t).epsilon(1e-15));
    CHECK(C.map.t.x == doctest::Approx(1.0 - p.t - p.s).epsilon(1e-15));
    CHECK(C.map.t.y == doctest::Approx(p.t - p.s).epsilon(1e-15));
}

TEST_CASE("conjugated pieces match directly derived shears") {
    // A2 fixes x = 1 and shears vertically; A3 fixes y = 1.
    const Params p = params_from_theta(kPi / 6.0);
    const MapF map = build_map(p);
    const double c = p.shear_c;

    const Affine& A2 = map.piece(region_a(2)).map;
    CHECK(A2.m.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(A2.m.b == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(A2.m.c == doctest::Approx(-c).epsilon(1e-14));
    CHECK(A2.m.d == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(A2.t.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(A2.t.y == doctest::Approx(c).epsilon(1e-14));

    const Affine& A3 = map.piece(region_a(3)).map;
    CHECK(A3.m.b == doctest::Approx(c).epsilon(1e-14));
    CHECK(A3.t.x == doctest::Approx(-c).epsilon(1e-14));
}

TEST_CASE("pieces map source vertices to primed vertices") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> th(0.05, theta_max() - 0.05);
    for (int trial = 0; trial < 20; ++trial) {
        const MapF map = build_map(params_from_theta(th(rng)));
        for (int i = 1; i <= 4; ++i) {
            for (const RegionId id : {region_a(i), region_b(i)}) {
                const auto src = map.partition.triangle(id, false);
                const auto dst = map.partition.triangle(id, true);
                const Affine& piece = map.piece(id).map;
                for (int v = 0; v < 3; ++v) CHECK(dist(piece(src[v]), dst[v]) < 1e-12);
            }
        }
        for (int i = 0; i < 4; ++i) {
            CHECK(dist(map.piece(region_c()).map(map.partition.P[i]), map.partition.Pp[i]) < 1e-12);
        }
    }
}

TEST_CASE("determinant one on every piece") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> th(kThetaMin, theta_max());
    for (int trial = 0; trial < 200; ++trial) {
        const MapF map = build_map(params_from_theta(th(rng)));
        for (const auto& piece : map.pieces) {
            CHECK(std::fabs(piece.map.m.det() - 1.0) < 1e-12);
        }
        for (const auto& piece : map.inverse_pieces) {
            CHECK(std::fabs(piece.map.m.det() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("boundary is fixed pointwise, exactly") {
    const MapF map = build_map(params_from_theta(kPi / 11.0));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = unit(rng);
        for (const Vec2 q : {Vec2{u, 0.0}, Vec2{1.0, u}, Vec2{u, 1.0}, Vec2{0.0, u}}) {
            const Vec2 img = apply_F(q, map);
            CHECK(img.x == q.x);
            CHECK(img.y == q.y);
            const Vec2 inv = apply_F_inv(q, map);
            CHECK(inv.x == q.x);
            CHECK(inv.y == q.y);
        }
    }
}

TEST_CASE("centre and inner-square vertices map as defined") {
    const Params p = params_from_theta(kPi / 8.0);
    const MapF map = build_map(p);
    CHECK(dist(apply_F({0.5, 0.5}, map), {0.5, 0.5}) < 1e-15);
    CHECK(dist(apply_F({p.s, p.t}, map), {1.0 - p.s, p.t}) < 1e-12);      // P1 -> P'1
    CHECK(dist(apply_F_inv({1.0 - p.s, p.t}, map), {p.s, p.t}) < 1e-12);  // P'1 -> P1
}

TEST_CASE("inverse round-trips and S-conjugation oracle") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (const double theta : {kPi / 11.0, kPi / 8.0, 0.75}) {
        const MapF map = build_map(params_from_theta(theta));
        for (int i = 0; i < 3000; ++i) {
            const Vec2 q{coord(rng), coord(rng)};
            CHECK(dist(apply_F_inv(apply_F(q, map), map), q) < 1e-10);
            CHECK(dist(apply_F(apply_F_inv(q, map), map), q) < 1e-10);
            // S conjugates F and F^{-1}
            CHECK(dist(sym_S(apply_F(sym_S(q), map)), apply_F_inv(q, map)) < 1e-10);
        }
    }
}

TEST_CASE("commutation with R and reversibility") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (const double theta : {kPi / 10.0, 0.6}) {
        const MapF map = build_map(params_from_theta(theta));
        for (int i = 0; i < 3000; ++i) {
            const Vec2 q{coord(rng), coord(rng)};
            CHECK(dist(apply_F(sym_R(q), map), sym_R(apply_F(q, map))) < 1e-12);
            CHECK(dist(sym_S(apply_F(sym_S(apply_F(q, map)), map)), q) < 1e-10);
            CHECK(dist(sym_T1(apply_F(sym_T1(apply_F(q, map)), map)), q) < 1e-10);
            CHECK(dist(sym_T2(apply_F(sym_T2(apply_F(q, map)), map)), q) < 1e-10);
        }
    }
}

TEST_CASE("continuity across break lines") {
    const MapF map = build_map(params_from_theta(kPi / 8.0));
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const auto& seg = map.partition.break_segments[i % 12];
        const Vec2 d = seg.b - seg.a;
        const Vec2 q = seg.a + (0.05 + 0.9 * unit(rng)) * d;
        const Vec2 n = Vec2{-d.y, d.x} / norm(d);
        CHECK(dist(apply_F(q + 1e-9 * n, map), apply_F(q - 1e-9 * n, map)) < 1e-7);
    }
}

TEST_CASE("jacobian returns the piece derivative and refuses break lines") {
    const Params p = params_from_theta(kPi / 8.0);
    const MapF map = build_map(p);

    const Mat2 ja = jacobian({0.5, 0.02}, map);
    CHECK(ja.a == 1.0);
    CHECK(ja.b == doctest::Approx(p.shear_c).epsilon(1e-15));
    CHECK(ja.c == 0.0);
    CHECK(ja.d == 1.0);

    const Mat2 jc = jacobian({0.5, 0.52}, map);
    CHECK(std::fabs(jc.det() - 1.0) < 1e-12);
    CHECK(jc.a == doctest::Approx(std::cos(p.alpha)).epsilon(1e-14));
    CHECK(jc.c == doctest::Approx(std::sin(p.alpha)).epsilon(1e-14));

    const Vec2 mid_e1p1{0.5 * p.s, 0.5 * p.t};
    CHECK_THROWS_AS(jacobian(mid_e1p1, map), BreakLineError);
}

TEST_CASE("jacobian agrees with finite differences away from break lines") {
    const MapF map = build_map(params_from_theta(kPi / 7.0));
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> coord(0.02, 0.98);
    const double h = 1e-6;
    int checked = 0;
    while (checked < 200) {
        const Vec2 q{coord(rng), coord(rng)};
        if (on_break_line(q, map.partition, 1e-4)) continue;
        const Mat2 j = jacobian(q, map);
        const Vec2 dx = (apply_F({q.x + h, q.y}, map) - apply_F({q.x - h, q.y}, map)) / (2.0 * h);
        const Vec2 dy = (apply_F({q.x, q.y + h}, map) - apply_F({q.x, q.y - h}, map)) / (2.0 * h);
        CHECK(std::fabs(dx.x - j.a) < 1e-6);
        CHECK(std::fabs(dy.x - j.b) < 1e-6);
        CHECK(std::fabs(dx.y - j.c) < 1e-6);
        CHECK(std::fabs(dy.y - j.d) < 1e-6);
        ++checked;
    }
}

TEST_CASE("quadratic form: levels and invariance under the hyperbolic piece") {
    const Params p = params_from_theta(kPi / 8.0);
    const QuadForm q = quad_form(p);
    CHECK(qb_value({0.0, 0.0}, q) == 0.0);
    const Vec2 p1{p.s, p.t}, p4{p.t, 1.0 - p.s};
    CHECK(std::fabs(qb_value(p4, q) - qb_value(p1, q)) < 1e-12);
    CHECK(q.level_c == doctest::Approx(qb_value(p1, q)).epsilon(1e-15));

    const MapF map = build_map(p);
    const auto triangle_b1 = map.partition.triangle(region_b(1));
    std::mt19937_64 rng(28);
    for (int i = 0; i < 100; ++i) {
        const Vec2 w = random_in_triangle(rng, triangle_b1);
        const Vec2 img = map.piece(region_b(1)).map(w);
        CHECK(std::fabs(qb_value(img, q) - qb_value(w, q)) < 1e-12);
    }
}

TEST_CASE("orbit traces: fixed points, boundary, interior winding") {
    const MapF map = build_map(params_from_theta(kPi / 8.0));

    const OrbitTrace at_centre = orbit({0.5, 0.5}, 50, map);
    for (const Vec2& q : at_centre.points) CHECK(dist(q, {0.5, 0.5}) < 1e-15);
    CHECK(at_centre.winding.back() == 0.0);

    const OrbitTrace on_boundary = orbit({0.37, 0.0}, 50, map);
    for (const Vec2& q : on_boundary.points) CHECK(q.y == 0.0);

    const OrbitTrace interior = orbit({0.9, 0.45}, 10000, map);
    CHECK(interior.winding.back() > 0.0);
    for (int k = 1; k <= interior.n(); ++k) {
        const double step = interior.winding[k] - interior.winding[k - 1];
        CHECK(step >= -1e-12);
        CHECK(step < kPi);
    }

    CHECK_THROWS_AS(orbit({1.5, 0.5}, 10, map), std::domain_error);
    CHECK_THROWS_AS(orbit({0.5, 0.5}, -1, map), std::domain_error);
}

TEST_CASE("Monte Carlo area of mapped triangles") {
    const MapF map = build_map(params_from_theta(kPi / 9.0));
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coord(0.05, 0.95);
    for (int trial = 0; trial < 3; ++trial) {
        std::array<Vec2, 3> tri;
        double area = 0.0;
        do {
            tri = {Vec2{coord(rng), coord(rng)}, Vec2{coord(rng), coord(rng)},
                   Vec2{coord(rng), coord(rng)}};
            area = 0.5 * cross(tri[1] - tri[0], tri[2] - tri[0]);
        } while (std::fabs(area) < 0.05);
        if (area < 0.0) std::swap(tri[1], tri[2]);
        area = std::fabs(area);

        // area(F(tri)) by sampling the square and pulling back through F^{-1}
        const int m = 200000;
        int inside = 0;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < m; ++i) {
            const Vec2 q{unit(rng), unit(rng)};
            const Vec2 back = apply_F_inv(q, map);
            if (oracles::in_triangle_barycentric(back, tri[0], tri[1], tri[2], 0.0)) ++inside;
        }
        const double estimate = static_cast<double>(inside) / m;
        const double sigma = std::sqrt(area * (1.0 - area) / m);
        CHECK(std::fabs(estimate - area) < 4.0 * sigma + 1e-4);
    }
}
