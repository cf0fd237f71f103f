#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pwa/geometry.hpp"

using namespace pwa;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("params at pi/8 hit the closed-form values") {
    const Params p = params_from_theta(kPi / 8.0);
    CHECK(p.t == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-15));
    CHECK(p.s == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-15));
    CHECK(std::fabs(p.alpha - kPi / 4.0) < 1e-15);
    CHECK(p.shear_c == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("params at pi/6") {
    const Params p = params_from_theta(kPi / 6.0);
    CHECK(p.t == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.s == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-15));
    CHECK(p.t - p.t * p.t == doctest::Approx(0.1875).epsilon(1e-14));
    CHECK(p.s * p.s == doctest::Approx(0.1875).epsilon(1e-14));
}

TEST_CASE("theta window is enforced") {
    CHECK_THROWS_AS(params_from_theta(0.0), std::domain_error);
    CHECK_THROWS_AS(params_from_theta(1e-7), std::domain_error);
    CHECK_THROWS_AS(params_from_theta(kPi / 4.0), std::domain_error);
    CHECK_THROWS_AS(params_from_theta(kPi / 3.0), std::domain_error);
    CHECK_THROWS_AS(params_from_theta(-0.1), std::domain_error);
    CHECK_NOTHROW(params_from_theta(kThetaMin));
    CHECK_NOTHROW(params_from_theta(theta_max()));
}

TEST_CASE("parameter identities over random theta") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(kThetaMin, theta_max());
    for (int i = 0; i < 1000; ++i) {
        const double theta = th(rng);
        const Params p = params_from_theta(theta);
        const double sn = std::sin(theta);
        CHECK(std::fabs(p.t - sn * sn) < 1e-14);
        CHECK(std::fabs(p.t - p.t * p.t - p.s * p.s) < 1e-14);
        CHECK(p.shear_c > 0.0);
        CHECK(std::fabs(p.alpha - (kPi / 2.0 - 2.0 * theta)) < 1e-15);
    }
}

TEST_CASE("partition vertices at pi/8") {
    const Partition part = build_partition(params_from_theta(kPi / 8.0));
    CHECK(part.P[0].x == doctest::Approx(0.35355339059327379).epsilon(1e-15));
    CHECK(part.P[0].y == doctest::Approx(0.14644660940672624).epsilon(1e-15));
    // P4 = (t, 1-s), the quarter-turn image of P1 applied three times
    CHECK(part.P[3].x == doctest::Approx(0.14644660940672624).epsilon(1e-14));
    CHECK(part.P[3].y == doctest::Approx(0.64644660940672627).epsilon(1e-14));
    CHECK(part.Pp[0].x == doctest::Approx(0.64644660940672627).epsilon(1e-15));
    // P'_1 shares the y-coordinate of P_1 exactly by construction
    CHECK(part.Pp[0].y == part.P[0].y);

    for (int i = 0; i < 3; ++i) {
        CHECK(dist(part.P[i + 1], sym_R(part.P[i])) == 0.0);
        CHECK(dist(part.Pp[i + 1], sym_R(part.Pp[i])) == 0.0);
    }
    // wrap-around closes up to the rounding of 1 - (1 - x)
    CHECK(dist(part.P[0], sym_R(part.P[3])) < 1e-15);
    CHECK(dist(part.Pp[0], sym_R(part.Pp[3])) < 1e-15);
}

TEST_CASE("the nine regions tile the square") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> th(0.05, theta_max() - 0.05);
    for (int trial = 0; trial < 25; ++trial) {
        const Partition part = build_partition(params_from_theta(th(rng)));
        double area = part.region_area(region_c());
        for (int i = 1; i <= 4; ++i) {
            area += part.region_area(region_a(i));
            area += part.region_area(region_b(i));
        }
        CHECK(std::fabs(area - 1.0) < 1e-12);
        // tiling identity for the centre piece
        const double c_area = 1.0 - 4.0 * part.region_area(region_a(1)) -
                              4.0 * part.region_area(region_b(1));
        CHECK(part.region_area(region_c()) == doctest::Approx(c_area).epsilon(1e-12));
    }
}

TEST_CASE("classification of landmark points") {
    const Partition part = build_partition(params_from_theta(kPi / 8.0));
    CHECK(classify({0.5, 0.5}, part) == region_c());
    CHECK(classify({0.5, 0.01}, part) == region_a(1));
    // P1 is a vertex of C, B1, B2 and A1; the priority rule picks C
    CHECK(classify(part.P[0], part) == region_c());
    // boundary points go to the adjacent A_i
    CHECK(classify({0.3, 0.0}, part) == region_a(1));
    CHECK(classify({1.0, 0.4}, part) == region_a(2));
    CHECK(classify({0.2, 1.0}, part) == region_a(3));
    CHECK(classify({0.0, 0.7}, part) == region_a(4));
    CHECK(classify({0.0, 0.0}, part) == region_a(1));

    CHECK_THROWS_AS(classify({1.1, 0.5}, part), std::domain_error);
    CHECK_THROWS_AS(classify({0.5, -0.2}, part), std::domain_error);
}

TEST_CASE("classifier agrees with the barycentric oracle off break lines") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (const double theta : {kPi / 8.0, kPi / 11.0, 0.7}) {
        const Partition part = build_partition(params_from_theta(theta));
        int checked = 0;
        while (checked < 2000) {
            const Vec2 q{coord(rng), coord(rng)};
            if (on_break_line(q, part, 1e-9)) continue;
            const auto claims = oracles::claimants(q, part, 0.0);
            if (claims.size() != 1) continue;  // within fp slack of a boundary
            CHECK(classify(q, part) == claims.front());
            ++checked;
        }
    }
}

TEST_CASE("every point is claimed under the priority rule") {
    const Partition part = build_partition(params_from_theta(kPi / 7.0));
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const Vec2 q{coord(rng), coord(rng)};
        CHECK_NOTHROW(classify(q, part));
        CHECK(!oracles::claimants(q, part).empty());
    }
}

TEST_CASE("classification commutes with the quarter turn") {
    const Partition part = build_partition(params_from_theta(kPi / 9.0));
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    int checked = 0;
    while (checked < 2000) {
        const Vec2 q{coord(rng), coord(rng)};
        const Vec2 rq = sym_R(q);
        if (on_break_line(q, part, 1e-9) || on_break_line(rq, part, 1e-9)) continue;
        if (q.x == 0.0 || q.x == 1.0 || q.y == 0.0 || q.y == 1.0) continue;
        const RegionId a = classify(q, part);
        const RegionId b = classify(rq, part);
        CHECK(a.kind == b.kind);
        if (a.kind != RegionKind::C) CHECK(b.index == cyclic_next(a.index));
        ++checked;
    }
}

TEST_CASE("break-line predicate") {
    const Partition part = build_partition(params_from_theta(kPi / 8.0));
    const Vec2 p1 = part.P[0];
    CHECK(on_break_line({0.5 * p1.x, 0.5 * p1.y}, part));  // midpoint of E1P1
    CHECK(on_break_line(p1, part));
    CHECK_FALSE(on_break_line({0.5, 0.02}, part));
    CHECK_FALSE(on_break_line({0.5, 0.5}, part));
}

TEST_CASE("partition debug dump lists all vertices") {
    const Partition part = build_partition(params_from_theta(kPi / 8.0));
    const std::string dump = dump_partition(part);
    CHECK(dump.find("E1 0 0") != std::string::npos);
    CHECK(dump.find("P1 ") != std::string::npos);
    CHECK(dump.find("Pp4 ") != std::string::npos);
    CHECK(dump.find("Z 0.5 0.5") != std::string::npos);
}

TEST_CASE("symmetry operators are involutions / quarter turns") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 q{coord(rng), coord(rng)};
        Vec2 r4 = q;
        for (int k = 0; k < 4; ++k) r4 = sym_R(r4);
        CHECK(dist(r4, q) < 1e-15);
        CHECK(dist(sym_S(sym_S(q)), q) == 0.0);
        CHECK(dist(sym_T1(sym_T1(q)), q) < 1e-15);
        CHECK(dist(sym_T2(sym_T2(q)), q) < 1e-15);
        CHECK(dist(sym_R_inv(sym_R(q)), q) < 1e-15);
    }
}
