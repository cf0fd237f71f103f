#include "pwa/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pwa {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed area of the triangle (a, b, c); positive when counter-clockwise.
double orient(Vec2 a, Vec2 b, Vec2 c) {
    return cross(b - a, c - a);
}

bool in_triangle(Vec2 p, const std::array<Vec2, 3>& tri, double eps) {
    return orient(tri[0], tri[1], p) >= -eps &&
           orient(tri[1], tri[2], p) >= -eps &&
           orient(tri[2], tri[0], p) >= -eps;
}

bool in_quad(Vec2 p, const std::array<Vec2, 4>& q, double eps) {
    for (int i = 0; i < 4; ++i) {
        if (orient(q[i], q[(i + 1) % 4], p) < -eps) return false;
    }
    return true;
}

double shoelace(const Vec2* v, int n) {
    double a = 0.0;
    for (int i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
    return 0.5 * a;
}

RegionId classify_impl(Vec2 pt, const Partition& part, bool primed) {
    if (pt.x < -kGeoEps || pt.x > 1.0 + kGeoEps || pt.y < -kGeoEps || pt.y > 1.0 + kGeoEps) {
        throw std::domain_error("classify: point outside the closed unit square");
    }
    // Points on the square boundary belong to the adjacent A_i, lowest index
    // first at the corners (the B_i corner wedges also touch the boundary).
    if (pt.y <= kGeoEps) return region_a(1);
    if (pt.x >= 1.0 - kGeoEps) return region_a(2);
    if (pt.y >= 1.0 - kGeoEps) return region_a(3);
    if (pt.x <= kGeoEps) return region_a(4);
    // Priority: C first, then B_1..B_4, then A_1..A_4. All membership tests
    // are boundary-inclusive, so the first claimant wins.
    if (in_quad(pt, part.centre_square(primed), kGeoEps)) return region_c();
    for (int i = 1; i <= 4; ++i) {
        if (in_triangle(pt, part.triangle(region_b(i), primed), kGeoEps)) return region_b(i);
    }
    for (int i = 1; i <= 4; ++i) {
        if (in_triangle(pt, part.triangle(region_a(i), primed), kGeoEps)) return region_a(i);
    }
    // Tiling plus inclusive tests make this unreachable for in-square points.
    throw std::domain_error("classify: point not claimed by any region");
}

}  // namespace

double theta_max() { return kPi / 4.0 - 1e-6; }

Params params_from_theta(double theta) {
    if (!(theta >= kThetaMin && theta <= theta_max())) {
        throw std::domain_error("params_from_theta: theta outside [1e-6, pi/4 - 1e-6]");
    }
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    Params p;
    p.theta = theta;
    p.t = sn * sn;
    p.s = sn * cs;
    p.alpha = kPi / 2.0 - 2.0 * theta;
    p.shear_c = (1.0 - 2.0 * p.s) / p.t;
    return p;
}

std::string region_name(RegionId id) {
    switch (id.kind) {
        case RegionKind::A: return "A" + std::to_string(id.index);
        case RegionKind::B: return "B" + std::to_string(id.index);
        case RegionKind::C: return "C";
    }
    return "?";
}

double point_segment_distance(Vec2 p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.a);
    double u = dot(p - s.a, d) / len2;
    u = std::clamp(u, 0.0, 1.0);
    return dist(p, s.a + u * d);
}

std::array<Vec2, 3> Partition::triangle(RegionId id, bool primed) const {
    const auto& inner = primed ? Pp : P;
    const int i = id.index;       // 1-based
    const int i0 = i - 1;
    switch (id.kind) {
        case RegionKind::A:
            return {E[i0], E[cyclic_next(i) - 1], inner[i0]};
        case RegionKind::B:
            return {E[i0], inner[i0], inner[cyclic_prev(i) - 1]};
        case RegionKind::C:
            break;
    }
    throw std::domain_error("triangle: region C is not a triangle");
}

std::array<Vec2, 4> Partition::centre_square(bool primed) const {
    return primed ? Pp : P;
}

double Partition::region_area(RegionId id) const {
    if (id.kind == RegionKind::C) {
        const auto q = centre_square();
        return shoelace(q.data(), 4);
    }
    const auto tri = triangle(id);
    return shoelace(tri.data(), 3);
}

Partition build_partition(const Params& p) {
    Partition part;
    part.params = p;
    part.E = {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{1.0, 1.0}, Vec2{0.0, 1.0}};
    part.P[0] = {p.s, p.t};
    part.Pp[0] = {1.0 - p.s, p.t};  // same y-coordinate as P_1
    for (int i = 1; i < 4; ++i) {
        part.P[i] = sym_R(part.P[i - 1]);
        part.Pp[i] = sym_R(part.Pp[i - 1]);
    }
    // 8 spokes E_i P_i and E_{i+1} P_i, then the 4 sides of C.
    for (int i = 0; i < 4; ++i) {
        part.break_segments[2 * i] = {part.E[i], part.P[i]};
        part.break_segments[2 * i + 1] = {part.E[(i + 1) % 4], part.P[i]};
        part.break_segments[8 + i] = {part.P[i], part.P[(i + 1) % 4]};
    }
    return part;
}

RegionId classify(Vec2 pt, const Partition& part) { return classify_impl(pt, part, false); }

RegionId classify_primed(Vec2 pt, const Partition& part) { return classify_impl(pt, part, true); }

bool on_break_line(Vec2 pt, const Partition& part, double tol) {
    for (const auto& seg : part.break_segments) {
        if (point_segment_distance(pt, seg) <= tol) return true;
    }
    return false;
}

std::string dump_partition(const Partition& part) {
    std::ostringstream os;
    os.precision(17);
    auto emit = [&os](const std::string& label, Vec2 v) {
        os << label << ' ' << v.x << ' ' << v.y << '\n';
    };
    for (int i = 0; i < 4; ++i) emit("E" + std::to_string(i + 1), part.E[i]);
    for (int i = 0; i < 4; ++i) emit("P" + std::to_string(i + 1), part.P[i]);
    for (int i = 0; i < 4; ++i) emit("Pp" + std::to_string(i + 1), part.Pp[i]);
    emit("Z", part.Z);
    return os.str();
}

Affine affine_R() {
    return {Mat2{0.0, -1.0, 1.0, 0.0}, Vec2{1.0, 0.0}};
}

Affine affine_R_inv() {
    return {Mat2{0.0, 1.0, -1.0, 0.0}, Vec2{0.0, 1.0}};
}

}  // namespace pwa
