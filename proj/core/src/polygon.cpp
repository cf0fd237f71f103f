#include "pwa/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwa {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double polar_angle(Vec2 p, Vec2 centre) {
    double a = std::atan2(p.y - centre.y, p.x - centre.x);
    if (a < 0.0) a += kTwoPi;
    return a;
}

void sort_ccw(std::vector<Vec2>& pts, Vec2 centre) {
    std::sort(pts.begin(), pts.end(), [centre](Vec2 a, Vec2 b) {
        return polar_angle(a, centre) < polar_angle(b, centre);
    });
}

StarPolygon::StarPolygon(std::vector<Vec2> vertices, Vec2 centre)
    : verts_(std::move(vertices)), centre_(centre) {
    const int n = static_cast<int>(verts_.size());
    if (n < 3) throw std::invalid_argument("StarPolygon: need at least 3 vertices");

    angles_.resize(n + 1);
    angles_[0] = polar_angle(verts_[0], centre_);
    star_ = true;
    double unwrapped = angles_[0];
    for (int i = 1; i <= n; ++i) {
        const Vec2 a = verts_[(i - 1) % n], b = verts_[i % n];
        if (cross(a - centre_, b - centre_) <= 0.0) star_ = false;
        double step = polar_angle(b, centre_) - polar_angle(a, centre_);
        if (step <= 0.0) step += kTwoPi;
        unwrapped += step;
        angles_[i] = unwrapped;
    }
    // One full counter-clockwise turn, no more.
    if (std::fabs(angles_[n] - angles_[0] - kTwoPi) > 1e-9) star_ = false;

    cumlen_.resize(n + 1);
    cumlen_[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        cumlen_[i + 1] = cumlen_[i] + dist(verts_[i], verts_[(i + 1) % n]);
    }
    perimeter_ = cumlen_[n];
}

int StarPolygon::sector_of(double ang) const {
    const int n = edge_count();
    double a = ang;
    while (a < angles_[0]) a += kTwoPi;
    while (a >= angles_[0] + kTwoPi) a -= kTwoPi;
    const auto it = std::upper_bound(angles_.begin(), angles_.end(), a);
    int idx = static_cast<int>(it - angles_.begin()) - 1;
    return std::clamp(idx, 0, n - 1);
}

double StarPolygon::edge_distance(Vec2 p, int edge) const {
    const int n = edge_count();
    const int i = ((edge % n) + n) % n;
    return point_segment_distance(p, Segment{verts_[i], verts_[(i + 1) % n]});
}

double StarPolygon::distance(Vec2 p) const {
    const int n = edge_count();
    if (!star_ || n <= 8) {
        double best = edge_distance(p, 0);
        for (int i = 1; i < n; ++i) best = std::min(best, edge_distance(p, i));
        return best;
    }
    const int sec = sector_of(polar_angle(p, centre_));
    double best = edge_distance(p, sec);
    for (int off = 1; off <= 3; ++off) {
        best = std::min(best, edge_distance(p, sec - off));
        best = std::min(best, edge_distance(p, sec + off));
    }
    return best;
}

bool StarPolygon::contains(Vec2 p) const {
    const int n = edge_count();
    const int sec = sector_of(polar_angle(p, centre_));
    // p is inside iff it lies on the centre side of the sector's edge.
    const Vec2 a = verts_[sec], b = verts_[(sec + 1) % n];
    return cross(b - a, p - a) * cross(b - a, centre_ - a) >= 0.0;
}

Vec2 StarPolygon::at_arclength(double s) const {
    const int n = edge_count();
    double v = std::fmod(s, perimeter_);
    if (v < 0.0) v += perimeter_;
    const auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), v);
    int i = std::clamp(static_cast<int>(it - cumlen_.begin()) - 1, 0, n - 1);
    const double seg = cumlen_[i + 1] - cumlen_[i];
    const double u = seg > 0.0 ? (v - cumlen_[i]) / seg : 0.0;
    return verts_[i] + u * (verts_[(i + 1) % n] - verts_[i]);
}

int count_corners(const std::vector<Vec2>& poly, double turn_tol) {
    const int n = static_cast<int>(poly.size());
    if (n < 3) return 0;
    int corners = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2 ein = poly[i] - poly[(i + n - 1) % n];
        const Vec2 eout = poly[(i + 1) % n] - poly[i];
        const double ni = norm(ein), no = norm(eout);
        if (ni == 0.0 || no == 0.0) continue;
        if (std::fabs(cross(ein, eout)) / (ni * no) > turn_tol) ++corners;
    }
    return corners;
}

std::optional<Vec2> segment_intersection(const Segment& s1, const Segment& s2, double eps) {
    const Vec2 d1 = s1.b - s1.a, d2 = s2.b - s2.a;
    const double denom = cross(d1, d2);
    const Vec2 r = s2.a - s1.a;
    if (std::fabs(denom) < 1e-15) {
        return std::nullopt;  // parallel (collinear overlap not needed here)
    }
    const double u = cross(r, d2) / denom;
    const double v = cross(r, d1) / denom;
    const double slack1 = eps / std::max(norm(d1), 1e-30);
    const double slack2 = eps / std::max(norm(d2), 1e-30);
    if (u < -slack1 || u > 1.0 + slack1 || v < -slack2 || v > 1.0 + slack2) {
        return std::nullopt;
    }
    return s1.a + std::clamp(u, 0.0, 1.0) * d1;
}

bool point_in_convex_quad(Vec2 p, const std::array<Vec2, 4>& quad, double eps) {
    for (int i = 0; i < 4; ++i) {
        if (cross(quad[(i + 1) % 4] - quad[i], p - quad[i]) < -eps) return false;
    }
    return true;
}

}  // namespace pwa
