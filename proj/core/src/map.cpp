#include "pwa/map.hpp"

#include <cmath>
#include <stdexcept>

#include "pwa/errors.hpp"

namespace pwa {

namespace {

int piece_slot(RegionId id) {
    switch (id.kind) {
        case RegionKind::A: return id.index - 1;
        case RegionKind::B: return 4 + id.index - 1;
        case RegionKind::C: return 8;
    }
    throw std::domain_error("piece_slot: bad region id");
}

bool on_boundary(Vec2 p) {
    return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

Vec2 clamp_square(Vec2 p) {
    return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
}

}  // namespace

const AffinePiece& MapF::piece(RegionId id) const { return pieces[piece_slot(id)]; }

const AffinePiece& MapF::inverse_piece(RegionId id) const {
    return inverse_pieces[piece_slot(id)];
}

MapF build_map(const Params& p) {
    MapF m;
    m.params = p;
    m.partition = build_partition(p);

    const double t = p.t, s = p.s;

    const Affine shear{Mat2{1.0, p.shear_c, 0.0, 1.0}, Vec2{0.0, 0.0}};
    const double d = t - s;  // negative on the whole parameter window
    const Affine hyper{Mat2{(t * t - (1.0 - s) * (1.0 - s)) / d, (1.0 - 2.0 * s) * t / d,
                            (2.0 * s - 1.0) * t / d, (2.0 * t - 1.0) * t / d},
                       Vec2{0.0, 0.0}};
    const Affine rot{Mat2{2.0 * s, 2.0 * t - 1.0, 1.0 - 2.0 * t, 2.0 * s},
                     Vec2{1.0 - t - s, t - s}};

    const Affine R = affine_R();
    const Affine Rinv = affine_R_inv();

    Affine conjA = shear, conjB = hyper;
    for (int i = 1; i <= 4; ++i) {
        m.pieces[piece_slot(region_a(i))] = {conjA, region_a(i), region_a(i)};
        m.pieces[piece_slot(region_b(i))] = {conjB, region_b(i), region_b(i)};
        conjA = R * conjA * Rinv;
        conjB = R * conjB * Rinv;
    }
    m.pieces[piece_slot(region_c())] = {rot, region_c(), region_c()};

    for (int k = 0; k < 9; ++k) {
        const AffinePiece& fwd = m.pieces[k];
        m.inverse_pieces[k] = {fwd.map.inverse(), fwd.dst, fwd.src};
    }
    return m;
}

Vec2 apply_F(Vec2 pt, const MapF& map) {
    if (on_boundary(pt)) return pt;  // F restricted to the boundary is the identity
    const RegionId id = classify(pt, map.partition);
    return clamp_square(map.piece(id).map(pt));
}

Vec2 apply_F_inv(Vec2 pt, const MapF& map) {
    if (on_boundary(pt)) return pt;
    const RegionId id = classify_primed(pt, map.partition);
    return clamp_square(map.inverse_piece(id).map(pt));
}

Mat2 jacobian(Vec2 pt, const MapF& map) {
    if (on_break_line(pt, map.partition)) {
        throw BreakLineError("jacobian: dF is discontinuous on break lines");
    }
    return map.piece(classify(pt, map.partition)).map.m;
}

QuadForm quad_form(const Params& p) {
    QuadForm q;
    q.t = p.t;
    q.level_c = qb_value(Vec2{p.s, p.t}, QuadForm{p.t, 0.0});
    return q;
}

double turn_about_centre(Vec2 a, Vec2 b, Vec2 centre) {
    const Vec2 u = a - centre, v = b - centre;
    return std::atan2(cross(u, v), dot(u, v));
}

OrbitTrace orbit(Vec2 pt, int n, const MapF& map) {
    if (n < 0) throw std::domain_error("orbit: negative iteration count");
    OrbitTrace tr;
    tr.points.reserve(n + 1);
    tr.winding.reserve(n + 1);
    tr.points.push_back(pt);
    tr.winding.push_back(0.0);
    Vec2 cur = pt;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const Vec2 nxt = apply_F(cur, map);
        acc += turn_about_centre(cur, nxt);
        tr.points.push_back(nxt);
        tr.winding.push_back(acc);
        cur = nxt;
    }
    return tr;
}

}  // namespace pwa
