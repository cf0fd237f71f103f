#pragma once

#include <array>
#include <vector>

#include "pwa/geometry.hpp"
#include "pwa/vec.hpp"

namespace pwa {

/// One affine piece of the map: p -> m*p + b on the source region src,
/// with image the primed region dst. Every piece has determinant 1.
struct AffinePiece {
    Affine map;
    RegionId src;
    RegionId dst;
};

/// The piecewise affine homeomorphism of the square for one parameter value.
///
/// The bottom pieces are
///   A = [[1, (1-2s)/t], [0, 1]]                       (shear fixing y = 0)
///   B = 1/(t-s) [[t^2-(1-s)^2, (1-2s)t],
///                [(2s-1)t,     (2t-1)t]]              (hyperbolic, fixes E_1)
///   C = [[2s, 2t-1], [1-2t, 2s]] + (1-t-s, t-s)       (rotation by alpha about Z)
/// and the pieces of index i > 1 are the conjugates R^{i-1} piece R^{-(i-1)},
/// which bakes the quarter-turn symmetry into the construction.
///
/// Immutable after build_map; all evaluation entry points are pure.
struct MapF {
    Params params;
    Partition partition;
    std::array<AffinePiece, 9> pieces;          // A1..A4, B1..B4, C
    std::array<AffinePiece, 9> inverse_pieces;  // indexed like pieces

    const AffinePiece& piece(RegionId id) const;
    const AffinePiece& inverse_piece(RegionId id) const;
};

MapF build_map(const Params& p);
inline MapF build_map(double theta) { return build_map(params_from_theta(theta)); }

/// Evaluate F. Points exactly on the square boundary are returned unchanged
/// (the boundary is pointwise fixed); interior results are clamped into the
/// closed square to absorb last-bit rounding.
Vec2 apply_F(Vec2 pt, const MapF& map);

/// Evaluate F^{-1} by direct piece inversion, classifying against the primed
/// partition. S-conjugation (S F S = F^{-1}) is kept as a test oracle only.
Vec2 apply_F_inv(Vec2 pt, const MapF& map);

/// Derivative at pt. Throws BreakLineError within kGeoEps of a break segment,
/// where dF genuinely has a discontinuity line.
Mat2 jacobian(Vec2 pt, const MapF& map);

/// The quadratic form Q_B(x, y) = t(x^2 + y^2) - xy preserved by the
/// hyperbolic piece, with its level through P_1 (= level through P_4).
struct QuadForm {
    double t = 0.0;
    double level_c = 0.0;
};

QuadForm quad_form(const Params& p);
inline double qb_value(Vec2 pt, const QuadForm& q) {
    return q.t * (pt.x * pt.x + pt.y * pt.y) - pt.x * pt.y;
}

/// Orbit segment with winding bookkeeping. points has n+1 entries;
/// winding[k] is the unwrapped polar angle about Z accumulated after k steps
/// (winding[0] = 0). Interior orbits advance counter-clockwise, one step
/// turning by at most alpha < pi/2.
struct OrbitTrace {
    std::vector<Vec2> points;
    std::vector<double> winding;

    int n() const { return static_cast<int>(points.size()) - 1; }
};

OrbitTrace orbit(Vec2 pt, int n, const MapF& map);

/// Signed angle at Z between the directions of a and b, in (-pi, pi].
double turn_about_centre(Vec2 a, Vec2 b, Vec2 centre = {0.5, 0.5});

}  // namespace pwa
