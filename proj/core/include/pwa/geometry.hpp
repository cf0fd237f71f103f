#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pwa/vec.hpp"

namespace pwa {

/// Absolute tolerance for geometric predicates. The pieces are well
/// conditioned away from the ends of the parameter window, so a fixed
/// absolute epsilon is adequate.
inline constexpr double kGeoEps = 1e-12;

/// Valid parameter window; the partition degenerates at 0 and pi/4.
inline constexpr double kThetaMin = 1e-6;
double theta_max();  // pi/4 - 1e-6

/// Parameter triple of the map family plus derived constants.
/// theta in (0, pi/4), t = sin^2(theta), s = sin(theta)cos(theta),
/// so that t - t^2 = s^2. alpha is the rotation angle of the centre piece,
/// shear_c the off-diagonal entry of the bottom shear piece.
struct Params {
    double theta = 0.0;
    double s = 0.0;
    double t = 0.0;
    double alpha = 0.0;    // pi/2 - 2*theta
    double shear_c = 0.0;  // (1 - 2s)/t  > 0
};

/// Throws std::domain_error unless theta is in [kThetaMin, pi/4 - 1e-6].
Params params_from_theta(double theta);

enum class RegionKind : std::uint8_t { A, B, C };

/// Identity of one of the nine pieces. Indices 1..4 are cyclic
/// (5 wraps to 1); the centre square carries index 0.
struct RegionId {
    RegionKind kind = RegionKind::C;
    int index = 0;

    bool operator==(const RegionId&) const = default;
};

inline RegionId region_a(int i) { return {RegionKind::A, i}; }
inline RegionId region_b(int i) { return {RegionKind::B, i}; }
inline RegionId region_c() { return {RegionKind::C, 0}; }

/// "A1", "B3", "C", ...
std::string region_name(RegionId id);

/// Next index in the cyclic order 1,2,3,4,1,...
inline int cyclic_next(int i) { return i == 4 ? 1 : i + 1; }
inline int cyclic_prev(int i) { return i == 1 ? 4 : i - 1; }

struct Segment {
    Vec2 a, b;
};

double point_segment_distance(Vec2 p, const Segment& s);

/// The nine-piece decomposition of the unit square for one parameter value.
///
/// E[i-1] are the corners E_i, P[i-1] the inner-square vertices P_i of the
/// source partition, Pp[i-1] the vertices P'_i of the image partition.
/// P_1 = (s, t), P'_1 = (1-s, t), and the remaining vertices are the
/// quarter-turn images of the first. break_segments holds the 8 spokes
/// E_iP_i / E_{i+1}P_i plus the 4 sides of the centre square.
struct Partition {
    Params params;
    std::array<Vec2, 4> E;
    std::array<Vec2, 4> P;
    std::array<Vec2, 4> Pp;
    Vec2 Z{0.5, 0.5};
    std::array<Segment, 12> break_segments;

    /// Vertices of triangle A_i or B_i (counter-clockwise).
    /// primed = true selects the image partition A'_i / B'_i.
    std::array<Vec2, 3> triangle(RegionId id, bool primed = false) const;

    /// Vertices of the centre square C (or C').
    std::array<Vec2, 4> centre_square(bool primed = false) const;

    double region_area(RegionId id) const;
};

Partition build_partition(const Params& p);

/// Region containing pt. On break lines ties are broken with the fixed
/// priority C > B_i > A_i, lowest index first; points on the square boundary
/// land in the adjacent A_i. Throws std::domain_error for points outside the
/// closed square (beyond kGeoEps).
RegionId classify(Vec2 pt, const Partition& part);

/// Same classifier against the image partition A'_i, B'_i, C'.
RegionId classify_primed(Vec2 pt, const Partition& part);

/// True when pt lies within tol of one of the 12 break segments.
bool on_break_line(Vec2 pt, const Partition& part, double tol = kGeoEps);

/// Plain-text vertex dump, one "label x y" line per vertex. Debug aid for
/// plotting; not a stability-guaranteed format.
std::string dump_partition(const Partition& part);

// Symmetries of the construction. R is the quarter turn about the centre,
// S the diagonal flip, T1/T2 the axis flips; F commutes with R and is
// reversible under S, T1, T2.
inline Vec2 sym_R(Vec2 p) { return {1.0 - p.y, p.x}; }
inline Vec2 sym_R_inv(Vec2 p) { return {p.y, 1.0 - p.x}; }
inline Vec2 sym_S(Vec2 p) { return {p.y, p.x}; }
inline Vec2 sym_T1(Vec2 p) { return {1.0 - p.x, p.y}; }
inline Vec2 sym_T2(Vec2 p) { return {p.x, 1.0 - p.y}; }

/// R as an affine map (for conjugating pieces).
Affine affine_R();
Affine affine_R_inv();

}  // namespace pwa
