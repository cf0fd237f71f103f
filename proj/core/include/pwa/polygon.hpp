#pragma once

#include <optional>
#include <vector>

#include "pwa/geometry.hpp"
#include "pwa/vec.hpp"

namespace pwa {

/// Angle of p as seen from centre, in [0, 2*pi).
double polar_angle(Vec2 p, Vec2 centre = {0.5, 0.5});

/// Sort points counter-clockwise about centre.
void sort_ccw(std::vector<Vec2>& pts, Vec2 centre = {0.5, 0.5});

/// Closed polygon encircling a centre point, with an angular index for
/// radial queries. Star-shapedness (every ray from the centre meets the
/// boundary once) is established at construction and reported, not assumed.
class StarPolygon {
public:
    explicit StarPolygon(std::vector<Vec2> vertices, Vec2 centre = {0.5, 0.5});

    const std::vector<Vec2>& vertices() const { return verts_; }
    Vec2 centre() const { return centre_; }
    bool star_shaped() const { return star_; }
    int edge_count() const { return static_cast<int>(verts_.size()); }
    double perimeter() const { return perimeter_; }

    /// Distance from p to the polygon boundary. For star-shaped polygons the
    /// search is restricted to the edges around p's angular sector, which
    /// never underestimates the true distance.
    double distance(Vec2 p) const;

    /// True when p lies radially inside the boundary (star-shaped only).
    bool contains(Vec2 p) const;

    /// Point at arc-length position s along the boundary, s in [0, perimeter).
    Vec2 at_arclength(double s) const;

private:
    std::vector<Vec2> verts_;
    std::vector<double> angles_;  // unwrapped vertex angles, angles_[0] in [0, 2pi)
    std::vector<double> cumlen_;
    Vec2 centre_;
    double perimeter_ = 0.0;
    bool star_ = false;

    int sector_of(double ang) const;
    double edge_distance(Vec2 p, int edge) const;
};

/// Number of genuine corners: vertices where the incoming and outgoing unit
/// edge directions differ by more than turn_tol in |sine of turn angle|.
int count_corners(const std::vector<Vec2>& poly, double turn_tol = 1e-6);

/// Proper or endpoint intersection of two segments within eps; nullopt when
/// the segments miss each other.
std::optional<Vec2> segment_intersection(const Segment& s1, const Segment& s2,
                                         double eps = 1e-12);

/// Membership in a convex quad given counter-clockwise, boundary-inclusive.
bool point_in_convex_quad(Vec2 p, const std::array<Vec2, 4>& quad, double eps = kGeoEps);

}  // namespace pwa
