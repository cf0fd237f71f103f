#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pwa/geometry.hpp"
#include "pwa/map.hpp"
#include "pwa/polygon.hpp"
#include "pwa/vec.hpp"

namespace pwa {

/// Spectral decomposition of the hyperbolic piece B.
///
/// f(t) = sqrt(1 - 4t^2); the eigendirections are v1 = (1+f, 2t) with
/// eigenvalue lambda > 1 and v2 = (2t, 1+f) with eigenvalue 1/lambda.
/// p4_coords / p1_coords are the coordinates of P_4 and P_1 in the (v1, v2)
/// basis; ratio is the quotient of their expanding coordinates, which equals
/// lambda^K exactly when B maps E_1P_4 onto E_1P_1 in K steps.
struct SpectralData {
    double f = 0.0;
    double lambda = 0.0;
    Vec2 v1, v2;
    Vec2 p4_coords, p1_coords;
    double ratio = 0.0;
};

SpectralData spectral(const Params& p);

/// K(t) = log(x2/x1) / log(lambda): the (real-valued) number of B-steps
/// carrying E_1P_4 to E_1P_1. Continuous on (0, 1/2) with K -> 2 as t -> 0
/// and K -> infinity as t -> 1/2. Throws std::domain_error at the endpoints.
double K_of_t(double t);

/// Solve K(t) = K by bracket expansion from [0.05, 0.499] and bisection on
/// t, run to full double precision. The root is certified a posteriori by
/// |B^K(P_4) - P_1| < 1e-9. Throws std::domain_error for K < 3, SearchError
/// on bracket failure, CertificationError when the certificate fails.
Params solve_theta_K(int K);

/// Y_N = (s, t) / (1 + N(1 - 2s)): the point of E_1P_1 that reaches E_2P_1
/// in exactly N shear steps. Forward-certified against the shear power.
Vec2 y_point(const Params& p, int N);

/// X_N = B^{-K}(Y_N) on E_1P_4, valid when p solves K(t) = K. Certified to
/// lie on E_1P_4 within 1e-9 and to share the Q_B level of Y_N within 1e-10;
/// throws CertificationError otherwise (p is then not a theta_K root).
Vec2 x_point(const Params& p, int K, int N);

struct Rational {
    long long num = 0;
    long long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Closed polygon representing an invariant circle encircling Z.
struct PolyCircle {
    std::vector<Vec2> vertices;  // counter-clockwise about Z
    double rho = 0.0;
    std::optional<Rational> rho_exact;
    std::optional<int> K, N;  // set when built from the special-parameter construction
};

/// Periodic cancellation orbit traced through B_1 (K steps) and A_1
/// (N steps), of period 4(K+N). u_hits / v_hits are the step indices where
/// the orbit lies on a spoke E_iP_i resp. E_{i+1}P_i.
struct CancellationOrbit {
    int K = 0;
    int N = 0;
    Vec2 X, Y;                 // start on E_1P_4, transfer point on E_1P_1
    std::vector<Vec2> points;  // one full period, points[0] = X
    std::vector<int> u_hits;
    std::vector<int> v_hits;
};

/// Construct and certify the cancellation orbit of Gamma_K^N. Verifies
/// F^K(X) = Y and F^{K+N}(X) = R(X) within 1e-9, exact period 4(K+N), and
/// alternation of U/V hits; throws CertificationError on any failure.
CancellationOrbit cancellation_orbit(const Params& p, int K, int N);

/// The invariant polygon Gamma_K^N through X_N, with exactly 4(K+N)
/// vertices and exact rotation number 1/(4(K+N)) attached as a rational.
/// Throws CertificationError with the measured gap when the orbit fails to
/// close within 1e-8.
PolyCircle build_gamma(const Params& p, int K, int N);

struct CircleReport {
    double max_residual = 0.0;        // max distance of F(sample) to the polygon
    bool order_preserved = false;     // circular order of sample angles kept by F
    double r_invariance = 0.0;        // max distance of R(vertex) to the polygon
    bool star_shaped = false;
    bool simple = false;
    int samples = 0;
    bool passed = false;              // max_residual <= tol
};

/// Sample the polygon boundary, push each sample through F and measure the
/// distance back to the polygon; also reports order preservation and the
/// R-invariance residual. Failures are carried in the report, not thrown.
CircleReport verify_invariant_circle(const PolyCircle& circle, const MapF& map,
                                     int samples = 1000, double tol = 1e-8);

struct CancellationReport {
    std::array<Vec2, 4> U{}, V{};              // U_i on E_iP_i, V_i on E_{i+1}P_i
    std::array<bool, 4> u_meets_v{}, v_meets_u{};
    bool all_u_meet_v = false;
    bool alternating = false;                   // U/V hits alternate along each orbit
    std::optional<int> u1_period;               // recurrence step of U_1, when found
};

/// Locate the break-line intersections of an invariant circle disjoint from
/// the centre piece and track their orbits. Throws GeometryError when an
/// intersection cannot be found. max_iter = 0 picks a bound from the circle.
CancellationReport check_cancellation(const PolyCircle& circle, const MapF& map,
                                      int max_iter = 0, double tol = 1e-8);

/// Winding estimate total-angle / (2 pi n). A trace that closes up within
/// 1e-8 is treated as one full period and yields the exact fraction
/// windings/steps. Constant traces (fixed points, boundary) return 0;
/// any other trace touching the boundary is unusable and throws.
double rotation_number(const OrbitTrace& trace);

struct FoliationSample {
    Vec2 w;                  // sample point on E_1P_1
    double u = 0.0;          // normalized position between the two bounding circles
    double rho = 0.0;
    std::optional<Rational> rho_exact;
    double residual = 0.0;   // invariance residual of the reconstructed polygon
    double orbit_residual = 0.0;  // max distance of the orbit to the polygon
    int corners = 0;
    bool ok = false;
    std::vector<Vec2> polygon;  // reconstructed circle through w
};

/// Scan the annulus between Gamma_K^N and Gamma_K^{N+1}: for `resolution`
/// points W on E_1P_1 between the two circles, reconstruct the invariant
/// polygon through W from its break-line kinks (the forward B-images of
/// B^{-K}(W), rotated to all four quadrants), certify it, and estimate the
/// rotation number. Certification failures are reported per sample.
std::vector<FoliationSample> foliation_scan(const Params& p, int K, int N, int resolution);

/// Quadrangle spanned by consecutive cancellation-orbit points on two
/// adjacent circles: corners X, Y on E_1P_1 and their images F(Y), F(X).
/// d1 = (X, F(Y), F(X)) and d2 = (X, Y, F(Y)) are the two affine cells of
/// the induced map to the rotated quadrangle.
struct ReturnCell {
    int K = 0;
    int N = 0;
    std::array<Vec2, 4> quad;  // X, Y, F(Y), F(X), counter-clockwise
    std::array<Vec2, 3> d1;
    std::array<Vec2, 3> d2;
};

ReturnCell make_return_cell(const Params& p, int K, int N);

/// Membership in the cell, counting the entry edge XY but not the exit edge
/// F(X)F(Y), so that first-return times are well defined on the closure.
bool point_in_cell(const ReturnCell& cell, Vec2 p);

struct ReturnMapReport {
    double d1_residual = 0.0;   // vertex-map residual of F^{K+N} on d1
    double d2_residual = 0.0;   // vertex-map residual of F^{K+N+1} on d2
    double max_y_drift = 0.0;   // worst |y(first return) - y| over the samples
    int samples = 0;
    std::vector<int> return_steps;
};

/// Check the d1/d2 affine-image identities and, for `samples` random points
/// of the cell, that the first return of F to the cell preserves the
/// y-coordinate. Throws SearchError when a return is not found within
/// 8(K+N+2) iterates.
ReturnMapReport return_map_check(const ReturnCell& cell, const MapF& map,
                                 int samples = 100, unsigned long long rng_seed = 2024);

}  // namespace pwa
