#pragma once
/**
 * @file region.hpp
 * @brief Boundary curves of the admissible-parameter region in the
 *        traceless-diagonal plane.
 *
 * For fixed circulant part (a, b, c) the remaining freedom is the Birkhoff
 * triple (d, e, f) with d + e + f = 0, coordinatized in polar form
 *
 *     d = sqrt(2/3) r cos(phi),
 *     e = sqrt(2/3) r cos(phi + 2pi/3),
 *     f = sqrt(2/3) r cos(phi - 2pi/3),
 *
 * where r is the Euclidean norm in the plane.  Four curve families bound
 * the region where the map stays positive (and where it turns CP):
 *
 *  - the vertex triangle W_ii >= 1 (equilateral, circumradius sqrt(6) mu
 *    with mu = min(a-1, b, c));
 *  - three "bean" arcs where an edge condition saturates (a quartic in r
 *    per direction, folded and mirrored into a single arc per pair);
 *  - the Hessian circle r = (w - g)/sqrt(6) bounding the concavity gate;
 *  - for a > 3, the boundary of complete positivity (a cubic in r).
 *
 * All radii returned here are in the plane units above; the Cartesian
 * embedding rotates by +pi/2 so the d-axis points up.
 */

#include <array>
#include <string>
#include <vector>

#include "wmap/map_model.hpp"

namespace wmap {

/// One polar sample; r = NaN marks a gap in the curve.
struct ArcSample {
    double phi = 0;
    double r = 0;
};

/// Vertex triangle as a closed Cartesian polyline.
struct Triangle {
    bool empty = false;  ///< mu <= 0: no vertex-admissible set
    double mu = 0;       ///< min(a-1, b, c)
    std::vector<std::array<double, 2>> points;  ///< closed: front() == back()
};

/// One CP-boundary sample: smallest positive root of the cubic (raw_r, NaN
/// when none) and the plotted value clamped to the vertex triangle.
struct CpSample {
    double phi = 0;
    double raw_r = 0;
    double r = 0;
    bool clamped = false;
};

struct RegionConfig {
    int arc_samples = 201;  ///< samples over the native half-range; odd
    int circle_samples = 601;
    int cp_samples = 601;
    int triangle_samples_per_edge = 40;
};

struct RegionCurves {
    double a = 0, b = 0, c = 0;
    double w = 0;  ///< a + b + c
    Triangle triangle;
    double hessian_radius = 0;  ///< negative value marks an empty circle
    std::vector<ArcSample> arc;  ///< assembled arc, phi in [2pi/3, 4pi/3]
    std::vector<CpSample> cp;    ///< empty marker: all raw_r NaN when a <= 3
};

double triangle_mu(double a, double b, double c);

/// Closed polyline through the vertices at phi = 0, 2pi/3, 4pi/3 and
/// radius sqrt(6) mu.  Empty (no points) when mu <= 0.
Triangle triangle(double a, double b, double c, int samples_per_edge = 40);

/// (w - g)/sqrt(6) with g = sqrt((a-2b-2c)^2 + 3(b-c)^2); may be negative
/// (empty-circle marker).
double hessian_radius(double a, double b, double c);

/// Radius of the edge-(0,1) saturation curve for each angle in [phi0,phi1]
/// (n samples): smallest positive quartic root that satisfies the
/// un-squared saturation equation (residual below tol.eps_root) and lies
/// inside the vertex triangle; NaN when none qualifies.
std::vector<ArcSample> bean_arc_raw(double a, double b, double c, double phi0,
                                    double phi1, int n,
                                    const Tolerance& tol = {});

/// Assembled arc over [2pi/3, 4pi/3]: the raw curve on [pi/3, pi] is folded
/// about phi = 2pi/3 (pointwise NaN-aware minimum of the native branch and
/// the prolonged neighbor branch) and the folded half is mirrored about
/// phi = pi.  n must be odd.
std::vector<ArcSample> bean_arc(double a, double b, double c, int n = 201,
                                const Tolerance& tol = {});

/// Complete-positivity boundary samples on n angles over [0, 2pi].  All
/// raw_r are NaN when a <= 3 (no CP region in the plane).
std::vector<CpSample> cp_boundary(double a, double b, double c, int n = 601,
                                  const Tolerance& tol = {});

RegionCurves assemble_region(double a, double b, double c,
                             const RegionConfig& cfg = {},
                             const Tolerance& tol = {});

/// Cartesian embedding (d-axis up): x = r cos(phi + pi/2), y = r sin(phi + pi/2).
std::array<double, 2> plane_xy(double phi, double r);

/// CSV with columns phi,r,x,y,curve; gap samples carry "nan".  The three
/// arcs appear as curve ids arc1..arc3 (arc2/arc3 are the +-2pi/3 rotations
/// of the assembled arc).
std::string region_to_csv(const RegionCurves& rc);

/// JSON document with all curves; gaps serialize as null.
std::string region_to_json(const RegionCurves& rc);

/// Standalone SVG (fixed viewBox, 3-decimal coordinates, one path per
/// curve family with class names triangle/arc/circle/cp).
std::string region_to_svg(const RegionCurves& rc);

}  // namespace wmap
