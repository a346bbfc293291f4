// Rate regions in the nonnegative quadrant: convex polygons from half-plane
// systems (exact rational construction) and unions of such polygons.
//
// Every region handled here contains the origin, so unions of convex members
// are star-shaped about the origin; that property drives the union boundary
// walk and makes boundary sampling sound for Hausdorff estimates.
//
// Representation: `vertices` is the outer boundary, counterclockwise,
// starting at the lexicographically smallest vertex (one vertex = a point,
// two = an axis segment). `parts` lists the convex members the region is a
// union of (a single ring equal to `vertices` for convex regions); all
// membership and distance queries run off `parts`. `halfplanes` is populated
// for convex regions only.

#pragma once

#include <string>
#include <vector>

#include "secrecy/linsys.hpp"

namespace secrecy {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct HalfPlane {
    double a = 0.0, b = 0.0, c = 0.0;  // a*R1 + b*R2 <= c
};

struct RateRegion2D {
    std::vector<HalfPlane> halfplanes;
    std::vector<Point2> vertices;
    std::vector<std::vector<Point2>> parts;

    bool empty() const { return vertices.empty(); }
    bool is_single_point() const { return vertices.size() == 1; }

    static RateRegion2D origin_point();
};

// Exact half-plane intersection of a system over exactly {R1, R2}
// (equalities allowed; R1 >= 0 and R2 >= 0 are added). Returns an empty
// region when the system is infeasible; throws infeasible_error when the
// intersection is unbounded.
RateRegion2D project_to_region(const LinSystem& sys);

// Convex region from half-planes with double offsets (rationalized to 12
// digits internally, then intersected exactly).
RateRegion2D region_from_halfplanes(const std::vector<HalfPlane>& hps);

// Union of regions; members must each contain the origin (empty members are
// skipped). With convexify the convex hull of the union is returned.
RateRegion2D region_union(const std::vector<RateRegion2D>& members, bool convexify = false);

bool region_contains_point(const RateRegion2D& r, Point2 p, double tol = 1e-9);

// Euclidean distance from p to the region (0 when inside).
double region_distance(const RateRegion2D& r, Point2 p);

// sup over a in A of dist(a, B), estimated by sampling part boundaries at
// arc-length `step` (valid because the farthest point lies on the boundary
// for origin-star-shaped sets)
double directed_hausdorff(const RateRegion2D& a, const RateRegion2D& b, double step = 1e-3);
double region_hausdorff(const RateRegion2D& a, const RateRegion2D& b, double step = 1e-3);

// symmetric Hausdorff distance between the vertex sets
double vertex_hausdorff(const RateRegion2D& a, const RateRegion2D& b);

// every point of a within distance tol of b
bool region_subset(const RateRegion2D& a, const RateRegion2D& b, double tol,
                   double step = 1e-3);

// CSV: header "R1,R2", one vertex per line, 12 significant digits
std::string region_to_csv(const RateRegion2D& r);
RateRegion2D region_from_csv(const std::string& csv);

// sidecar text listing half-planes (per-part blocks for unions)
std::string halfplanes_to_text(const RateRegion2D& r);

}  // namespace secrecy
