#include "secrecy/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/simplex.hpp"

namespace secrecy {

namespace {

constexpr double kInsideTol = 1e-9;

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return dist(p, a);
    double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * vx, a.y + t * vy});
}

double ring_signed_area(const std::vector<Point2>& ring) {
    double s = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % ring.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

// signed distance of p to edge a->b, positive on the interior (left) side
double edge_signed_distance(Point2 p, Point2 a, Point2 b) {
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double len = std::hypot(ex, ey);
    if (len == 0.0) return -dist(p, a);
    return (ex * (p.y - a.y) - ey * (p.x - a.x)) / len;
}

// min over edges of the signed distance; >= 0 means inside (ring CCW)
double ring_inside_margin(const std::vector<Point2>& ring, Point2 p) {
    if (ring.empty()) return -1e300;
    if (ring.size() == 1) return -dist(p, ring[0]);
    if (ring.size() == 2) return -point_segment_distance(p, ring[0], ring[1]);
    double m = 1e300;
    for (std::size_t i = 0; i < ring.size(); ++i)
        m = std::min(m, edge_signed_distance(p, ring[i], ring[(i + 1) % ring.size()]));
    return m;
}

double ring_distance(const std::vector<Point2>& ring, Point2 p) {
    if (ring.empty()) return 1e300;
    if (ring.size() == 1) return dist(p, ring[0]);
    if (ring.size() == 2) return point_segment_distance(p, ring[0], ring[1]);
    if (ring_inside_margin(ring, p) >= 0.0) return 0.0;
    double d = 1e300;
    for (std::size_t i = 0; i < ring.size(); ++i)
        d = std::min(d, point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
    return d;
}

void canonicalize_ring(std::vector<Point2>& ring) {
    if (ring.size() >= 3 && ring_signed_area(ring) < 0.0)
        std::reverse(ring.begin(), ring.end());
    if (ring.size() < 2) return;
    std::size_t start = 0;
    for (std::size_t i = 1; i < ring.size(); ++i) {
        if (ring[i].x < ring[start].x - 1e-15 ||
            (std::abs(ring[i].x - ring[start].x) <= 1e-15 && ring[i].y < ring[start].y))
            start = i;
    }
    std::rotate(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(start), ring.end());
}

std::vector<HalfPlane> ring_halfplanes(const std::vector<Point2>& ring) {
    std::vector<HalfPlane> hps;
    if (ring.size() < 3) return hps;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % ring.size()];
        HalfPlane h;
        h.a = q.y - p.y;
        h.b = p.x - q.x;
        h.c = h.a * p.x + h.b * p.y;
        hps.push_back(h);
    }
    return hps;
}

// --------------------------------------------------------- rational geometry

struct RatPoint {
    Rat x, y;
};

bool rp_less(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

Rat rp_cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// counterclockwise convex hull, collinear points dropped; handles the
// degenerate 1- and 2-point results
std::vector<RatPoint> rational_hull(std::vector<RatPoint> pts) {
    std::sort(pts.begin(), pts.end(), rp_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RatPoint& a, const RatPoint& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<RatPoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && rp_cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && rp_cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) {
        // all input points collinear: keep the two extremes
        std::vector<RatPoint> seg = {pts.front(), pts.back()};
        return seg;
    }
    return hull;
}

struct RatRow {
    Rat a, b, c;  // a*R1 + b*R2 <= c
};

}  // namespace

RateRegion2D RateRegion2D::origin_point() {
    RateRegion2D r;
    r.vertices = {{0.0, 0.0}};
    r.parts = {r.vertices};
    r.halfplanes = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    return r;
}

RateRegion2D project_to_region(const LinSystem& sys) {
    std::set<std::string> names(sys.vars.begin(), sys.vars.end());
    if (names != std::set<std::string>{"R1", "R2"})
        throw input_error("project_to_region: system must be over exactly {R1, R2}");

    std::vector<RatRow> rows;
    for (const auto& r : sys.ineqs) {
        LinIneq iq = r;
        iq.normalize();
        if (iq.trivially_true()) continue;
        if (iq.trivially_false()) return RateRegion2D{};
        const Rat a = iq.coeff("R1"), b = iq.coeff("R2");
        rows.push_back({a, b, iq.rhs});
        if (iq.rel == Rel::EQ) rows.push_back({-a, -b, -iq.rhs});
    }
    rows.push_back({-1, 0, 0});
    rows.push_back({0, -1, 0});

    // feasibility first: an empty set is neither bounded nor unbounded
    {
        LinSystem feas;
        feas.vars = {"R1", "R2"};
        for (const auto& r : rows) feas.add(make_le({{"R1", r.a}, {"R2", r.b}}, r.c));
        if (!lp_feasible(feas)) return RateRegion2D{};
    }

    // unboundedness: a nonzero recession direction d >= 0 with a.d <= 0 for
    // every row; candidates are the quadrant edges and each row's boundary rays
    std::vector<RatPoint> dirs = {{1, 0}, {0, 1}};
    for (const auto& r : rows) {
        dirs.push_back({-r.b, r.a});
        dirs.push_back({r.b, -r.a});
    }
    for (const auto& d : dirs) {
        if (d.x < 0 || d.y < 0 || (d.x == 0 && d.y == 0)) continue;
        bool recession = true;
        for (const auto& r : rows) {
            if (r.a * d.x + r.b * d.y > 0) {
                recession = false;
                break;
            }
        }
        if (recession) throw infeasible_error("project_to_region: unbounded region");
    }

    // candidate vertices from row pairs
    std::vector<RatPoint> verts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const Rat det = rows[i].a * rows[j].b - rows[j].a * rows[i].b;
            if (det == 0) continue;
            RatPoint p;
            p.x = (rows[i].c * rows[j].b - rows[j].c * rows[i].b) / det;
            p.y = (rows[i].a * rows[j].c - rows[j].a * rows[i].c) / det;
            bool ok = true;
            for (const auto& r : rows) {
                if (r.a * p.x + r.b * p.y > r.c) {
                    ok = false;
                    break;
                }
            }
            if (ok) verts.push_back(p);
        }
    }
    if (verts.empty()) return RateRegion2D{};

    const std::vector<RatPoint> hull = rational_hull(std::move(verts));
    RateRegion2D region;
    for (const auto& p : hull) region.vertices.push_back({rat_to_double(p.x), rat_to_double(p.y)});
    canonicalize_ring(region.vertices);
    region.parts = {region.vertices};
    if (region.vertices.size() >= 3) {
        region.halfplanes = ring_halfplanes(region.vertices);
    } else {
        for (const auto& r : rows)
            region.halfplanes.push_back(
                {rat_to_double(r.a), rat_to_double(r.b), rat_to_double(r.c)});
    }
    return region;
}

RateRegion2D region_from_halfplanes(const std::vector<HalfPlane>& hps) {
    LinSystem sys;
    sys.vars = {"R1", "R2"};
    for (const auto& h : hps) {
        sys.add(make_le({{"R1", rat_from_double_12(h.a)}, {"R2", rat_from_double_12(h.b)}},
                        rat_from_double_12(h.c)));
    }
    return project_to_region(sys);
}

bool region_contains_point(const RateRegion2D& r, Point2 p, double tol) {
    for (const auto& part : r.parts)
        if (ring_inside_margin(part, p) >= -tol) return true;
    return false;
}

double region_distance(const RateRegion2D& r, Point2 p) {
    double d = 1e300;
    for (const auto& part : r.parts) d = std::min(d, ring_distance(part, p));
    return d;
}

namespace {

void sample_ring_boundary(const std::vector<Point2>& ring, double step,
                          std::vector<Point2>& out) {
    if (ring.empty()) return;
    if (ring.size() == 1) {
        out.push_back(ring[0]);
        return;
    }
    const std::size_t edges = ring.size() == 2 ? 1 : ring.size();
    for (std::size_t i = 0; i < edges; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % ring.size()];
        const double len = dist(a, b);
        const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int k = 0; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
}

}  // namespace

double directed_hausdorff(const RateRegion2D& a, const RateRegion2D& b, double step) {
    if (a.parts.empty()) return 0.0;
    if (b.parts.empty()) return 1e300;
    std::vector<Point2> samples;
    for (const auto& part : a.parts) sample_ring_boundary(part, step, samples);
    double worst = 0.0;
    for (const auto& p : samples) worst = std::max(worst, region_distance(b, p));
    return worst;
}

double region_hausdorff(const RateRegion2D& a, const RateRegion2D& b, double step) {
    return std::max(directed_hausdorff(a, b, step), directed_hausdorff(b, a, step));
}

double vertex_hausdorff(const RateRegion2D& a, const RateRegion2D& b) {
    if (a.vertices.empty() || b.vertices.empty())
        return (a.vertices.empty() && b.vertices.empty()) ? 0.0 : 1e300;
    double worst = 0.0;
    for (const auto& p : a.vertices) {
        double best = 1e300;
        for (const auto& q : b.vertices) best = std::min(best, dist(p, q));
        worst = std::max(worst, best);
    }
    for (const auto& q : b.vertices) {
        double best = 1e300;
        for (const auto& p : a.vertices) best = std::min(best, dist(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

bool region_subset(const RateRegion2D& a, const RateRegion2D& b, double tol, double step) {
    if (a.parts.empty()) return true;
    if (b.parts.empty()) return false;
    if (b.parts.size() == 1) {
        // distance to a convex set is convex, so part vertices suffice
        for (const auto& part : a.parts)
            for (const auto& p : part)
                if (region_distance(b, p) > tol) return false;
        return true;
    }
    return directed_hausdorff(a, b, step) <= tol;
}

namespace {

std::string ring_key(const std::vector<Point2>& ring) {
    std::string key;
    char buf[64];
    for (const auto& p : ring) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e;", std::round(p.x * 1e12) / 1e12,
                      std::round(p.y * 1e12) / 1e12);
        key += buf;
    }
    return key;
}

bool ring_contains_ring(const std::vector<Point2>& outer, const std::vector<Point2>& inner,
                        double tol) {
    for (const auto& p : inner)
        if (ring_inside_margin(outer, p) < -tol) return false;
    return true;
}

bool segment_intersection(Point2 a, Point2 b, Point2 c, Point2 d, Point2& out) {
    const double rx = b.x - a.x, ry = b.y - a.y;
    const double sx = d.x - c.x, sy = d.y - c.y;
    const double den = rx * sy - ry * sx;
    if (std::abs(den) < 1e-15) return false;
    const double t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / den;
    const double u = ((c.x - a.x) * ry - (c.y - a.y) * rx) / den;
    if (t < -1e-12 || t > 1.0 + 1e-12 || u < -1e-12 || u > 1.0 + 1e-12) return false;
    out = {a.x + t * rx, a.y + t * ry};
    return true;
}

}  // namespace

RateRegion2D region_union(const std::vector<RateRegion2D>& members, bool convexify) {
    // gather convex parts
    std::vector<std::vector<Point2>> parts;
    for (const auto& m : members)
        for (const auto& part : m.parts)
            if (!part.empty()) parts.push_back(part);
    RateRegion2D out;
    if (parts.empty()) return out;

    for (auto& ring : parts) canonicalize_ring(ring);

    // dedupe, then sort largest-area first for the domination filter
    std::set<std::string> seen;
    std::vector<std::vector<Point2>> unique_parts;
    for (auto& ring : parts)
        if (seen.insert(ring_key(ring)).second) unique_parts.push_back(std::move(ring));
    std::stable_sort(unique_parts.begin(), unique_parts.end(),
                     [](const auto& a, const auto& b) {
                         return std::abs(ring_signed_area(a)) > std::abs(ring_signed_area(b));
                     });
    std::vector<std::vector<Point2>> survivors;
    for (auto& ring : unique_parts) {
        bool dominated = false;
        for (const auto& s : survivors) {
            if (ring_contains_ring(s, ring, 1e-12)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) survivors.push_back(std::move(ring));
    }

    if (convexify) {
        std::vector<RatPoint> pts;
        for (const auto& s : survivors)
            for (const auto& p : s) pts.push_back({rat_from_double_12(p.x), rat_from_double_12(p.y)});
        const auto hull = rational_hull(std::move(pts));
        for (const auto& p : hull) out.vertices.push_back({rat_to_double(p.x), rat_to_double(p.y)});
        canonicalize_ring(out.vertices);
        out.parts = {out.vertices};
        out.halfplanes = ring_halfplanes(out.vertices);
        return out;
    }

    out.parts = survivors;
    if (survivors.size() == 1) {
        out.vertices = survivors[0];
        out.halfplanes = ring_halfplanes(out.vertices);
        return out;
    }

    // merged outer boundary
    const bool all_degenerate = std::all_of(survivors.begin(), survivors.end(),
                                            [](const auto& s) { return s.size() <= 2; });
    if (all_degenerate) {
        // points and axis-aligned segments from the origin
        double r1 = 0.0, r2 = 0.0;
        for (const auto& s : survivors)
            for (const auto& p : s) {
                if (std::abs(p.y) <= 1e-12) r1 = std::max(r1, p.x);
                if (std::abs(p.x) <= 1e-12) r2 = std::max(r2, p.y);
            }
        out.vertices.push_back({0.0, 0.0});
        if (r1 > 1e-12) out.vertices.push_back({r1, 0.0});
        if (r2 > 1e-12) out.vertices.push_back({0.0, r2});
        return out;
    }

    // candidates: part vertices + pairwise edge intersections, kept when not
    // strictly interior to any part, ordered by angle about the origin
    std::vector<Point2> cand;
    for (const auto& s : survivors)
        for (const auto& p : s) cand.push_back(p);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        const auto& A = survivors[i];
        if (A.size() < 2) continue;
        const std::size_t ea = A.size() == 2 ? 1 : A.size();
        for (std::size_t j = i + 1; j < survivors.size(); ++j) {
            const auto& B = survivors[j];
            if (B.size() < 2) continue;
            const std::size_t eb = B.size() == 2 ? 1 : B.size();
            for (std::size_t p = 0; p < ea; ++p)
                for (std::size_t q = 0; q < eb; ++q) {
                    Point2 ip;
                    if (segment_intersection(A[p], A[(p + 1) % A.size()], B[q],
                                             B[(q + 1) % B.size()], ip))
                        cand.push_back(ip);
                }
        }
    }

    std::vector<Point2> boundary;
    for (const auto& p : cand) {
        bool interior = false;
        for (const auto& s : survivors) {
            if (ring_inside_margin(s, p) > kInsideTol) {
                interior = true;
                break;
            }
        }
        if (!interior) boundary.push_back(p);
    }

    // angle sort (origin first), keep the farthest point per angle
    std::vector<Point2> ring;
    std::vector<std::pair<double, Point2>> angled;
    for (const auto& p : boundary) {
        const double r = std::hypot(p.x, p.y);
        if (r <= 1e-12) continue;  // origin added explicitly
        angled.push_back({std::atan2(p.y, p.x), p});
    }
    std::sort(angled.begin(), angled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ring.push_back({0.0, 0.0});
    for (std::size_t i = 0; i < angled.size(); ++i) {
        if (!ring.empty() && ring.size() > 1) {
            // same angle as the previous kept point: keep the farther one
            const Point2& prev = ring.back();
            const double pa = std::atan2(prev.y, prev.x);
            if (std::abs(angled[i].first - pa) < 1e-12) {
                if (std::hypot(angled[i].second.x, angled[i].second.y) >
                    std::hypot(prev.x, prev.y))
                    ring.back() = angled[i].second;
                continue;
            }
        }
        if (!ring.empty() && dist(ring.back(), angled[i].second) < 1e-9) continue;
        ring.push_back(angled[i].second);
    }
    // drop collinear chains
    std::vector<Point2> cleaned;
    for (const auto& p : ring) {
        while (cleaned.size() >= 2) {
            const Point2& a = cleaned[cleaned.size() - 2];
            const Point2& b = cleaned.back();
            const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (std::abs(cross) < 1e-9 * (1.0 + dist(a, p))) cleaned.pop_back();
            else break;
        }
        cleaned.push_back(p);
    }
    out.vertices = cleaned;
    canonicalize_ring(out.vertices);
    return out;
}

std::string region_to_csv(const RateRegion2D& r) {
    std::string s = "R1,R2\n";
    char buf[80];
    for (const auto& p : r.vertices) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", p.x, p.y);
        s += buf;
    }
    return s;
}

RateRegion2D region_from_csv(const std::string& csv) {
    RateRegion2D r;
    std::istringstream is(csv);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            if (line != "R1,R2") throw input_error("region csv: bad header '" + line + "'");
            first = false;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw input_error("region csv: bad row '" + line + "'");
        Point2 p;
        try {
            p.x = std::stod(line.substr(0, comma));
            p.y = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw input_error("region csv: bad row '" + line + "'");
        }
        r.vertices.push_back(p);
    }
    if (first) throw input_error("region csv: missing header");
    if (!r.vertices.empty()) r.parts = {r.vertices};
    if (r.vertices.size() >= 3) r.halfplanes = ring_halfplanes(r.vertices);
    return r;
}

std::string halfplanes_to_text(const RateRegion2D& r) {
    std::ostringstream os;
    os << "# halfplanes: a*R1 + b*R2 <= c\n";
    char buf[120];
    if (r.parts.size() <= 1) {
        for (const auto& h : r.halfplanes) {
            std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", h.a, h.b, h.c);
            os << buf;
        }
        return os.str();
    }
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
        os << "# part " << (i + 1) << " of " << r.parts.size() << "\n";
        for (const auto& h : ring_halfplanes(r.parts[i])) {
            std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", h.a, h.b, h.c);
            os << buf;
        }
    }
    return os.str();
}

}  // namespace secrecy
