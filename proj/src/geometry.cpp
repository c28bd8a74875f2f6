#include "frq/geometry.hpp"

#include <algorithm>

#include "frq/error.hpp"

namespace frq {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    Point2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

DualPoint dual_of_line(const Line2& l) { return {l.a, l.b}; }
Line2 line_of_dual(const DualPoint& d) { return {d.a, d.b}; }
Line2 dual_of_point(Point2 p) { return {-p.x, p.y}; }

Line2 line_through(Point2 p, Point2 q) {
    double dx = q.x - p.x;
    if (std::abs(dx) <= kEps * std::max(1.0, std::abs(q.y - p.y)))
        throw DegenerateGeometry("vertical line has no dual representation");
    double a = (q.y - p.y) / dx;
    return {a, p.y - a * p.x};
}

LineCircleResult line_circle(const Line2& l, const Disk& d) {
    double s = std::sqrt(1 + l.a * l.a);
    double signed_dist = (l.at(d.center.x) - d.center.y) / s;
    double h = std::abs(signed_dist);
    if (h > d.radius + kEps) return LineMiss{};
    Point2 u{1 / s, l.a / s};
    // foot of the perpendicular from the center onto the line
    Point2 n{-l.a / s, 1 / s};
    Point2 foot = d.center + signed_dist * n;
    if (h >= d.radius - kEps) return LineTangent{foot};
    double half = std::sqrt(d.radius * d.radius - h * h);
    return LineChord{foot - half * u, foot + half * u};
}

CircleCircleResult circle_circle(const Disk& d1, const Disk& d2) {
    Point2 v = d2.center - d1.center;
    double d = norm(v);
    double r1 = d1.radius, r2 = d2.radius;
    if (d <= kEps) {
        if (std::abs(r1 - r2) <= kEps) throw DegenerateGeometry("coincident circles");
        return CircleMiss{};
    }
    if (d > r1 + r2 + kEps || d < std::abs(r1 - r2) - kEps) return CircleMiss{};
    Point2 u = (1 / d) * v;
    double a = (d * d + r1 * r1 - r2 * r2) / (2 * d);
    Point2 mid = d1.center + a * u;
    if (std::abs(d - (r1 + r2)) <= kEps || std::abs(d - std::abs(r1 - r2)) <= kEps)
        return CircleTouch{mid};
    double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
    Point2 p = mid + h * perp(u), q = mid - h * perp(u);
    bool p_first = p.y > q.y || (p.y == q.y && p.x > q.x);
    return p_first ? CirclePair{p, q} : CirclePair{q, p};
}

RotRect rect_around_segment(Point2 a, Point2 b, double rho) {
    Point2 d = b - a;
    return {0.5 * (a + b), std::atan2(d.y, d.x), 0.5 * norm(d), rho};
}

std::vector<HalfPlane> rect_sides(const RotRect& r) {
    Point2 u{std::cos(r.angle), std::sin(r.angle)};
    Point2 v = perp(u);
    double cv = dot(v, r.center), cu = dot(u, r.center);
    return {{v, cv + r.half_width},
            {-1 * v, -cv + r.half_width},
            {u, cu + r.half_length},
            {-1 * u, -cu + r.half_length}};
}

bool disk_contains(const Disk& d, Point2 p) { return within(p, d.center, d.radius); }

bool slab_contains(const Slab2& s, Point2 p) {
    double v = dot(s.normal(), p);
    return v >= s.c1 - kEps && v <= s.c2 + kEps;
}

bool lens_contains(const Lens& l, Point2 p) { return disk_contains(l.d1, p) && disk_contains(l.d2, p); }

bool rotrect_contains(const RotRect& r, Point2 p) {
    for (const auto& h : rect_sides(r))
        if (!h.contains(p)) return false;
    return true;
}

std::optional<double> slab_pair_area(const Slab2& s1, const Slab2& s2) {
    double s = std::abs(std::sin(s1.theta - s2.theta));
    if (s < 1e-12) return std::nullopt;
    return s1.thickness() * s2.thickness() / s;
}

double norm_angle_2pi(double a) {
    a = std::fmod(a, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    if (a >= 2 * kPi) a = 0;
    return a;
}

double norm_angle_pi(double a) {
    a = std::fmod(a, kPi);
    if (a < 0) a += kPi;
    if (a >= kPi) a = 0;
    return a;
}

std::vector<std::pair<double, double>> tangent_angle_interval(const Lens& l) {
    auto cc = circle_circle(l.d1, l.d2);
    if (!std::holds_alternative<CirclePair>(cc)) throw DegenerateGeometry("lens is empty or a single point");
    Point2 v = l.d2.center - l.d1.center;
    double d = norm(v), r1 = l.d1.radius, r2 = l.d2.radius;
    double beta = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2 * d * r1), -1.0, 1.0));
    if (2 * beta >= kPi) return {{0.0, kPi}};
    // the arc on d1 is centred on direction v; tangents are rotated by pi/2
    double lo = norm_angle_pi(std::atan2(v.y, v.x) + kPi / 2 - beta);
    double hi = lo + 2 * beta;
    if (hi <= kPi) return {{lo, hi}};
    return {{0.0, hi - kPi}, {lo, kPi}};
}

BoxD box_of(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw ValidationError("box_of: empty point sequence");
    BoxD b{points[0], points[0]};
    for (const auto& p : points) {
        if (p.size() != b.dim()) throw ValidationError("box_of: inconsistent dimension");
        for (std::size_t i = 0; i < p.size(); ++i) {
            b.lo[i] = std::min(b.lo[i], p[i]);
            b.hi[i] = std::max(b.hi[i], p[i]);
        }
    }
    return b;
}

double box_volume(const BoxD& b) {
    double v = 1;
    for (std::size_t i = 0; i < b.dim(); ++i) v *= b.hi[i] - b.lo[i];
    return v;
}

Polygon clip_halfplane(const Polygon& poly, Point2 n, double c) {
    Polygon out;
    std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        Point2 a = poly[i], b = poly[(i + 1) % m];
        double fa = dot(n, a) - c, fb = dot(n, b) - c;
        if (fa <= 0) out.push_back(a);
        if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
            double t = fa / (fa - fb);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

double polygon_area(const Polygon& poly) {
    double s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return std::abs(s) / 2;
}

Polygon unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

}  // namespace frq
