#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace frq {

// Single tolerance for every sign test. Boundaries count as inside.
inline constexpr double kEps = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

struct Point2 {
    double x = 0, y = 0;
    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

// Closed-ball test shared by every distance predicate so that all code paths
// agree bit-for-bit on boundary cases.
inline bool within(Point2 a, Point2 b, double rho) {
    double dx = a.x - b.x, dy = a.y - b.y;
    double r = rho + kEps;
    return dx * dx + dy * dy <= r * r;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b);

// Line y = a*x + b. Vertical lines are not representable.
struct Line2 {
    double a = 0, b = 0;
    double at(double x) const { return a * x + b; }
};

struct DualPoint {
    double a = 0, b = 0;
};

// Duality: line y=ax+b <-> point (a,b); point (px,py) <-> line y = -px*x + py.
// Incidence is preserved and above/below is reversed:
//   p above l  <=>  dual_of_line(l) below dual_of_point(p).
DualPoint dual_of_line(const Line2& l);
Line2 line_of_dual(const DualPoint& d);
Line2 dual_of_point(Point2 p);
// Non-vertical line through two points; throws DegenerateGeometry if vertical.
Line2 line_through(Point2 p, Point2 q);

// Signed vertical offset of p relative to l; > 0 means above.
inline double above(const Line2& l, Point2 p) { return p.y - l.at(p.x); }

struct Disk {
    Point2 center;
    double radius = 0;
};

struct LineMiss {};
struct LineTangent {
    Point2 p;
};
struct LineChord {
    Point2 p1, p2;
};
using LineCircleResult = std::variant<LineMiss, LineTangent, LineChord>;
LineCircleResult line_circle(const Line2& l, const Disk& d);

struct CircleMiss {};
struct CircleTouch {
    Point2 p;
};
struct CirclePair {
    Point2 b_plus, b_minus;
};
using CircleCircleResult = std::variant<CircleMiss, CircleTouch, CirclePair>;
CircleCircleResult circle_circle(const Disk& d1, const Disk& d2);

// Region {p : c1 <= p . (cos theta, sin theta) <= c2}.
struct Slab2 {
    double theta = 0, c1 = 0, c2 = 0;
    Point2 normal() const { return {std::cos(theta), std::sin(theta)}; }
    double thickness() const { return c2 - c1; }
};

struct Lens {
    Disk d1, d2;
};

struct RotRect {
    Point2 center;
    double angle = 0;  // direction of the long axis
    double half_length = 0, half_width = 0;
};
// Rectangle of half-width rho around segment ab (the Minkowski sum of the
// segment with a square is not used; ends are cut perpendicular to ab).
RotRect rect_around_segment(Point2 a, Point2 b, double rho);

// One bounding halfplane {p : n.p <= c} per rectangle side, in the order
// +width, -width, +length, -length.
struct HalfPlane {
    Point2 n;
    double c = 0;
    bool contains(Point2 p) const { return dot(n, p) <= c + kEps; }
};
std::vector<HalfPlane> rect_sides(const RotRect& r);

bool disk_contains(const Disk& d, Point2 p);
bool slab_contains(const Slab2& s, Point2 p);
bool lens_contains(const Lens& l, Point2 p);
bool rotrect_contains(const RotRect& r, Point2 p);

// Area of the parallelogram s1 \cap s2; nullopt when the slabs are parallel.
std::optional<double> slab_pair_area(const Slab2& s1, const Slab2& s2);

// Undirected tangent angles of the lens arc on d1, as up to two non-wrapping
// intervals inside [0, pi).
std::vector<std::pair<double, double>> tangent_angle_interval(const Lens& l);

// Angle normalization.
double norm_angle_2pi(double a);
double norm_angle_pi(double a);

struct BoxD {
    std::vector<double> lo, hi;
    std::size_t dim() const { return lo.size(); }
};
BoxD box_of(const std::vector<std::vector<double>>& points);
double box_volume(const BoxD& b);

// Convex polygon helpers used by the exact slab-intersection areas.
using Polygon = std::vector<Point2>;
Polygon clip_halfplane(const Polygon& poly, Point2 n, double c);  // keeps n.p <= c
double polygon_area(const Polygon& poly);
Polygon unit_square();

}  // namespace frq
