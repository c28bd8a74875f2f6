#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frq/geometry.hpp"

namespace frq {

// Degree-2 bivariate polynomial in centred form, X = x - h, Y = y - k:
//   xx X^2 + yy Y^2 + xy X Y + x X + y Y + c
// The centred form lets a disk test reproduce `within` bit for bit and gives
// tight interval enclosures for separable polynomials.
struct Poly2 {
    double h = 0, k = 0;
    double xx = 0, yy = 0, xy = 0, x = 0, y = 0, c = 0;

    double eval(Point2 p) const {
        double X = p.x - h, Y = p.y - k;
        return (X * X * xx + Y * Y * yy) + X * Y * xy + (X * x + Y * y) + c;
    }
};

enum class Rel : std::uint8_t { Le, Lt, Ge, Gt };

struct Atom {
    Poly2 poly;
    Rel rel = Rel::Le;

    bool eval(Point2 p) const;
    Atom negated() const;
};

// Constructors for the atoms the query planner needs.
Atom disk_atom(Point2 center, double rho);            // |p - center| <= rho (closed, kEps)
Atom outside_disk_atom(Point2 center, double rho);    // strict complement
Atom linear_atom(double ax, double by, double c, Rel rel);  // ax*x + by*y + c REL 0
Atom const_atom(bool value);

using Clause = std::vector<Atom>;

// Disjunction of conjunctions. Query ranges proper have at most 2 clauses of at
// most 6 atoms; cells assembled from refined pieces may carry more clauses.
struct RangeSpec {
    std::vector<Clause> clauses;

    static RangeSpec whole_plane() { return {{Clause{}}}; }
    static RangeSpec empty() { return {}; }
    bool contains(Point2 p) const;
    bool constant_complexity() const;
};

struct Region {
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
};

enum class Classification : std::uint8_t { Inside, Outside, Crossing };

// Interval enclosure of the polynomial over the box, widened to absorb
// rounding in point evaluation.
std::pair<double, double> enclose(const Poly2& p, const Region& r);

// Sound: Inside/Outside are only returned when provable over the whole box.
Classification classify(const Region& r, const RangeSpec& range);
Classification classify(const Region& r, const Clause& clause);

}  // namespace frq
