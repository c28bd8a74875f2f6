#include "frq/range.hpp"

#include <algorithm>
#include <cmath>

namespace frq {

bool Atom::eval(Point2 p) const {
    double v = poly.eval(p);
    switch (rel) {
        case Rel::Le: return v <= 0;
        case Rel::Lt: return v < 0;
        case Rel::Ge: return v >= 0;
        case Rel::Gt: return v > 0;
    }
    return false;
}

Atom Atom::negated() const {
    static constexpr Rel neg[] = {Rel::Gt, Rel::Ge, Rel::Lt, Rel::Le};
    return {poly, neg[static_cast<int>(rel)]};
}

Atom disk_atom(Point2 center, double rho) {
    double r = rho + kEps;
    Poly2 p;
    p.h = center.x;
    p.k = center.y;
    p.xx = p.yy = 1;
    p.c = -(r * r);
    return {p, Rel::Le};
}

Atom outside_disk_atom(Point2 center, double rho) { return disk_atom(center, rho).negated(); }

Atom linear_atom(double ax, double by, double c, Rel rel) {
    Poly2 p;
    p.x = ax;
    p.y = by;
    p.c = c;
    return {p, rel};
}

Atom const_atom(bool value) {
    Poly2 p;
    p.c = value ? -1 : 1;
    return {p, Rel::Le};
}

bool RangeSpec::contains(Point2 p) const {
    for (const auto& cl : clauses) {
        bool all = true;
        for (const auto& a : cl)
            if (!a.eval(p)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

bool RangeSpec::constant_complexity() const {
    if (clauses.size() > 2) return false;
    for (const auto& cl : clauses)
        if (cl.size() > 6) return false;
    return true;
}

namespace {

// Exact range of a X^2 + b X over X in [lo, hi].
std::pair<double, double> quad_range(double a, double b, double lo, double hi) {
    auto f = [&](double t) { return a * t * t + b * t; };
    double mn = std::min(f(lo), f(hi)), mx = std::max(f(lo), f(hi));
    if (a != 0) {
        double v = -b / (2 * a);
        if (v > lo && v < hi) {
            mn = std::min(mn, f(v));
            mx = std::max(mx, f(v));
        }
    }
    return {mn, mx};
}

std::pair<double, double> mul(std::pair<double, double> a, std::pair<double, double> b) {
    double p[4] = {a.first * b.first, a.first * b.second, a.second * b.first, a.second * b.second};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

std::pair<double, double> enclose(const Poly2& p, const Region& r) {
    std::pair<double, double> X{r.xlo - p.h, r.xhi - p.h}, Y{r.ylo - p.k, r.yhi - p.k};
    auto qx = quad_range(p.xx, p.x, X.first, X.second);
    auto qy = quad_range(p.yy, p.y, Y.first, Y.second);
    std::pair<double, double> cross{0, 0};
    if (p.xy != 0) cross = mul(mul(X, Y), {p.xy, p.xy});
    double lo = qx.first + qy.first + cross.first + p.c;
    double hi = qx.second + qy.second + cross.second + p.c;
    double mag = std::abs(qx.first) + std::abs(qx.second) + std::abs(qy.first) + std::abs(qy.second) +
                 std::abs(cross.first) + std::abs(cross.second) + std::abs(p.c);
    double pad = 1e-12 * mag + 1e-300;
    return {lo - pad, hi + pad};
}

namespace {

// +1 provably true over the box, -1 provably false, 0 undecided.
int atom_state(const Atom& a, const Region& r) {
    auto [lo, hi] = enclose(a.poly, r);
    switch (a.rel) {
        case Rel::Le: return hi <= 0 ? 1 : (lo > 0 ? -1 : 0);
        case Rel::Lt: return hi < 0 ? 1 : (lo >= 0 ? -1 : 0);
        case Rel::Ge: return lo >= 0 ? 1 : (hi < 0 ? -1 : 0);
        case Rel::Gt: return lo > 0 ? 1 : (hi <= 0 ? -1 : 0);
    }
    return 0;
}

}  // namespace

Classification classify(const Region& r, const Clause& clause) {
    bool all_true = true;
    for (const auto& a : clause) {
        int s = atom_state(a, r);
        if (s < 0) return Classification::Outside;
        if (s == 0) all_true = false;
    }
    return all_true ? Classification::Inside : Classification::Crossing;
}

Classification classify(const Region& r, const RangeSpec& range) {
    bool all_out = true;
    for (const auto& cl : range.clauses) {
        auto c = classify(r, cl);
        if (c == Classification::Inside) return c;
        if (c == Classification::Crossing) all_out = false;
    }
    return all_out ? Classification::Outside : Classification::Crossing;
}

}  // namespace frq
