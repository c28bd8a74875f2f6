#include "frq/frechet.hpp"

#include <algorithm>

#include "frq/error.hpp"

namespace frq {

FreeSpaceMatrix free_space_matrix(const Curve& q, const Curve& s, double rho) {
    FreeSpaceMatrix m(static_cast<int>(q.size()), static_cast<int>(s.size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.set(i, j, within(q[i], s[j], rho));
    return m;
}

bool matrix_feasible(const FreeSpaceMatrix& m) {
    if (m.rows == 0 || m.cols == 0) throw ValidationError("matrix_feasible: empty matrix");
    std::vector<std::uint8_t> reach(m.bits.size(), 0);
    auto r = [&](int i, int j) -> std::uint8_t& { return reach[static_cast<std::size_t>(i) * m.cols + j]; };
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (!m.at(i, j)) continue;
            if (i == 0 && j == 0) {
                r(i, j) = 1;
                continue;
            }
            bool from = (i > 0 && r(i - 1, j)) || (j > 0 && r(i, j - 1)) || (i > 0 && j > 0 && r(i - 1, j - 1));
            r(i, j) = from ? 1 : 0;
        }
    }
    return r(m.rows - 1, m.cols - 1) != 0;
}

bool discrete_decide(const Curve& q, const Curve& s, double rho) {
    return matrix_feasible(free_space_matrix(q, s, rho));
}

double discrete_value(const Curve& q, const Curve& s) {
    if (q.size() == 0 || s.size() == 0) throw ValidationError("discrete_value: empty curve");
    std::vector<double> d;
    d.reserve(q.size() * s.size());
    for (const auto& a : q.vertices)
        for (const auto& b : s.vertices) d.push_back(dist(a, b));
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    std::size_t lo = 0, hi = d.size() - 1;  // decide(d[hi]) always holds
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (discrete_decide(q, s, d[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return d[lo];
}

Interval free_interval(Point2 p, Point2 a, Point2 b, double rho) {
    Point2 v = b - a, w = a - p;
    double r = rho + kEps;
    double A = dot(v, v), B = 2 * dot(v, w), C = dot(w, w) - r * r;
    if (A == 0) return C <= 0 ? Interval{0, 1} : Interval{};
    double disc = B * B - 4 * A * C;
    if (disc < 0) return {};
    double sq = std::sqrt(disc);
    double t0 = (-B - sq) / (2 * A), t1 = (-B + sq) / (2 * A);
    Interval iv{std::max(0.0, t0), std::min(1.0, t1)};
    if (iv.empty()) return {};
    return iv;
}

namespace {

constexpr double kParamEps = 1e-12;

bool contains0(const Interval& iv) { return !iv.empty() && iv.lo <= kParamEps; }
bool contains1(const Interval& iv) { return !iv.empty() && iv.hi >= 1 - kParamEps; }

// Reachable intervals that are empty only by rounding collapse to a point.
void snap(Interval& iv) {
    if (iv.lo > iv.hi) iv = iv.lo <= iv.hi + kParamEps ? Interval{iv.hi, iv.hi} : Interval{};
}

// Distance of a single point to a whole curve in the Fréchet sense.
bool point_curve_decide(Point2 p, const Curve& c, double rho) {
    for (const auto& v : c.vertices)
        if (!within(p, v, rho)) return false;
    return true;
}

}  // namespace

bool alt_godau_decide(const Curve& q, const Curve& s, double rho) {
    if (q.size() == 0 || s.size() == 0) throw ValidationError("alt_godau_decide: empty curve");
    if (q.size() == 1) return point_curve_decide(q[0], s, rho);
    if (s.size() == 1) return point_curve_decide(s[0], q, rho);
    if (!within(q[0], s[0], rho) || !within(q[q.size() - 1], s[s.size() - 1], rho)) return false;

    const int R = static_cast<int>(q.size()) - 1;  // cell rows: query edges
    const int C = static_cast<int>(s.size()) - 1;  // cell columns: input edges
    // left[i][j]: boundary x = s_j over query edge i (j in 0..C)
    // bottom[i][j]: boundary y = q_i over input edge j (i in 0..R)
    std::vector<Interval> left((R) * (C + 1)), bottom((R + 1) * C);
    auto L = [&](int i, int j) -> Interval& { return left[i * (C + 1) + j]; };
    auto B = [&](int i, int j) -> Interval& { return bottom[i * C + j]; };

    for (int i = 0; i < R; ++i) {
        bool ok = i == 0 || contains1(L(i - 1, 0));
        Interval f = free_interval(s[0], q[i], q[i + 1], rho);
        L(i, 0) = ok && contains0(f) ? f : Interval{};
    }
    for (int j = 0; j < C; ++j) {
        bool ok = j == 0 || contains1(B(0, j - 1));
        Interval f = free_interval(q[0], s[j], s[j + 1], rho);
        B(0, j) = ok && contains0(f) ? f : Interval{};
    }
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < C; ++j) {
            const Interval& in_l = L(i, j);
            const Interval& in_b = B(i, j);
            Interval fr = free_interval(s[j + 1], q[i], q[i + 1], rho);
            Interval ft = free_interval(q[i + 1], s[j], s[j + 1], rho);
            Interval out_r{}, out_t{};
            if (!fr.empty()) {
                if (!in_b.empty())
                    out_r = fr;
                else if (!in_l.empty())
                    out_r = {std::max(fr.lo, in_l.lo), fr.hi};
            }
            if (!ft.empty()) {
                if (!in_l.empty())
                    out_t = ft;
                else if (!in_b.empty())
                    out_t = {std::max(ft.lo, in_b.lo), ft.hi};
            }
            snap(out_r);
            snap(out_t);
            L(i, j + 1) = out_r;
            B(i + 1, j) = out_t;
        }
    }
    return contains1(L(R - 1, C)) || contains1(B(R, C - 1));
}

}  // namespace frq
