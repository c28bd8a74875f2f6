#pragma once

// Independent reference implementations used only by tests. They favour
// brute force over cleverness so that they share no logic with the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "frq/frechet.hpp"
#include "frq/predicates.hpp"

namespace oracle {

using frq::Curve;
using frq::Point2;

inline Curve random_curve(std::mt19937_64& g, int t, double lo = 0, double hi = 1, const char* id = "c") {
    std::uniform_real_distribution<double> u(lo, hi);
    Curve c{id, {}};
    for (int i = 0; i < t; ++i) c.vertices.push_back({u(g), u(g)});
    return c;
}

// Every traversal of the discrete matrix, step by step.
inline bool traversal_exists(const frq::FreeSpaceMatrix& m) {
    if (!m.at(0, 0)) return false;
    std::function<bool(int, int)> go = [&](int i, int j) {
        if (i == m.rows - 1 && j == m.cols - 1) return true;
        const int di[3] = {1, 0, 1}, dj[3] = {0, 1, 1};
        for (int k = 0; k < 3; ++k) {
            int a = i + di[k], b = j + dj[k];
            if (a < m.rows && b < m.cols && m.at(a, b) && go(a, b)) return true;
        }
        return false;
    };
    return go(0, 0);
}

// Enumerates every valid cell sequence (staircase from (0,0) to (R-1,C-1))
// and evaluates the induced predicate set literally from the pairwise rules.
inline bool cell_sequence_exists(const frq::HLAssignment& h, int tq, int ts) {
    if (!h.p1 || !h.p2) return false;
    const int R = tq - 1, C = ts - 1;
    std::vector<std::pair<int, int>> path{{0, 0}};
    std::function<bool(int, int)> go = [&](int i, int j) -> bool {
        if (i == R - 1 && j == C - 1) {
            auto in = [&](int a, int b) {
                for (auto& c : path)
                    if (c.first == a && c.second == b) return true;
                return false;
            };
            // horizontal moves cross input vertex s_j inside query edge i
            for (int a = 0; a < R; ++a)
                for (int b = 1; b < C; ++b)
                    if (in(a, b - 1) && in(a, b) && !h.vvep(a, b)) return false;
            for (int a = 1; a < R; ++a)
                for (int b = 0; b < C; ++b)
                    if (in(a - 1, b) && in(a, b) && !h.hvep(a, b)) return false;
            for (int a = 0; a < R; ++a)
                for (int j1 = 1; j1 < C; ++j1)
                    for (int k = j1 + 1; k < C; ++k)
                        if (in(a, j1 - 1) && in(a, k) && !h.hmp(a, j1, k)) return false;
            for (int b = 0; b < C; ++b)
                for (int i1 = 1; i1 < R; ++i1)
                    for (int k = i1 + 1; k < R; ++k)
                        if (in(i1 - 1, b) && in(k, b) && !h.vmp(i1, k, b)) return false;
            return true;
        }
        if (i + 1 < R) {
            path.push_back({i + 1, j});
            if (go(i + 1, j)) return true;
            path.pop_back();
        }
        if (j + 1 < C) {
            path.push_back({i, j + 1});
            if (go(i, j + 1)) return true;
            path.pop_back();
        }
        return false;
    };
    return go(0, 0);
}

inline frq::HLAssignment random_assignment(std::mt19937_64& g, int tq, int ts, double p_true) {
    std::bernoulli_distribution b(p_true);
    frq::HLAssignment h(tq, ts);
    h.p1 = b(g);
    h.p2 = b(g);
    for (auto* v : {&h.hvep_, &h.vvep_, &h.hmp_, &h.vmp_})
        for (auto& x : *v) x = b(g);
    return h;
}

// Closest point on a segment by ternary search on the convex distance.
inline double seg_dist(Point2 p, Point2 a, Point2 b) {
    double lo = 0, hi = 1;
    auto f = [&](double t) { return std::hypot(a.x + t * (b.x - a.x) - p.x, a.y + t * (b.y - a.y) - p.y); };
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (f(m1) < f(m2)) hi = m2; else lo = m1;
    }
    return std::min({f(lo), f(0), f(1)});
}

// Witness search: dense samples on the directed line plus the analytic chord
// endpoints; returns whether some p1 <= p2 has p1 near a1 and p2 near a2.
inline bool monotone_witness(Point2 a1, Point2 a2, Point2 from, Point2 to, double rho) {
    double vx = to.x - from.x, vy = to.y - from.y, len = std::hypot(vx, vy);
    double ux = vx / len, uy = vy / len;
    auto near = [&](double t, Point2 a) {
        double x = from.x + t * ux - a.x, y = from.y + t * uy - a.y;
        return x * x + y * y <= (rho + 1e-9) * (rho + 1e-9);
    };
    std::vector<double> ts;
    for (Point2 a : {a1, a2}) {
        double tc = (a.x - from.x) * ux + (a.y - from.y) * uy;
        double h = (a.x - from.x) * uy - (a.y - from.y) * ux;
        double rem = rho * rho - h * h;
        if (rem >= 0) {
            ts.push_back(tc - std::sqrt(rem));
            ts.push_back(tc + std::sqrt(rem));
        }
        for (int k = 0; k <= 10000; ++k) ts.push_back(tc - rho + 2 * rho * k / 10000.0);
    }
    double first1 = INFINITY, last2 = -INFINITY;
    for (double t : ts) {
        if (near(t, a1)) first1 = std::min(first1, t);
        if (near(t, a2)) last2 = std::max(last2, t);
    }
    return first1 <= last2;
}

}  // namespace oracle
