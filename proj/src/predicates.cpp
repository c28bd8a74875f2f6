#include "frq/predicates.hpp"

#include <algorithm>

#include "frq/error.hpp"

namespace frq {

HLAssignment::HLAssignment(int tq_, int ts_)
    : tq(tq_),
      ts(ts_),
      hvep_(static_cast<std::size_t>(tq_) * std::max(ts_ - 1, 0), 0),
      vvep_(static_cast<std::size_t>(std::max(tq_ - 1, 0)) * ts_, 0),
      hmp_(static_cast<std::size_t>(std::max(tq_ - 1, 0)) * ts_ * ts_, 0),
      vmp_(static_cast<std::size_t>(tq_) * tq_ * std::max(ts_ - 1, 0), 0) {}

namespace {

struct Chord {
    double lo = 1, hi = 0;
    bool empty() const { return lo > hi; }
};

// Intersection of the line {o + t u} (|u| = 1) with the closed disk around a.
Chord chord(Point2 o, Point2 u, Point2 a, double rho) {
    Point2 w = a - o;
    double tc = dot(u, w), h = cross(u, w), r = rho + kEps;
    double rem = r * r - h * h;
    if (rem < 0) return {};
    double half = std::sqrt(rem);
    return {tc - half, tc + half};
}

}  // namespace

bool monotone_direct(Point2 a1, Point2 a2, Point2 e_from, Point2 e_to, double rho) {
    Point2 v = e_to - e_from;
    double len = norm(v);
    if (len == 0) return within(a1, e_from, rho) && within(a2, e_from, rho);
    Point2 u = (1 / len) * v;
    Chord c1 = chord(e_from, u, a1, rho), c2 = chord(e_from, u, a2, rho);
    if (c1.empty() || c2.empty()) return false;
    return c1.lo <= c2.hi + kEps;
}

HLAssignment eval_hl(const Curve& q, const Curve& s, double rho) {
    const int tq = static_cast<int>(q.size()), ts = static_cast<int>(s.size());
    HLAssignment h(tq, ts);
    h.p1 = within(q[0], s[0], rho);
    h.p2 = within(q[tq - 1], s[ts - 1], rho);
    for (int i = 0; i < tq; ++i)
        for (int j = 0; j + 1 < ts; ++j) h.hvep(i, j) = point_segment_distance(q[i], s[j], s[j + 1]) <= rho + kEps;
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j) h.vvep(i, j) = point_segment_distance(s[j], q[i], q[i + 1]) <= rho + kEps;
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j)
            for (int k = j + 1; k < ts; ++k) h.hmp(i, j, k) = monotone_direct(s[j], s[k], q[i], q[i + 1], rho);
    for (int i = 0; i < tq; ++i)
        for (int k = i + 1; k < tq; ++k)
            for (int j = 0; j + 1 < ts; ++j) h.vmp(i, k, j) = monotone_direct(q[i], q[k], s[j], s[j + 1], rho);
    return h;
}

VertexEdgeBits ll_vertex_edge(Point2 a1, Point2 b1, Point2 b2, double rho) {
    VertexEdgeBits r;
    r.a = within(a1, b1, rho);
    r.b = within(a1, b2, rho);
    r.c = !(b1 == b2) && rotrect_contains(rect_around_segment(b1, b2, rho), a1);
    r.combined = r.a || r.b || r.c;
    return r;
}

MonotonicityBits ll_monotonicity(Point2 a1, Point2 a2, Point2 e_from, Point2 e_to, double rho) {
    MonotonicityBits r;
    Point2 v = e_to - e_from;
    double len = norm(v);
    if (len == 0) {
        r.d = within(a1, e_from, rho);
        r.e = within(a2, e_from, rho);
        r.f = true;
        r.combined = r.d && r.e;
        return r;
    }
    Point2 u = (1 / len) * v;
    auto side = [&](Point2 p) { return cross(u, p - e_from); };
    r.d = std::abs(side(a1)) <= rho + kEps;
    r.e = std::abs(side(a2)) <= rho + kEps;
    r.f = dot(a2 - a1, v) >= 0;
    r.g = within(a1, a2, 2 * rho);
    if (r.g) {
        if (a1 == a2) {
            // the lens is the whole disk
            r.h = r.d;
        } else {
            auto cc = circle_circle({a1, rho}, {a2, rho});
            if (auto* pr = std::get_if<CirclePair>(&cc)) {
                double sp = side(pr->b_plus), sm = side(pr->b_minus);
                r.h = (sp >= -kEps && sm <= kEps) || (sp <= kEps && sm >= -kEps);
                double theta = norm_angle_pi(std::atan2(u.y, u.x));
                for (auto [lo, hi] : tangent_angle_interval({{a1, rho}, {a2, rho}}))
                    if (theta >= lo - kEps && theta <= hi + kEps) r.i = true;
            } else if (auto* t = std::get_if<CircleTouch>(&cc)) {
                r.h = std::abs(side(t->p)) <= kEps;
            }
        }
    }
    r.combined = (r.d && r.e && r.f) || r.h || (r.d && r.e && r.i);
    return r;
}

HLAssignment eval_hl_lowlevel(const Curve& q, const Curve& s, double rho) {
    const int tq = static_cast<int>(q.size()), ts = static_cast<int>(s.size());
    HLAssignment h(tq, ts);
    h.p1 = within(q[0], s[0], rho);
    h.p2 = within(q[tq - 1], s[ts - 1], rho);
    for (int i = 0; i < tq; ++i)
        for (int j = 0; j + 1 < ts; ++j) h.hvep(i, j) = ll_vertex_edge(q[i], s[j], s[j + 1], rho).combined;
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j) h.vvep(i, j) = ll_vertex_edge(s[j], q[i], q[i + 1], rho).combined;
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j)
            for (int k = j + 1; k < ts; ++k)
                h.hmp(i, j, k) = ll_monotonicity(s[j], s[k], q[i], q[i + 1], rho).combined;
    for (int i = 0; i < tq; ++i)
        for (int k = i + 1; k < tq; ++k)
            for (int j = 0; j + 1 < ts; ++j)
                h.vmp(i, k, j) = ll_monotonicity(q[i], q[k], s[j], s[j + 1], rho).combined;
    return h;
}

// Cell (i,j) pairs query edge i with input edge j. Moving right from (i,j)
// crosses input vertex s_{j+1} (needs vvep(i,j+1)); moving up crosses query
// vertex q_{i+1} (needs hvep(i+1,j)). A cell reached from the left keeps the
// column where its horizontal run started (previous right turn); a cell reached
// from below keeps the row where its vertical run started (previous left turn).
// A later start imposes a subset of the monotonicity constraints, so keeping
// the latest start per direction is exact.
bool feasible_cell_sequence(const HLAssignment& h, int tq, int ts) {
    if (tq < 2 || ts < 2) throw ValidationError("feasible_cell_sequence: curves need at least 2 vertices");
    if (h.tq != tq || h.ts != ts) throw ValidationError("feasible_cell_sequence: assignment shape mismatch");
    if (!h.p1 || !h.p2) return false;
    const int R = tq - 1, C = ts - 1;
    std::vector<std::uint8_t> from_left(R * C, 0), from_below(R * C, 0);
    std::vector<int> prev_right(R * C, -1), prev_left(R * C, -1);
    auto id = [C](int i, int j) { return i * C + j; };

    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < C; ++j) {
            int c = id(i, j);
            if (i == 0 && j == 0) {
                from_left[c] = from_below[c] = 1;
            }
            if (j > 0 && h.vvep(i, j)) {
                int p = id(i, j - 1);
                if (from_below[p]) {
                    from_left[c] = 1;
                    prev_right[c] = j - 1;
                } else if (from_left[p]) {
                    int a = prev_right[p];
                    bool ok = true;
                    for (int m = a + 1; m <= j - 1 && ok; ++m) ok = h.hmp(i, m, j);
                    if (ok) {
                        from_left[c] = 1;
                        prev_right[c] = a;
                    }
                }
            }
            if (i > 0 && h.hvep(i, j)) {
                int p = id(i - 1, j);
                if (from_left[p]) {
                    from_below[c] = 1;
                    prev_left[c] = i - 1;
                } else if (from_below[p]) {
                    int b = prev_left[p];
                    bool ok = true;
                    for (int m = b + 1; m <= i - 1 && ok; ++m) ok = h.vmp(m, i, j);
                    if (ok) {
                        from_below[c] = 1;
                        prev_left[c] = b;
                    }
                }
            }
            if (from_left[c] && from_below[c]) {
                prev_right[c] = j;
                prev_left[c] = i;
            }
        }
    }
    int last = id(R - 1, C - 1);
    return from_left[last] || from_below[last];
}

bool continuous_decide_predicates(const Curve& q, const Curve& s, double rho) {
    if (q.size() < 2 || s.size() < 2) return alt_godau_decide(q, s, rho);
    return feasible_cell_sequence(eval_hl_lowlevel(q, s, rho), static_cast<int>(q.size()),
                                  static_cast<int>(s.size()));
}

}  // namespace frq
