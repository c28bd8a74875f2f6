#include "frq/signature.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "frq/error.hpp"

namespace frq {

SignVector sign_vector(const std::vector<Atom>& atoms, Point2 p) {
    SignVector v = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (atoms[i].eval(p)) v |= SignVector{1} << i;
    return v;
}

namespace {

// Zero set of an atom polynomial: a circle, a line n.p = off with |n| = 1, or
// nothing (constant sign).
struct Boundary {
    bool circle = false;
    Point2 c;
    double r = 0;
    Point2 n;
    double off = 0;
};

std::optional<Boundary> boundary_of(const Atom& a) {
    const Poly2& p = a.poly;
    if (p.xx == 0 && p.yy == 0 && p.xy == 0) {
        double len = std::hypot(p.x, p.y);
        if (len == 0) return std::nullopt;
        Boundary b;
        b.n = {p.x / len, p.y / len};
        b.off = (p.x * p.h + p.y * p.k - p.c) / len;
        return b;
    }
    if (p.xx != p.yy || p.xy != 0) throw ValidationError("arrangement: only circles and lines are supported");
    double cx = -p.x / (2 * p.xx), cy = -p.y / (2 * p.yy);
    double r2 = cx * cx + cy * cy - p.c / p.xx;
    if (r2 <= 0) return std::nullopt;
    Boundary b;
    b.circle = true;
    b.c = {p.h + cx, p.k + cy};
    b.r = std::sqrt(r2);
    return b;
}

std::vector<Point2> intersect(const Boundary& a, const Boundary& b) {
    std::vector<Point2> out;
    if (!a.circle && !b.circle) {
        double det = cross(a.n, b.n);
        if (std::abs(det) < 1e-14) return out;
        out.push_back({(a.off * b.n.y - b.off * a.n.y) / det, (a.n.x * b.off - b.n.x * a.off) / det});
        return out;
    }
    if (a.circle && b.circle) {
        Point2 d = b.c - a.c;
        double L = norm(d);
        if (L == 0 || L > a.r + b.r || L < std::abs(a.r - b.r)) return out;
        double x = (L * L + a.r * a.r - b.r * b.r) / (2 * L);
        double h = std::sqrt(std::max(0.0, a.r * a.r - x * x));
        Point2 u = (1 / L) * d, m = a.c + x * u;
        out.push_back(m + h * perp(u));
        out.push_back(m - h * perp(u));
        return out;
    }
    const Boundary& c = a.circle ? a : b;
    const Boundary& l = a.circle ? b : a;
    double s = dot(l.n, c.c) - l.off;
    if (std::abs(s) > c.r) return out;
    Point2 foot = c.c - s * l.n, dir = perp(l.n);
    double h = std::sqrt(std::max(0.0, c.r * c.r - s * s));
    out.push_back(foot + h * dir);
    out.push_back(foot - h * dir);
    return out;
}

struct Candidates {
    std::vector<Boundary> curves;
    std::vector<std::vector<Point2>> hits;  // intersection points per curve
    double scale = 1;
};

void probe(const Candidates& cand, double delta, Point2 far, const std::vector<Atom>& atoms,
           std::map<SignVector, Point2>& found) {
    auto add = [&](Point2 p) { found.try_emplace(sign_vector(atoms, p), p); };
    add(far);
    for (std::size_t ci = 0; ci < cand.curves.size(); ++ci) {
        const Boundary& b = cand.curves[ci];
        for (Point2 p : cand.hits[ci])
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy)
                    if (dx || dy) add(p + delta * Point2{double(dx), double(dy)});
        if (b.circle) {
            add(b.c);
            std::vector<double> angs;
            for (Point2 p : cand.hits[ci]) angs.push_back(std::atan2(p.y - b.c.y, p.x - b.c.x));
            std::sort(angs.begin(), angs.end());
            std::vector<double> samples;
            for (int k = 0; k < 16; ++k) samples.push_back(2 * kPi * k / 16);
            for (std::size_t k = 0; k < angs.size(); ++k) {
                double a0 = angs[k], a1 = k + 1 < angs.size() ? angs[k + 1] : angs[0] + 2 * kPi;
                samples.push_back((a0 + a1) / 2);
            }
            for (double t : samples) {
                Point2 u{std::cos(t), std::sin(t)};
                add(b.c + (b.r + delta) * u);
                add(b.c + std::max(0.0, b.r - delta) * u);
            }
        } else {
            Point2 base = b.off * b.n, dir = perp(b.n);
            std::vector<double> ts;
            for (Point2 p : cand.hits[ci]) ts.push_back(dot(p - base, dir));
            std::sort(ts.begin(), ts.end());
            std::vector<double> samples;
            if (ts.empty()) {
                samples = {0.0};
            } else {
                double span = ts.back() - ts.front() + cand.scale;
                samples.push_back(ts.front() - span);
                samples.push_back(ts.back() + span);
                for (std::size_t k = 0; k + 1 < ts.size(); ++k) samples.push_back((ts[k] + ts[k + 1]) / 2);
            }
            for (double t : samples) {
                Point2 p = base + t * dir;
                add(p + delta * b.n);
                add(p - delta * b.n);
                // thin strips between close parallel lines
                for (std::size_t oj = 0; oj < cand.curves.size(); ++oj) {
                    const Boundary& o = cand.curves[oj];
                    if (o.circle || oj == ci || std::abs(cross(o.n, b.n)) > 1e-14) continue;
                    double gap = dot(o.n, p) - o.off;
                    if (std::abs(gap) < 4 * delta) add(p - (gap / 2) * o.n);
                }
            }
        }
    }
}

}  // namespace

std::vector<ArrangementCell> arrangement_cells(const std::vector<Atom>& atoms, std::optional<Point2> far) {
    if (atoms.size() > 64) throw ValidationError("arrangement: more than 64 ranges");
    Candidates cand;
    for (const auto& a : atoms)
        if (auto b = boundary_of(a)) cand.curves.push_back(*b);
    cand.hits.resize(cand.curves.size());
    double extent = 1;
    for (std::size_t i = 0; i < cand.curves.size(); ++i) {
        const auto& b = cand.curves[i];
        if (b.circle) extent = std::max({extent, std::abs(b.c.x) + b.r, std::abs(b.c.y) + b.r});
        else extent = std::max(extent, std::abs(b.off));
        for (std::size_t j = i + 1; j < cand.curves.size(); ++j)
            for (Point2 p : intersect(cand.curves[i], cand.curves[j])) {
                cand.hits[i].push_back(p);
                cand.hits[j].push_back(p);
                extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
            }
    }
    cand.scale = extent;
    Point2 far_pt = far ? *far : Point2{11 * extent, 11 * extent};

    std::map<SignVector, Point2> found;
    double delta = 1e-3 * extent;
    probe(cand, delta, far_pt, atoms, found);
    int halvings = 0;
    for (;;) {
        std::size_t before = found.size();
        delta /= 2;
        probe(cand, delta, far_pt, atoms, found);
        if (found.size() == before && halvings >= 2) break;
        if (++halvings > 40) throw DegenerateGeometry("arrangement: cell set did not stabilise after 40 halvings");
    }
    std::vector<ArrangementCell> out;
    for (auto& [v, p] : found) out.push_back({v, p});
    return out;
}

std::vector<ArrangementCell> disk_arrangement_cells(const std::vector<Point2>& centers, double rho) {
    if (centers.empty() || centers.size() > 64) throw ValidationError("disk_arrangement_cells: need 1..64 centers");
    std::vector<Atom> atoms;
    double mx = -1e300, my = -1e300;
    for (Point2 c : centers) {
        atoms.push_back(disk_atom(c, rho));
        mx = std::max(mx, c.x);
        my = std::max(my, c.y);
    }
    return arrangement_cells(atoms, Point2{mx + 11 * rho + 1, my + 11 * rho + 1});
}

std::vector<RefinedCell> refine_cell(SignVector v, const std::vector<Point2>& centers_in, double rho) {
    // dedupe coincident disks; their sign bits must agree
    std::vector<Point2> centers;
    std::vector<Atom> all;
    for (Point2 c : centers_in) all.push_back(disk_atom(c, rho));
    for (Point2 c : centers_in)
        if (std::find(centers.begin(), centers.end(), c) == centers.end()) centers.push_back(c);
    const double r = rho + kEps;

    std::vector<double> xs;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        xs.push_back(centers[i].x - r);
        xs.push_back(centers[i].x + r);
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            Boundary a{true, centers[i], r, {}, 0}, b{true, centers[j], r, {}, 0};
            for (Point2 p : intersect(a, b)) xs.push_back(p.x);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<RefinedCell> out;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s <= xs.size(); ++s) {
        double xl = s == 0 ? -inf : xs[s - 1], xr = s == xs.size() ? inf : xs[s];
        double xm = std::isinf(xl) ? xr - 1 : (std::isinf(xr) ? xl + 1 : (xl + xr) / 2);
        // arcs spanning the slab, ordered by height at xm
        struct Arc {
            double y;
            std::size_t circle;
            bool upper;
        };
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < centers.size(); ++i) {
            double dx = xm - centers[i].x;
            if (std::abs(dx) >= r) continue;
            double h = std::sqrt(r * r - dx * dx);
            arcs.push_back({centers[i].y - h, i, false});
            arcs.push_back({centers[i].y + h, i, true});
        }
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.y < b.y; });
        for (std::size_t g = 0; g <= arcs.size(); ++g) {
            double ylo = g == 0 ? -inf : arcs[g - 1].y, yhi = g == arcs.size() ? inf : arcs[g].y;
            double ym = std::isinf(ylo) ? yhi - 1 : (std::isinf(yhi) ? ylo + 1 : (ylo + yhi) / 2);
            if (arcs.empty()) ym = 0;
            if (sign_vector(all, {xm, ym}) != v) continue;
            RefinedCell cell;
            if (!std::isinf(xl)) cell.atoms.push_back(linear_atom(1, 0, -xl, Rel::Ge));
            if (!std::isinf(xr)) cell.atoms.push_back(linear_atom(1, 0, -xr, Rel::Lt));
            auto bound = [&](const Arc& a, bool is_lower) {
                Point2 c = centers[a.circle];
                // region just above an upper arc or below a lower arc is outside that disk
                bool outside = a.upper == is_lower;
                if (outside) {
                    cell.atoms.push_back(outside_disk_atom(c, rho));
                    cell.atoms.push_back(linear_atom(0, 1, -c.y, is_lower ? Rel::Ge : Rel::Le));
                } else {
                    cell.atoms.push_back(disk_atom(c, rho));
                }
            };
            if (g > 0) bound(arcs[g - 1], true);
            if (g < arcs.size() && !(g > 0 && arcs[g].circle == arcs[g - 1].circle && !arcs[g - 1].upper))
                bound(arcs[g], false);
            out.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<FreeSpaceMatrix> enumerate_feasible_matrices(const Curve& q, double rho, int ts, std::size_t cap) {
    if (q.size() == 0 || ts < 1) throw ValidationError("enumerate_feasible_matrices: empty curve");
    const int tq = static_cast<int>(q.size());
    auto cells = disk_arrangement_cells(q.vertices, rho);
    const std::size_t m = cells.size();
    double prod = std::pow(static_cast<double>(m), ts);
    if (prod > static_cast<double>(cap))
        throw ResourceError("enumerate_feasible_matrices: " + std::to_string(m) + "^" + std::to_string(ts) +
                            " candidate matrices exceed cap " + std::to_string(cap));
    std::vector<FreeSpaceMatrix> out;
    std::vector<std::size_t> idx(ts, 0);
    for (;;) {
        FreeSpaceMatrix mat(tq, ts);
        for (int j = 0; j < ts; ++j)
            for (int i = 0; i < tq; ++i) mat.set(i, j, (cells[idx[j]].signs >> i) & 1);
        if (matrix_feasible(mat)) out.push_back(std::move(mat));
        int j = 0;
        while (j < ts && ++idx[j] == m) idx[j++] = 0;
        if (j == ts) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

Clause cell_clause(const std::vector<Atom>& atoms, SignVector mask) {
    Clause c;
    for (std::size_t i = 0; i < atoms.size(); ++i) c.push_back((mask >> i) & 1 ? atoms[i] : atoms[i].negated());
    return c;
}

}  // namespace

QueryPlanDiscrete::QueryPlanDiscrete(const Curve& q, double rho, int ts, std::size_t cap)
    : q_(q), rho_(rho), ts_(ts) {
    matrices_ = enumerate_feasible_matrices(q, rho, ts, cap);
    PlanLevel lvl;
    for (Point2 c : q.vertices) lvl.atoms.push_back(disk_atom(c, rho));
    for (const auto& cell : disk_arrangement_cells(q.vertices, rho))
        lvl.cells.push_back({cell.signs, cell_clause(lvl.atoms, cell.signs), refine_cell(cell.signs, q.vertices, rho)});
    levels_.assign(ts, lvl);

    trie_.emplace_back();
    const int tq = static_cast<int>(q.size());
    for (const auto& m : matrices_) {
        long node = 0;
        for (int j = 0; j < ts; ++j) {
            SignVector col = 0;
            for (int i = 0; i < tq; ++i)
                if (m.at(i, j)) col |= SignVector{1} << i;
            auto it = trie_[node].find(col);
            if (it == trie_[node].end()) {
                trie_.emplace_back();
                it = trie_[node].emplace(col, static_cast<long>(trie_.size() - 1)).first;
            }
            node = it->second;
        }
    }
}

long QueryPlanDiscrete::step(long state, int, SignVector mask) const {
    if (state < 0) return -1;
    auto it = trie_[state].find(mask);
    return it == trie_[state].end() ? -1 : it->second;
}

// ---- continuous layout ---------------------------------------------------------

std::vector<ColumnSpec> column_specs(int ts) {
    if (ts < 2) throw ValidationError("column_specs: t_s must be at least 2");
    std::vector<ColumnSpec> out;
    for (int j = 0; j < ts; ++j)
        for (int e = 1; e <= 6; ++e) out.push_back({ColumnKind::Hvep, e, j, 0, j == ts - 1});
    for (int j = 0; j < ts; ++j)
        for (int e = 1; e <= 6; ++e) out.push_back({ColumnKind::Vvep, e, j, 0, false});
    for (int j = 0; j < ts; ++j)
        for (int k = j + 1; k < ts; ++k)
            for (int e = 1; e <= 9; ++e) out.push_back({ColumnKind::Hmp, e, j, k, false});
    for (int j = 0; j < ts; ++j)
        for (int e = 1; e <= 8; ++e) out.push_back({ColumnKind::Vmp, e, j, 0, j == ts - 1});
    out.push_back({ColumnKind::Start, 1, 0, 0, false});
    out.push_back({ColumnKind::End, 1, ts - 1, 0, false});
    return out;
}

std::string to_string(const ColumnSpec& c) {
    static const char* names[] = {"hvep", "vvep", "hmp", "vmp", "start", "end"};
    std::string s = names[static_cast<int>(c.kind)];
    s += "(" + std::to_string(c.j);
    if (c.kind == ColumnKind::Hmp) s += "," + std::to_string(c.k);
    s += ")#" + std::to_string(c.entry);
    if (c.padding) s += "*";
    return s;
}

namespace {

int ts_of(const std::vector<ColumnSpec>& specs) {
    int n = 0;
    for (const auto& c : specs) n += c.kind == ColumnKind::Vvep && c.entry == 1;
    return n;
}

Point2 unit_or_zero(Point2 v) {
    double l = norm(v);
    return l == 0 ? Point2{0, 0} : (1 / l) * v;
}

// Lens of two rho-disks: b+/b- and the directed tangent range [lo, lo + 2 beta]
// of the arc on the first disk, chosen not to wrap past 2 pi.
struct LensInfo {
    enum { None, Touch, Pair } kind = None;
    Point2 bp, bm;
    double lo = 0, hi = 0;
};

LensInfo lens_info(Point2 a1, Point2 a2, double rho) {
    LensInfo li;
    if (a1 == a2 || !within(a1, a2, 2 * rho)) return li;
    auto cc = circle_circle({a1, rho}, {a2, rho});
    if (auto* p = std::get_if<CirclePair>(&cc)) {
        li.kind = LensInfo::Pair;
        li.bp = p->b_plus;
        li.bm = p->b_minus;
        double phi = std::atan2(a2.y - a1.y, a2.x - a1.x);
        double beta = std::acos(std::min(1.0, dist(a1, a2) / (2 * rho)));
        double lo = norm_angle_2pi(phi + kPi / 2 - beta);
        if (lo + 2 * beta >= 2 * kPi) lo -= kPi;
        li.lo = lo;
        li.hi = lo + 2 * beta;
    } else if (auto* t = std::get_if<CircleTouch>(&cc)) {
        li.kind = LensInfo::Touch;
        li.bp = li.bm = t->p;
    }
    return li;
}

}  // namespace

TPointEmbedding curve_to_tpoint(const Curve& s, double rho, const std::vector<ColumnSpec>& specs) {
    const int ts = ts_of(specs);
    if (static_cast<int>(s.size()) != ts)
        throw ValidationError("curve_to_tpoint: curve " + s.id + " has " + std::to_string(s.size()) +
                              " vertices, layout expects " + std::to_string(ts));
    TPointEmbedding out;
    auto note = [&](const std::string& msg) {
        if (std::find(out.diagnostics.begin(), out.diagnostics.end(), msg) == out.diagnostics.end())
            out.diagnostics.push_back(msg);
    };
    const Point2 far_b{kSentinel, kSentinel};
    for (const auto& c : specs) {
        Point2 p{0, 0};
        if (c.padding) {
            out.coords.push_back(p);
            continue;
        }
        switch (c.kind) {
            case ColumnKind::Hvep: {
                Point2 a = s[c.j], b = s[c.j + 1];
                if (c.entry == 1) p = a;
                else if (c.entry == 2) p = b;
                else {
                    bool below = c.entry <= 4;
                    Point2 d = b - a;
                    if (d.x == 0 || d.y == 0) {
                        note("edge " + std::to_string(c.j) + ": zero-length or axis-parallel, rectangle test disabled");
                        p = {0, below ? -kSentinel : kSentinel};
                        break;
                    }
                    double sl = d.y / d.x, ic = a.y - sl * a.x, off = rho * std::sqrt(1 + sl * sl);
                    double ps = -1 / sl, ia = a.y - ps * a.x, ib = b.y - ps * b.x;
                    if (c.entry == 3) p = {sl, ic + off};
                    else if (c.entry == 4) p = {ps, std::max(ia, ib)};
                    else if (c.entry == 5) p = {sl, ic - off};
                    else p = {ps, std::min(ia, ib)};
                }
                break;
            }
            case ColumnKind::Vvep: p = s[c.j]; break;
            case ColumnKind::Hmp: {
                Point2 a = s[c.j], b = s[c.k];
                if (c.entry <= 2) p = a;
                else if (c.entry <= 4) p = b;
                else if (c.entry == 5) p = unit_or_zero(b - a);
                else {
                    auto li = lens_info(a, b, rho);
                    if (c.entry == 6) p = li.kind == LensInfo::None ? far_b : li.bp;
                    else if (c.entry == 7) p = li.kind == LensInfo::None ? far_b : li.bm;
                    else if (c.entry == 8) p = {li.kind == LensInfo::Pair ? li.lo : kSentinel, 0};
                    else p = {li.kind == LensInfo::Pair ? li.hi : -kSentinel, 0};
                }
                break;
            }
            case ColumnKind::Vmp: {
                Point2 a = s[c.j], b = s[c.j + 1], d = b - a;
                if (c.entry == 5 || c.entry == 8) {
                    p = unit_or_zero(d);
                    break;
                }
                if (d.x == 0) {
                    note("edge " + std::to_string(c.j) + ": zero-length or vertical, monotonicity columns disabled");
                    p = {0, (c.entry == 1 || c.entry == 3) ? -kSentinel : kSentinel};
                    break;
                }
                double sl = d.y / d.x, ic = a.y - sl * a.x, off = rho * std::sqrt(1 + sl * sl);
                if (c.entry == 1 || c.entry == 3) p = {sl, ic + off};
                else if (c.entry == 2 || c.entry == 4) p = {sl, ic - off};
                else p = {sl, ic};
                break;
            }
            case ColumnKind::Start: p = s[0]; break;
            case ColumnKind::End: p = s[ts - 1]; break;
        }
        out.coords.push_back(p);
    }
    return out;
}

std::vector<Atom> column_atoms(const ColumnSpec& c, const Curve& q, double rho) {
    const int tq = static_cast<int>(q.size());
    std::vector<Atom> atoms;
    if (c.padding) return atoms;
    const double e = kEps;
    auto below = [&](Point2 v) { return linear_atom(v.x, 1, e - v.y, Rel::Ge); };  // v below stored dual line
    auto above = [&](Point2 v) { return linear_atom(v.x, 1, -v.y - e, Rel::Le); };
    switch (c.kind) {
        case ColumnKind::Hvep:
            for (int i = 0; i < tq; ++i) {
                if (c.entry <= 2) atoms.push_back(disk_atom(q[i], rho));
                else atoms.push_back(c.entry <= 4 ? below(q[i]) : above(q[i]));
            }
            break;
        case ColumnKind::Vvep:
            for (int i = 0; i + 1 < tq; ++i) {
                if (c.entry == 1) atoms.push_back(disk_atom(q[i], rho));
                else if (c.entry == 2) atoms.push_back(disk_atom(q[i + 1], rho));
                else if (q[i] == q[i + 1]) atoms.push_back(const_atom(false));
                else {
                    auto hp = rect_sides(rect_around_segment(q[i], q[i + 1], rho))[c.entry - 3];
                    atoms.push_back(linear_atom(hp.n.x, hp.n.y, -hp.c - e, Rel::Le));
                }
            }
            break;
        case ColumnKind::Hmp:
            for (int i = 0; i + 1 < tq; ++i) {
                if (q[i] == q[i + 1]) {
                    if (c.entry == 1 || c.entry == 3) atoms.push_back(disk_atom(q[i], rho));
                    else if (c.entry <= 5) atoms.push_back(const_atom(true));
                    else atoms.insert(atoms.end(), 2, const_atom(false));
                    continue;
                }
                Point2 u = unit_or_zero(q[i + 1] - q[i]), n = perp(u);
                double nq = dot(n, q[i]);
                double th = norm_angle_pi(std::atan2(u.y, u.x));
                switch (c.entry) {
                    case 1:
                    case 3: atoms.push_back(linear_atom(n.x, n.y, -nq - rho - e, Rel::Le)); break;
                    case 2:
                    case 4: atoms.push_back(linear_atom(n.x, n.y, -nq + rho + e, Rel::Ge)); break;
                    case 5: atoms.push_back(linear_atom(u.x, u.y, 0, Rel::Ge)); break;
                    case 6:
                    case 7:
                        atoms.push_back(linear_atom(n.x, n.y, -nq + e, Rel::Ge));
                        atoms.push_back(linear_atom(n.x, n.y, -nq - e, Rel::Le));
                        break;
                    case 8:
                        atoms.push_back(linear_atom(1, 0, -(th + e), Rel::Le));
                        atoms.push_back(linear_atom(1, 0, -(th + kPi + e), Rel::Le));
                        break;
                    default:
                        atoms.push_back(linear_atom(1, 0, -(th - e), Rel::Ge));
                        atoms.push_back(linear_atom(1, 0, -(th + kPi - e), Rel::Ge));
                }
            }
            break;
        case ColumnKind::Vmp:
            for (int i = 0; i < tq; ++i)
                for (int k = i + 1; k < tq; ++k) {
                    switch (c.entry) {
                        case 1: atoms.push_back(below(q[i])); break;
                        case 2: atoms.push_back(above(q[i])); break;
                        case 3: atoms.push_back(below(q[k])); break;
                        case 4: atoms.push_back(above(q[k])); break;
                        case 5: {
                            Point2 d = q[k] - q[i];
                            atoms.push_back(linear_atom(d.x, d.y, 0, Rel::Ge));
                            break;
                        }
                        case 6:
                        case 7: {
                            auto li = lens_info(q[i], q[k], rho);
                            if (li.kind == LensInfo::None) {
                                atoms.insert(atoms.end(), 2, const_atom(false));
                                break;
                            }
                            Point2 b = c.entry == 6 ? li.bp : li.bm;
                            // b above / below the stored line (slope x, intercept y)
                            atoms.push_back(linear_atom(-b.x, -1, b.y + e, Rel::Ge));
                            atoms.push_back(linear_atom(-b.x, -1, b.y - e, Rel::Le));
                            break;
                        }
                        default: {
                            auto li = lens_info(q[i], q[k], rho);
                            if (li.kind != LensInfo::Pair) {
                                atoms.insert(atoms.end(), 4, const_atom(false));
                                break;
                            }
                            for (double base : {li.lo, li.lo + kPi}) {
                                Point2 wl{std::cos(base), std::sin(base)};
                                Point2 wh{std::cos(base + li.hi - li.lo), std::sin(base + li.hi - li.lo)};
                                atoms.push_back(linear_atom(-wl.y, wl.x, e, Rel::Ge));  // cross(wl, x) >= -e
                                atoms.push_back(linear_atom(wh.y, -wh.x, e, Rel::Ge));  // cross(x, wh) >= -e
                            }
                        }
                    }
                }
            break;
        case ColumnKind::Start: atoms.push_back(disk_atom(q[0], rho)); break;
        case ColumnKind::End: atoms.push_back(disk_atom(q[tq - 1], rho)); break;
    }
    if (atoms.size() > 64) throw ValidationError("column_atoms: query too long for a 64-bit sign vector");
    return atoms;
}

HLAssignment hl_from_masks(const std::vector<ColumnSpec>& specs, const std::vector<SignVector>& masks, int tq,
                           int ts) {
    if (masks.size() != specs.size()) throw ValidationError("hl_from_masks: mask count mismatch");
    HLAssignment h(tq, ts);
    // column index of (kind, j, k, entry)
    std::map<std::tuple<int, int, int, int>, std::size_t> where;
    for (std::size_t c = 0; c < specs.size(); ++c)
        where[{static_cast<int>(specs[c].kind), specs[c].j, specs[c].k, specs[c].entry}] = c;
    auto bit = [&](ColumnKind kind, int j, int k, int entry, int b) -> bool {
        return (masks[where.at({static_cast<int>(kind), j, k, entry})] >> b) & 1;
    };
    h.p1 = bit(ColumnKind::Start, 0, 0, 1, 0);
    h.p2 = bit(ColumnKind::End, ts - 1, 0, 1, 0);
    for (int i = 0; i < tq; ++i)
        for (int j = 0; j + 1 < ts; ++j) {
            auto b = [&](int e) { return bit(ColumnKind::Hvep, j, 0, e, i); };
            h.hvep(i, j) = b(1) || b(2) || (b(3) && b(4) && b(5) && b(6));
        }
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j) {
            auto b = [&](int e) { return bit(ColumnKind::Vvep, j, 0, e, i); };
            h.vvep(i, j) = b(1) || b(2) || (b(3) && b(4) && b(5) && b(6));
        }
    for (int i = 0; i + 1 < tq; ++i)
        for (int j = 0; j < ts; ++j)
            for (int k = j + 1; k < ts; ++k) {
                auto b = [&](int e, int bb) { return bit(ColumnKind::Hmp, j, k, e, bb); };
                bool d = b(1, i) && b(2, i), ee = b(3, i) && b(4, i), f = b(5, i);
                bool hh = (b(6, 2 * i) && b(7, 2 * i + 1)) || (b(6, 2 * i + 1) && b(7, 2 * i));
                bool ii = (b(8, 2 * i) && b(9, 2 * i)) || (b(8, 2 * i + 1) && b(9, 2 * i + 1));
                h.hmp(i, j, k) = (d && ee && f) || hh || (d && ee && ii);
            }
    int r = 0;
    for (int i = 0; i < tq; ++i)
        for (int k = i + 1; k < tq; ++k, ++r)
            for (int j = 0; j + 1 < ts; ++j) {
                auto b = [&](int e, int bb) { return bit(ColumnKind::Vmp, j, 0, e, bb); };
                bool d = b(1, r) && b(2, r), ee = b(3, r) && b(4, r), f = b(5, r);
                bool hh = (b(6, 2 * r) && b(7, 2 * r + 1)) || (b(6, 2 * r + 1) && b(7, 2 * r));
                bool ii = (b(8, 4 * r) && b(8, 4 * r + 1)) || (b(8, 4 * r + 2) && b(8, 4 * r + 3));
                h.vmp(i, k, j) = (d && ee && f) || hh || (d && ee && ii);
            }
    return h;
}

ContinuousQueryPlan::ContinuousQueryPlan(const Curve& q, double rho, int ts)
    : q_(q), rho_(rho), ts_(ts), specs_(column_specs(ts)) {
    if (q.size() < 2) throw ValidationError("continuous query needs at least 2 vertices");
    for (const auto& c : specs_) {
        PlanLevel lvl;
        lvl.atoms = column_atoms(c, q, rho);
        for (const auto& cell : arrangement_cells(lvl.atoms))
            lvl.cells.push_back({cell.signs, cell_clause(lvl.atoms, cell.signs), {}});
        levels_.push_back(std::move(lvl));
    }
}

long ContinuousQueryPlan::step(long state, int k, SignVector mask) const {
    if (state < 0) return -1;
    auto kind = specs_[k].kind;
    if ((kind == ColumnKind::Start || kind == ColumnKind::End) && !(mask & 1)) return -1;
    return state;
}

HLAssignment ContinuousQueryPlan::assignment(const std::vector<SignVector>& masks) const {
    return hl_from_masks(specs_, masks, static_cast<int>(q_.size()), ts_);
}

bool ContinuousQueryPlan::accept(long state, const std::vector<SignVector>& masks) const {
    if (state < 0) return false;
    return feasible_cell_sequence(assignment(masks), static_cast<int>(q_.size()), ts_);
}

std::vector<ContinuousQueryPlan::Assignment> ContinuousQueryPlan::enumerate_assignments(std::size_t cap) const {
    double prod = 1;
    for (const auto& l : levels_) prod *= static_cast<double>(l.cells.size());
    if (prod > static_cast<double>(cap))
        throw ResourceError("continuous_query_plan: " + std::to_string(prod) + " global assignments exceed cap " +
                            std::to_string(cap));
    std::vector<Assignment> out;
    std::vector<SignVector> masks(levels_.size());
    std::vector<std::size_t> idx(levels_.size(), 0);
    for (;;) {
        long st = initial_state();
        for (std::size_t k = 0; k < levels_.size(); ++k) {
            masks[k] = levels_[k].cells[idx[k]].mask;
            st = step(st, static_cast<int>(k), masks[k]);
        }
        if (accept(st, masks)) out.push_back({assignment(masks), masks});
        std::size_t k = 0;
        while (k < levels_.size() && ++idx[k] == levels_[k].cells.size()) idx[k++] = 0;
        if (k == levels_.size()) break;
    }
    return out;
}

}  // namespace frq
