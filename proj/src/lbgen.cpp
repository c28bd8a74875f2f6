#include "frq/lbgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "frq/error.hpp"
#include "frq/rng.hpp"

namespace frq {

std::int64_t reversed_base(std::int64_t i, std::int64_t x, int digits) {
    if (x < 2) throw ValidationError("reversed_base: base must be >= 2");
    if (i < 0 || digits < 0) throw ValidationError("reversed_base: negative argument");
    std::int64_t out = 0, rest = i;
    for (int d = 0; d < digits; ++d) {
        out = out * x + rest % x;
        rest /= x;
    }
    if (rest != 0)
        throw ValidationError("reversed_base: " + std::to_string(i) + " does not fit in " + std::to_string(digits) +
                              " base-" + std::to_string(x) + " digits");
    return out;
}

std::vector<std::int64_t> first_primes(int count) {
    std::vector<std::int64_t> ps;
    for (std::int64_t c = 2; static_cast<int>(ps.size()) < count; ++c) {
        bool prime = true;
        for (auto p : ps) {
            if (p * p > c) break;
            if (c % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) ps.push_back(c);
    }
    return ps;
}

namespace {

// floor(log_a N) + 1, i.e. the number of base-a digits of N.
int digit_count(std::int64_t N, std::int64_t a) {
    int d = 0;
    for (std::int64_t v = N; v > 0; v /= a) ++d;
    return std::max(d, 1);
}

std::int64_t ipow(std::int64_t a, int e) {
    std::int64_t v = 1;
    while (e-- > 0) v *= a;
    return v;
}

}  // namespace

std::vector<std::vector<double>> prime_base_points(int N, int D) {
    if (D < 2 || N < 2) throw ValidationError("prime_base_points: need D >= 2 and N >= 2");
    auto primes = first_primes(D - 1);
    std::vector<int> digits;
    for (auto a : primes) digits.push_back(digit_count(N, a));
    std::vector<std::vector<double>> pts(N, std::vector<double>(D));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < D - 1; ++j) pts[i][j] = static_cast<double>(reversed_base(i, primes[j], digits[j]));
        pts[i][D - 1] = i;
    }
    return pts;
}

std::vector<double> prime_base_extent(int N, int D) {
    auto primes = first_primes(D - 1);
    std::vector<double> ext;
    for (auto a : primes) ext.push_back(static_cast<double>(ipow(a, digit_count(N, a))));
    ext.push_back(N);
    return ext;
}

PairVolume min_pair_box_volume(const std::vector<std::vector<double>>& points, bool same_color_only,
                               const std::vector<int>& colors) {
    if (same_color_only && colors.size() != points.size())
        throw ValidationError("min_pair_box_volume: one color per point required");
    PairVolume best{std::numeric_limits<double>::infinity(), 0, 0};
    bool any = false;
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            if (same_color_only && colors[a] != colors[b]) continue;
            double v = 1;
            for (std::size_t k = 0; k < points[a].size(); ++k) v *= std::abs(points[a][k] - points[b][k]);
            if (!any || v < best.volume) best = {v, a, b};
            any = true;
        }
    if (!any) throw ValidationError("min_pair_box_volume: fewer than 2 eligible points");
    return best;
}

std::vector<ColoredPoint> colored_parametric_points(int r, int n_c, int t) {
    if (t < 1) throw ValidationError("colored_parametric_points: t must be >= 1");
    if (n_c < 1 || 2 * n_c >= r)
        throw ValidationError("colored_parametric_points: need 1 <= n_c < r/2 (n_c=" + std::to_string(n_c) +
                              ", r=" + std::to_string(r) + ")");
    auto raw = prime_base_points(r, t + 1);
    auto ext = prime_base_extent(r, t + 1);
    std::vector<ColoredPoint> out(r);
    for (int i = 0; i < r; ++i) {
        double x = raw[i][t] / r;
        out[i].color = static_cast<int>(std::floor(x * n_c));
        for (int j = 0; j < t; ++j) out[i].phi.push_back(raw[i][j] / ext[j]);
    }
    return out;
}

std::vector<Color> colors_enumerate(std::int64_t X, int t) {
    if (X < 1 || t < 2) throw ValidationError("colors_enumerate: need X >= 1 and t >= 2");
    double count = std::pow(static_cast<double>(X), t - 1);
    if (count > 4294967296.0) throw ResourceError("colors_enumerate: X^(t-1) exceeds 2^32");
    std::vector<Color> out;
    out.reserve(static_cast<std::size_t>(count));
    Color c(t - 1, 0);
    while (true) {
        out.push_back(c);
        int k = t - 2;
        while (k >= 0 && ++c[k] == X) c[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

bool is_bad_subset(const std::vector<Color>& colors) {
    if (colors.empty()) return true;
    for (std::size_t d = 0; d < colors[0].size(); ++d) {
        int a = colors[0][d], b = a;
        for (const auto& c : colors) {
            if (c[d] == a || c[d] == b) continue;
            if (a != b) return false;
            b = c[d];
        }
    }
    return true;
}

namespace {

struct BadSearch {
    const std::vector<Color>& colors;
    int l;
    std::uint64_t cap, work = 0;
    bool exhausted = false;
    std::vector<std::size_t> chosen;
    std::vector<std::array<int, 2>> vals;
    std::vector<int> cnt;

    bool run(std::size_t start) {
        if (static_cast<int>(chosen.size()) == l) return true;
        std::size_t need = l - chosen.size();
        for (std::size_t i = start; i + need <= colors.size(); ++i) {
            if (++work > cap) {
                exhausted = true;
                return false;
            }
            const Color& c = colors[i];
            std::vector<std::size_t> added;
            bool ok = true;
            for (std::size_t d = 0; d < c.size(); ++d) {
                if (cnt[d] > 0 && vals[d][0] == c[d]) continue;
                if (cnt[d] > 1 && vals[d][1] == c[d]) continue;
                if (cnt[d] == 2) {
                    ok = false;
                    break;
                }
                vals[d][cnt[d]++] = c[d];
                added.push_back(d);
            }
            if (ok) {
                chosen.push_back(i);
                if (run(i + 1)) return true;
                chosen.pop_back();
            }
            for (auto d : added) --cnt[d];
            if (exhausted) return false;
        }
        return false;
    }
};

}  // namespace

std::vector<std::size_t> find_bad_subset(const std::vector<Color>& colors, int l, std::uint64_t cap,
                                         bool* exhausted) {
    if (exhausted) *exhausted = false;
    if (l < 1 || colors.size() < static_cast<std::size_t>(l)) return {};
    std::size_t dims = colors[0].size();
    BadSearch s{colors, l, cap, 0, false, {}, std::vector<std::array<int, 2>>(dims), std::vector<int>(dims, 0)};
    bool found = s.run(0);
    if (exhausted) *exhausted = s.exhausted;
    return found ? s.chosen : std::vector<std::size_t>{};
}

bool remove_bad_subsets(std::vector<Color>& colors, int l, std::uint64_t cap) {
    while (true) {
        bool exhausted = false;
        auto bad = find_bad_subset(colors, l, cap, &exhausted);
        if (exhausted) return false;
        if (bad.empty()) return true;
        colors.erase(colors.begin() + static_cast<std::ptrdiff_t>(bad.back()));
    }
}

PruneResult prune_colors(const std::vector<Color>& colors, int l, int t, std::uint64_t seed, std::int64_t X) {
    if (l < 2) throw ValidationError("prune_colors: l must be >= 2");
    PruneResult res;
    if (t < 2 || static_cast<double>(l) > std::pow(2.0, t - 1)) {
        res.colors = colors;
        res.easy = true;
        return res;
    }
    res.p = std::min(1.0, std::pow(2.0, -t) * std::pow(static_cast<double>(X), -2.0 * t / l));
    const double want = std::pow(static_cast<double>(X), t - 1) * res.p / 4;
    Rng base(seed);
    for (int round = 0; round < 20; ++round) {
        res.rounds = round + 1;
        Rng g = base.stream("prune/" + std::to_string(round));
        std::vector<Color> sample;
        for (const auto& c : colors)
            if (g.uniform() < res.p) sample.push_back(c);
        // A single color never forms a bad subset, so an empty draw is topped up.
        if (sample.empty() && !colors.empty()) sample.push_back(colors[g.below(colors.size())]);
        if (!remove_bad_subsets(sample, l)) {
            res.diagnostics += "round " + std::to_string(round) + ": search cap hit; ";
            continue;
        }
        if (static_cast<double>(sample.size()) < want) {
            res.diagnostics += "round " + std::to_string(round) + ": kept " + std::to_string(sample.size()) + "; ";
            continue;
        }
        res.colors = std::move(sample);
        return res;
    }
    throw ResourceError("prune_colors: no good color set after 20 rounds (p=" + std::to_string(res.p) +
                        ", need >= " + std::to_string(want) + "): " + res.diagnostics);
}

std::string to_string(InstanceMode m) {
    switch (m) {
        case InstanceMode::Slabs: return "slabs";
        case InstanceMode::DiscreteLenses: return "discrete-lenses";
        case InstanceMode::ContinuousZigzag: return "continuous-zigzag";
    }
    return "?";
}

InstanceMode instance_mode_from_string(const std::string& s) {
    if (s == "slabs") return InstanceMode::Slabs;
    if (s == "discrete-lenses") return InstanceMode::DiscreteLenses;
    if (s == "continuous-zigzag") return InstanceMode::ContinuousZigzag;
    throw ValidationError("unknown instance mode '" + s + "'");
}

void validate(const InstanceSpec& s) {
    auto fail = [](const std::string& what) { throw ValidationError("constraint violated: " + what); };
    if (s.t < 1) fail("t >= 1");
    if (s.n < 4) fail("n >= 4");
    if (s.r < 2 || 2 * static_cast<std::int64_t>(s.r) > s.n)
        fail("r <= n/2 (r=" + std::to_string(s.r) + ", n=" + std::to_string(s.n) + ")");
    if (s.l < 2 || s.l >= s.r) fail("2 <= l < r (l=" + std::to_string(s.l) + ", r=" + std::to_string(s.r) + ")");
    double rmax = std::pow(static_cast<double>(s.n), 1.0 / (2 * s.t));
    if (!(s.R > 1) || s.R > rmax * (1 + 1e-12))
        fail("1 < R <= n^(1/(2t)) (R=" + std::to_string(s.R) + ", n^(1/(2t))=" + std::to_string(rmax) + ")");
    if (s.tau < 0 || s.tau > 1) fail("0 < tau <= 1");
    if (s.eps < 0) fail("eps > 0");
}

double TSlab::thickness() const {
    double v = 1;
    for (const auto& s : slabs) v *= s.thickness();
    return v;
}

std::size_t SlabFamily::count() const {
    std::size_t c = 1;
    for (const auto& t : tiles) c *= t.size();
    return c;
}

TSlab SlabFamily::member(std::size_t idx) const {
    TSlab s = base;
    for (std::size_t j = tiles.size(); j-- > 0;) {
        s.slabs[j] = tiles[j][idx % tiles[j].size()];
        idx /= tiles[j].size();
    }
    return s;
}

std::size_t Construction::total() const {
    std::size_t c = 0;
    for (const auto& f : families) c += f.count();
    return c;
}

namespace {

// Slab normals live in [pi/8, 3pi/8]; angle differences then scale linearly
// with parametric-point differences.
constexpr double kAngleLo = kPi / 8, kAngleSpan = kPi / 4;

std::vector<Slab2> tile_square(double theta, double w, double u) {
    Point2 n{std::cos(theta), std::sin(theta)};
    double lo = std::min({0.0, n.x, n.y, n.x + n.y}), hi = std::max({0.0, n.x, n.y, n.x + n.y});
    double start = lo - u * w;
    auto k = static_cast<std::size_t>(std::ceil((hi - start) / w));
    std::vector<Slab2> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back({theta, start + i * w, start + (i + 1) * w});
    return out;
}

}  // namespace

Construction build_construction(const InstanceSpec& spec) {
    validate(spec);
    const int t = spec.t, r = spec.r;
    const double per_family = static_cast<double>(spec.n) / r;
    Rng root(spec.seed);
    for (int c = 0; c <= 64; ++c) {
        Construction out;
        out.spec = spec;
        out.c = c;
        out.tau = spec.tau > 0 ? spec.tau : std::pow(2.0, c * t) * r / static_cast<double>(spec.n);
        if (out.tau > 1) throw ValidationError("no tau = 2^(ct) r/n <= 1 keeps every family within n/r copies");
        out.X = std::log(1 / out.tau) / std::log(spec.R) / t;
        out.Xi = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(out.X - 1e-9)));
        if (t >= 2) {
            auto all = colors_enumerate(out.Xi, t);
            out.pruned = prune_colors(all, spec.l, t, root.stream("colors").next(), out.Xi);
        } else {
            out.pruned.colors = {Color{}};
            out.pruned.easy = true;
        }
        out.n_c = std::max(1, std::min(static_cast<int>(out.pruned.colors.size()), (r - 1) / 2));
        out.points = colored_parametric_points(r, out.n_c, t);
        bool fits = true;
        for (int i = 0; i < r; ++i) {
            SlabFamily f;
            f.base.family = i;
            f.base.phi = out.points[i].phi;
            f.base.color = out.pruned.colors[out.points[i].color];
            double rest = out.tau;
            for (int j = 0; j < t; ++j) {
                double w = j + 1 < t ? std::pow(spec.R, -f.base.color[j]) : rest;
                rest /= w;
                double theta = kAngleLo + kAngleSpan * f.base.phi[j];
                Rng g = root.stream("tile/" + std::to_string(i) + "/" + std::to_string(j));
                f.tiles.push_back(tile_square(theta, w, g.uniform()));
                Point2 n{std::cos(theta), std::sin(theta)};
                const auto& tiles = f.tiles.back();
                auto k0 = static_cast<std::size_t>(std::floor((dot(n, {0.5, 0.5}) - tiles[0].c1) / w));
                f.base.slabs.push_back(tiles[std::min(k0, tiles.size() - 1)]);
            }
            if (static_cast<double>(f.count()) > per_family) fits = false;
            out.families.push_back(std::move(f));
        }
        if (fits) return out;
        if (spec.tau > 0)
            throw ValidationError("tau=" + std::to_string(spec.tau) + " needs more than n/r copies per family");
    }
    throw ValidationError("no tau keeps every family within n/r copies");
}

bool slab_contains_half_open(const Slab2& s, Point2 p) {
    double v = dot(s.normal(), p);
    return s.c1 <= v && v < s.c2;
}

bool tslab_contains(const TSlab& s, const std::vector<Point2>& p) {
    for (std::size_t j = 0; j < s.slabs.size(); ++j)
        if (!slab_contains(s.slabs[j], p[j])) return false;
    return true;
}

std::size_t family_hits(const SlabFamily& f, const std::vector<Point2>& p) {
    std::size_t hits = 1;
    for (std::size_t j = 0; j < f.tiles.size(); ++j) {
        std::size_t h = 0;
        for (const auto& s : f.tiles[j]) h += slab_contains_half_open(s, p[j]);
        hits *= h;
    }
    return hits;
}

double pair_intersection_volume_exact(const TSlab& a, const TSlab& b) {
    if (a.slabs.size() != b.slabs.size()) throw ValidationError("pair volume: t-slabs of different t");
    double v = 1;
    for (std::size_t j = 0; j < a.slabs.size(); ++j) {
        Polygon poly = unit_square();
        for (const Slab2* s : {&a.slabs[j], &b.slabs[j]}) {
            Point2 n = s->normal();
            poly = clip_halfplane(poly, n, s->c2);
            poly = clip_halfplane(poly, -1.0 * n, -s->c1);
        }
        v *= polygon_area(poly);
        if (v == 0) break;
    }
    return v;
}

McEstimate mc_volume(const std::vector<TSlab>& slabs, std::size_t samples, std::uint64_t seed) {
    if (slabs.empty()) return {1, 0};
    if (samples == 0) throw ValidationError("mc_volume: need samples > 0");
    const std::size_t t = slabs[0].slabs.size();
    Rng g(seed);
    std::vector<Point2> p(t);
    std::size_t hit = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& q : p) q = {g.uniform(), g.uniform()};
        bool in = true;
        for (const auto& sl : slabs)
            if (!tslab_contains(sl, p)) {
                in = false;
                break;
            }
        hit += in;
    }
    double N = static_cast<double>(samples), est = hit / N;
    // 95% normal interval plus a 1/N floor so that an empty count still has width
    return {est, 1.96 * std::sqrt(est * (1 - est) / N) + 1 / N};
}

double lens_radius(double eps) {
    if (!(eps > 0)) throw ValidationError("lens_radius: eps must be > 0");
    // Every point of the unit square is within L of its centre along the slab
    // direction, so the uncovered part is at most 4*L*sag(L); sag(L) = eps/(8L).
    const double L = std::sqrt(0.5), sag = eps / (8 * L);
    return (L * L + sag * sag) / (2 * sag);
}

LensFit lens_for_slab(const Slab2& s, double eps, double rho) {
    if (rho <= 0) rho = lens_radius(eps);
    rho = std::max(rho, s.thickness());
    Point2 n = s.normal(), o{0.5, 0.5};
    double no = dot(n, o);
    Lens l{{o + (s.c2 - rho - no) * n, rho}, {o + (s.c1 + rho - no) * n, rho}};
    return {l, rho};
}

Curve DiscreteInstance::query_curve(const std::vector<Point2>& p) const {
    Curve c{"q", {}};
    for (std::size_t j = 0; j < p.size(); ++j) c.vertices.push_back(p[j] + offsets[j]);
    return c;
}

std::string DiscreteInstance::query_domain() const {
    std::string s = "t-point p in [0,1]^2 x ... x [0,1]^2 (t=" + std::to_string(offsets.size()) +
                    "); query chain vertex j = p_j + offset_j; offsets:";
    for (auto o : offsets) s += " (" + std::to_string(o.x) + "," + std::to_string(o.y) + ")";
    return s;
}

DiscreteInstance build_discrete_instance(const InstanceSpec& spec) {
    DiscreteInstance d;
    d.construction = build_construction(spec);
    const int t = spec.t;
    d.eps = spec.eps > 0 ? spec.eps : 1 / (4.0 * static_cast<double>(spec.n) * t);
    d.rho = lens_radius(d.eps);
    for (int j = 0; j < t; ++j) d.offsets.push_back({j * (1 + 12 * d.rho), 0});
    for (const auto& f : d.construction.families) {
        for (std::size_t k = 0; k < f.count(); ++k) {
            TSlab s = f.member(k);
            Curve c{"f" + std::to_string(s.family) + "m" + std::to_string(k), {}};
            std::vector<Lens> ls;
            for (int j = 0; j < t; ++j) {
                auto fit = lens_for_slab(s.slabs[j], d.eps, d.rho);
                c.vertices.push_back(fit.lens.d1.center + d.offsets[j]);
                c.vertices.push_back(fit.lens.d2.center + d.offsets[j]);
                ls.push_back(fit.lens);
            }
            d.curves.push_back(std::move(c));
            d.slabs.push_back(std::move(s));
            d.lenses.push_back(std::move(ls));
        }
    }
    return d;
}

void validate(const ZigzagParams& p) {
    for (double v : {p.x1, p.x2, p.x3})
        if (!(v >= -1 - 1e-12 && v <= 1 + 1e-12)) throw ValidationError("zig-zag parameters must lie in [-1,1]");
    if (std::abs(p.x2 - p.x3) > 1 + 1e-12) throw ValidationError("zig-zag needs |x2 - x3| <= 1");
}

Curve zigzag(const ZigzagParams& p) {
    validate(p);
    double s = std::abs(p.x2 - p.x3) / 2, c = std::sqrt(1 - s * s), mid = (p.x2 + p.x3) / 2;
    return {"", {{-4, 0}, {p.x1 + c, mid}, {p.x1 - c, mid}, {4, 0}}};
}

Slab2 zigzag_dual_slab(const ZigzagParams& p) {
    validate(p);
    double len = std::hypot(p.x1, 1.0);
    return {std::atan2(1.0, p.x1), std::min(p.x2, p.x3) / len, std::max(p.x2, p.x3) / len};
}

DualPoint query_segment_dual(double y1, double y2) { return {(y2 - y1) / 8, (y1 + y2) / 2}; }

Curve query_segment(double y1, double y2) { return {"q", {{-4, y1}, {4, y2}}}; }

GadgetSeries gadget_series(double alpha, double W) {
    if (!(W > 0 && W <= 1)) throw ValidationError("gadget series needs 0 < W <= 1");
    if (std::abs(alpha) > kPi / 4 + 1e-12) throw ValidationError("gadget series needs |alpha| <= pi/4");
    GadgetSeries g{alpha, W, {}};
    auto k = static_cast<std::size_t>(std::ceil(2 / W - 1e-12));
    for (std::size_t i = 1; i <= k; ++i)
        g.gadgets.push_back({std::tan(alpha), (i - 1) * W - 1, std::min(1.0, i * W - 1)});
    return g;
}

std::string ContinuousInstance::query_domain() const {
    return "t=" + std::to_string(construction.spec.t) +
           " concatenated segments (-4,y1)->(4,y2) with y1,y2 in [-1,1]; rho=1";
}

ContinuousInstance build_continuous_instance(const InstanceSpec& spec) {
    ContinuousInstance ci;
    ci.construction = build_construction(spec);
    const int t = spec.t;
    for (const auto& f : ci.construction.families) {
        std::vector<GadgetSeries> row;
        std::size_t total = 1;
        for (int j = 0; j < t; ++j) {
            const Slab2& s = f.base.slabs[j];
            row.push_back(gadget_series(s.theta - kPi / 4, s.thickness()));
            total *= row.back().gadgets.size();
        }
        for (std::size_t k = 0; k < total; ++k) {
            std::vector<std::size_t> pick(t);
            std::size_t rest = k;
            for (int j = t; j-- > 0;) {
                pick[j] = rest % row[j].gadgets.size();
                rest /= row[j].gadgets.size();
            }
            Curve c{"f" + std::to_string(f.base.family) + "g" + std::to_string(k), {}};
            for (int j = 0; j < t; ++j) {
                auto z = zigzag(row[j].gadgets[pick[j]]);
                c.vertices.insert(c.vertices.end(), z.vertices.begin(), z.vertices.end());
            }
            ci.curves.push_back(std::move(c));
            ci.curve_family.push_back(f.base.family);
            ci.curve_gadgets.push_back(std::move(pick));
        }
        ci.series.push_back(std::move(row));
    }
    return ci;
}

Curve zigzag_query(const std::vector<std::pair<double, double>>& segments) {
    Curve c{"q", {}};
    for (auto [y1, y2] : segments) {
        c.vertices.push_back({-4, y1});
        c.vertices.push_back({4, y2});
    }
    return c;
}

BoundReport lb_bound_report(double n, double Q, int t) {
    if (!(n >= Q && Q >= 1) || t < 1) throw ValidationError("lb_bound_report: need n >= Q >= 1 and t >= 1");
    double ratio = n / Q, L = std::log2(ratio), LL = std::max(1.0, std::log2(std::log2(std::max(n, 2.0))));
    double b1 = ratio * ratio * std::pow(L / LL, t - 1) / std::exp2(std::exp2(t) - 2);
    double b2 = ratio * ratio * std::pow(L / (std::pow(t, 3) * LL), t - 1);
    return {std::max(1.0, b1), std::max(1.0, b2)};
}

SlabVerification verify_slab_construction(const Construction& c, std::size_t samples, std::size_t pairs,
                                          std::uint64_t seed) {
    SlabVerification v;
    v.samples = samples;
    const int t = c.spec.t;
    Rng g = Rng(seed).stream("verify");
    std::vector<Point2> p(t);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& q : p) q = {g.uniform(), g.uniform()};
        for (const auto& f : c.families) {
            auto h = family_hits(f, p);
            v.misses += h == 0;
            v.multi += h > 1;
        }
    }
    v.coverage_ok = v.misses == 0 && v.multi == 0;
    std::vector<std::vector<double>> phis;
    for (const auto& pt : c.points) phis.push_back(pt.phi);
    v.min_box_volume = min_pair_box_volume(phis).volume;
    const std::size_t r = c.families.size();
    auto check = [&](std::size_t a, std::size_t b) {
        double vol = pair_intersection_volume_exact(c.families[a].base, c.families[b].base);
        double box = box_volume(box_of({phis[a], phis[b]}));
        if (box > 0) v.max_C = std::max(v.max_C, vol * box / (c.tau * c.tau));
        ++v.pairs;
    };
    if (r * (r - 1) / 2 <= pairs) {
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b) check(a, b);
    } else {
        while (v.pairs < pairs) {
            std::size_t a = g.below(r), b = g.below(r);
            if (a != b) check(a, b);
        }
    }
    return v;
}

}  // namespace frq
