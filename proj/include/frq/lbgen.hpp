#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frq/frechet.hpp"
#include "frq/geometry.hpp"

namespace frq {

// Digit reversal of i in base x over exactly `digits` digits.
std::int64_t reversed_base(std::int64_t i, std::int64_t x, int digits);

// First `count` primes.
std::vector<std::int64_t> first_primes(int count);

// N points in D dimensions. Coordinate j < D-1 is i written in base a_j (the
// j-th prime) with floor(log_a N)+1 digits, reversed; the last coordinate is i.
// Coordinates stay raw: coordinate j spans [0, a_j^digits).
std::vector<std::vector<double>> prime_base_points(int N, int D);
// a_j^digits for each coordinate of prime_base_points(N, D) (N for the last).
std::vector<double> prime_base_extent(int N, int D);

struct PairVolume {
    double volume = 0;
    std::size_t a = 0, b = 0;
};
// Brute-force minimum of the bounding-box volume over all pairs. With
// same_color_only, only pairs of equal color are considered.
PairVolume min_pair_box_volume(const std::vector<std::vector<double>>& points, bool same_color_only = false,
                               const std::vector<int>& colors = {});

struct ColoredPoint {
    std::vector<double> phi;  // in [0,1)^t
    int color = 0;
};
std::vector<ColoredPoint> colored_parametric_points(int r, int n_c, int t);

using Color = std::vector<int>;  // (w_1..w_{t-1})

std::vector<Color> colors_enumerate(std::int64_t X, int t);
bool is_bad_subset(const std::vector<Color>& colors);

struct PruneResult {
    std::vector<Color> colors;
    double p = 1;           // sampling probability actually used
    int rounds = 0;         // sampling rounds
    bool easy = false;      // identity branch
    std::string diagnostics;
};
// Search for one bad l-subset; returns indices or empty. `work` counts search
// nodes and the search gives up (returning empty, *exhausted=true) past cap.
std::vector<std::size_t> find_bad_subset(const std::vector<Color>& colors, int l, std::uint64_t cap,
                                         bool* exhausted = nullptr);
// Removes one color from each bad l-subset until none remain. Returns false
// when the search cap is hit.
bool remove_bad_subsets(std::vector<Color>& colors, int l, std::uint64_t cap = 20'000'000);
PruneResult prune_colors(const std::vector<Color>& colors, int l, int t, std::uint64_t seed, std::int64_t X);

enum class InstanceMode { Slabs, DiscreteLenses, ContinuousZigzag };
std::string to_string(InstanceMode m);
InstanceMode instance_mode_from_string(const std::string& s);

struct InstanceSpec {
    std::int64_t n = 1024;
    int r = 16;
    int t = 2;
    double R = 4;
    int l = 4;
    double tau = 0;  // 0: pick 2^{ct} r/n with the smallest fitting c
    std::uint64_t seed = 1;
    InstanceMode mode = InstanceMode::Slabs;
    double eps = 0;  // lens error area; 0: 1/(4nt)
};

// Throws ValidationError naming the violated constraint.
void validate(const InstanceSpec& spec);

struct TSlab {
    std::vector<Slab2> slabs;
    Color color;
    std::vector<double> phi;
    int family = 0;
    double thickness() const;
};

struct SlabFamily {
    TSlab base;
    // tiles[j] tiles the unit square in universe j; the family is their product.
    std::vector<std::vector<Slab2>> tiles;
    std::size_t count() const;
    TSlab member(std::size_t idx) const;
};

struct Construction {
    InstanceSpec spec;
    double tau = 0;
    int c = 0;
    double X = 0;           // log_R(1/tau)/t
    std::int64_t Xi = 1;    // number of admissible integer exponents per coordinate
    PruneResult pruned;
    int n_c = 1;
    std::vector<ColoredPoint> points;
    std::vector<SlabFamily> families;
    std::size_t total() const;
};

Construction build_construction(const InstanceSpec& spec);

// Half-open membership c1 <= n.p < c2 used for tiling checks.
bool slab_contains_half_open(const Slab2& s, Point2 p);
bool tslab_contains(const TSlab& s, const std::vector<Point2>& p);
// Number of members of the family that contain p (half-open).
std::size_t family_hits(const SlabFamily& f, const std::vector<Point2>& p);

double pair_intersection_volume_exact(const TSlab& a, const TSlab& b);

struct McEstimate {
    double estimate = 0, half_width = 0;
};
McEstimate mc_volume(const std::vector<TSlab>& slabs, std::size_t samples, std::uint64_t seed);

struct LensFit {
    Lens lens;
    double rho = 0;
};
// Two disks of radius rho on the slab's normal through the square's centre,
// each touching one bounding line from inside. The radius keeps the uncovered
// part of slab \cap unit square below eps.
double lens_radius(double eps);
LensFit lens_for_slab(const Slab2& s, double eps, double rho = 0);

struct DiscreteInstance {
    Construction construction;
    double rho = 0;
    double eps = 0;
    std::vector<Point2> offsets;  // universe j is [0,1]^2 + offsets[j]
    std::vector<Curve> curves;
    std::vector<TSlab> slabs;                // one per curve
    std::vector<std::vector<Lens>> lenses;   // per curve, per universe (untranslated)
    Curve query_curve(const std::vector<Point2>& p) const;
    std::string query_domain() const;
};
DiscreteInstance build_discrete_instance(const InstanceSpec& spec);

struct ZigzagParams {
    double x1 = 0, x2 = 0, x3 = 0;
};
void validate(const ZigzagParams& p);
Curve zigzag(const ZigzagParams& p);
// Dual point (a,b) of y = a*x + b is inside iff the line meets the segment
// x = x1, y in [x2, x3], i.e. x2 <= a*x1 + b <= x3.
Slab2 zigzag_dual_slab(const ZigzagParams& p);
DualPoint query_segment_dual(double y1, double y2);
Curve query_segment(double y1, double y2);

struct GadgetSeries {
    double alpha = 0, W = 0;
    std::vector<ZigzagParams> gadgets;
};
GadgetSeries gadget_series(double alpha, double W);

struct ContinuousInstance {
    Construction construction;
    std::vector<std::vector<GadgetSeries>> series;  // [family][universe]
    std::vector<Curve> curves;
    std::vector<int> curve_family;
    std::vector<std::vector<std::size_t>> curve_gadgets;  // per curve, gadget index per universe
    std::string query_domain() const;
};
ContinuousInstance build_continuous_instance(const InstanceSpec& spec);
// Concatenates t query segments (-4,y1)->(4,y2).
Curve zigzag_query(const std::vector<std::pair<double, double>>& segments);

struct BoundReport {
    double bound1 = 0, bound2 = 0;
};
BoundReport lb_bound_report(double n, double Q, int t);

struct SlabVerification {
    std::size_t samples = 0;
    std::size_t misses = 0;      // sample/family pairs with zero hits
    std::size_t multi = 0;       // sample/family pairs with more than one hit
    bool coverage_ok = false;    // every sample hits exactly one member per family
    double min_box_volume = 0;   // over parametric points
    double max_C = 0;            // max vol * box / tau^2 over sampled base pairs
    std::size_t pairs = 0;
};
SlabVerification verify_slab_construction(const Construction& c, std::size_t samples, std::size_t pairs,
                                          std::uint64_t seed);

}  // namespace frq
