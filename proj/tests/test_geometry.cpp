#include <random>

#include "doctest.h"
#include "frq/error.hpp"
#include "frq/geometry.hpp"

using namespace frq;

TEST_CASE("duality examples and orientation") {
    auto d = dual_of_line({2, 1});
    CHECK(d.a == 2);
    CHECK(d.b == 1);
    Line2 l0 = dual_of_point({0, 0});
    CHECK(l0.a == 0);
    CHECK(l0.b == 0);
    // (1,2) is above y = x; its dual line y = -x + 2 passes above (1,0)
    Line2 l{1, 0};
    Point2 p{1, 2};
    CHECK(above(l, p) > 0);
    auto dl = dual_of_line(l);
    CHECK(above(dual_of_point(p), {dl.a, dl.b}) < 0);
}

TEST_CASE("duality round trip and order reversal on random samples") {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> u(-10, 10);
    int incidences = 0;
    for (int it = 0; it < 10000; ++it) {
        Line2 l{u(g), u(g)};
        auto back = line_of_dual(dual_of_line(l));
        REQUIRE(back.a == l.a);
        REQUIRE(back.b == l.b);
        Point2 p{u(g), u(g)};
        auto dl = dual_of_line(l);
        Line2 dp = dual_of_point(p);
        double primal = above(l, p);
        double dual = above(dp, {dl.a, dl.b});
        if (std::abs(primal) > 1e-9) REQUIRE((primal > 0) == (dual < 0));
        if (it < 100) {
            // force an incidence: move p onto l
            Point2 on{p.x, l.at(p.x)};
            REQUIRE(std::abs(above(dual_of_point(on), {dl.a, dl.b})) < 1e-9);
            ++incidences;
        }
    }
    CHECK(incidences == 100);
}

TEST_CASE("line_circle classification") {
    auto r = line_circle({0, 0}, {{0, 0}, 1});
    auto* ch = std::get_if<LineChord>(&r);
    REQUIRE(ch);
    CHECK(ch->p1.x == doctest::Approx(-1));
    CHECK(ch->p2.x == doctest::Approx(1));
    CHECK(std::holds_alternative<LineMiss>(line_circle({0, 0}, {{0, 2}, 1})));
    auto t = line_circle({0, 0}, {{0, 1}, 1});
    REQUIRE(std::holds_alternative<LineTangent>(t));
    CHECK(std::get<LineTangent>(t).p.y == doctest::Approx(0));
}

TEST_CASE("circle_circle classification") {
    auto r = circle_circle({{0, 0}, 1}, {{1, 0}, 1});
    auto* pr = std::get_if<CirclePair>(&r);
    REQUIRE(pr);
    CHECK(pr->b_plus.x == doctest::Approx(0.5));
    CHECK(pr->b_plus.y == doctest::Approx(std::sqrt(3) / 2));
    CHECK(pr->b_minus.y == doctest::Approx(-std::sqrt(3) / 2));
    CHECK(std::holds_alternative<CircleMiss>(circle_circle({{0, 0}, 1}, {{3, 0}, 1})));
    auto t = circle_circle({{0, 0}, 1}, {{2, 0}, 1});
    REQUIRE(std::holds_alternative<CircleTouch>(t));
    CHECK(std::get<CircleTouch>(t).p.x == doctest::Approx(1));
    CHECK_THROWS_AS(circle_circle({{0, 0}, 1}, {{0, 0}, 1}), DegenerateGeometry);

    std::mt19937_64 g(2);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int it = 0; it < 2000; ++it) {
        Disk a{{u(g), u(g)}, 1}, b{{u(g), u(g)}, 1};
        auto res = circle_circle(a, b);
        if (auto* p = std::get_if<CirclePair>(&res)) {
            for (Point2 x : {p->b_plus, p->b_minus}) {
                REQUIRE(std::abs(dist(x, a.center) - 1) < 1e-9);
                REQUIRE(std::abs(dist(x, b.center) - 1) < 1e-9);
            }
            REQUIRE(p->b_plus.y >= p->b_minus.y);
        }
    }
}

TEST_CASE("slab_pair_area exact and Monte-Carlo") {
    CHECK(*slab_pair_area({0, 0, 0.1}, {kPi / 2, 0, 0.2}) == doctest::Approx(0.02));
    CHECK(*slab_pair_area({0, 0, 0.1}, {kPi / 6, 0, 0.1}) == doctest::Approx(0.02));
    CHECK_FALSE(slab_pair_area({0.3, 0, 0.1}, {0.3, 1, 1.2}).has_value());

    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2), w(0.05, 0.6);
    for (int it = 0; it < 100; ++it) {
        Slab2 a{ang(g), 0, w(g)}, b{ang(g), 0, w(g)};
        if (std::abs(std::sin(a.theta - b.theta)) < 0.2) {
            --it;
            continue;
        }
        double area = *slab_pair_area(a, b);
        Point2 na = a.normal(), nb = b.normal();
        // parallelogram corners solve na.p = ca, nb.p = cb
        double det = cross(na, nb);
        double xs[2] = {1e300, -1e300}, ys[2] = {1e300, -1e300};
        for (double ca : {a.c1, a.c2})
            for (double cb : {b.c1, b.c2}) {
                Point2 c{(ca * nb.y - cb * na.y) / det, (na.x * cb - nb.x * ca) / det};
                xs[0] = std::min(xs[0], c.x), xs[1] = std::max(xs[1], c.x);
                ys[0] = std::min(ys[0], c.y), ys[1] = std::max(ys[1], c.y);
            }
        std::uniform_real_distribution<double> ux(xs[0], xs[1]), uy(ys[0], ys[1]);
        const int N = 1000000;
        int hit = 0;
        for (int k = 0; k < N; ++k) {
            Point2 p{ux(g), uy(g)};
            double va = dot(na, p), vb = dot(nb, p);
            hit += va >= a.c1 && va <= a.c2 && vb >= b.c1 && vb <= b.c2;
        }
        double est = (xs[1] - xs[0]) * (ys[1] - ys[0]) * hit / N;
        REQUIRE(std::abs(est - area) / area < 0.02);
    }
}

TEST_CASE("box_of and box_volume") {
    CHECK(box_volume(box_of({{0, 0}, {4, 1}})) == 4);
    CHECK(box_volume(box_of({{2, 2}})) == 0);
    CHECK(box_volume(box_of({{4, 1}, {2, 2}})) == 2);
    CHECK_THROWS_AS(box_of({}), ValidationError);
}

TEST_CASE("membership tests") {
    // theta is the normal angle, so theta=0 gives a vertical slab |x| <= 0.1
    CHECK(slab_contains({0, -0.1, 0.1}, {0.05, 0.5}));
    CHECK_FALSE(slab_contains({0, -0.1, 0.1}, {0.5, 0}));
    CHECK(slab_contains({kPi / 2, -0.1, 0.1}, {0.5, 0}));
    Lens l{{{0, 0}, 1}, {{1, 0}, 1}};
    CHECK(lens_contains(l, {0.5, 0}));
    CHECK_FALSE(lens_contains(l, {2, 0}));
    auto r = rect_around_segment({0, 0}, {2, 0}, 1);
    CHECK(rotrect_contains(r, {1, 0.99}));
    CHECK_FALSE(rotrect_contains(r, {1, 1.01}));

    // against plain distance formulas on a rotated rectangle
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int it = 0; it < 10000; ++it) {
        Point2 a{u(g), u(g)}, b{u(g), u(g)}, p{u(g), u(g)};
        double rho = 0.5;
        auto rr = rect_around_segment(a, b, rho);
        Point2 d = b - a;
        double len = norm(d);
        double along = dot(p - a, d) / len, off = cross(d, p - a) / len;
        bool ref = along >= -1e-9 && along <= len + 1e-9 && std::abs(off) <= rho + 1e-9;
        if (std::abs(std::abs(off) - rho) > 1e-7 && std::abs(along) > 1e-7 && std::abs(along - len) > 1e-7)
            REQUIRE(rotrect_contains(rr, p) == ref);
        Disk dk{a, 1.2};
        if (std::abs(dist(p, a) - 1.2) > 1e-7) REQUIRE(disk_contains(dk, p) == (dist(p, a) <= 1.2));
    }
}

TEST_CASE("tangent_angle_interval") {
    auto iv = tangent_angle_interval({{{0, 0}, 1}, {{1, 0}, 1}});
    REQUIRE(iv.size() == 1);
    CHECK((iv[0].first + iv[0].second) / 2 == doctest::Approx(kPi / 2));
    CHECK(iv[0].first == doctest::Approx(kPi / 6));
    // dense sampling of arc tangents agrees with the analytic endpoints
    std::mt19937_64 g(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int it = 0; it < 200; ++it) {
        Point2 a{u(g), u(g)}, b{u(g), u(g)};
        if (dist(a, b) > 1.9 || dist(a, b) < 0.05) continue;
        auto ivs = tangent_angle_interval({{a, 1}, {b, 1}});
        for (int k = 0; k <= 2000; ++k) {
            double phi = 2 * kPi * k / 2000;
            Point2 p = a + Point2{std::cos(phi), std::sin(phi)};
            if (dist(p, b) > 1 - 1e-9) continue;  // only the lens arc on a
            double tang = norm_angle_pi(phi + kPi / 2);
            bool in = false;
            for (auto [lo, hi] : ivs) in = in || (tang >= lo - 1e-9 && tang <= hi + 1e-9);
            REQUIRE(in);
        }
    }
    CHECK_THROWS_AS(tangent_angle_interval({{{0, 0}, 1}, {{2, 0}, 1}}), DegenerateGeometry);
    CHECK_THROWS_AS(tangent_angle_interval({{{0, 0}, 1}, {{0, 0}, 1}}), DegenerateGeometry);
}

TEST_CASE("polygon clipping area") {
    auto sq = unit_square();
    CHECK(polygon_area(sq) == doctest::Approx(1));
    auto half = clip_halfplane(sq, {1, 0}, 0.5);
    CHECK(polygon_area(half) == doctest::Approx(0.5));
    auto tri = clip_halfplane(sq, {1, 1}, 1);
    CHECK(polygon_area(tri) == doctest::Approx(0.5));
    CHECK(clip_halfplane(sq, {1, 0}, -1).empty());
}
