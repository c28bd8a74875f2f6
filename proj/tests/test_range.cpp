#include <random>

#include "doctest.h"
#include "frq/range.hpp"

using namespace frq;

namespace {

RangeSpec single(Atom a) { return {{Clause{a}}}; }

}  // namespace

TEST_CASE("classify examples") {
    Region box{0, 1, 0, 1};
    CHECK(classify(box, single(disk_atom({0.5, 0.5}, 2))) == Classification::Inside);
    CHECK(classify(box, single(disk_atom({5, 5}, 1))) == Classification::Outside);
    CHECK(classify(box, single(disk_atom({0, 0}, 0.5))) == Classification::Crossing);
    CHECK(classify(box, RangeSpec::whole_plane()) == Classification::Inside);
    CHECK(classify(box, RangeSpec::empty()) == Classification::Outside);
    CHECK(classify(box, single(const_atom(false))) == Classification::Outside);
}

TEST_CASE("disk atom agrees bit for bit with within") {
    std::mt19937_64 g(31);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int it = 0; it < 100000; ++it) {
        Point2 c{u(g), u(g)}, p{u(g), u(g)};
        double rho = std::abs(u(g));
        if (it % 10 == 0) {
            // put p exactly on the tolerance circle as far as doubles allow
            double ang = u(g);
            p = c + (rho + kEps) * Point2{std::cos(ang), std::sin(ang)};
        }
        REQUIRE(disk_atom(c, rho).eval(p) == within(c, p, rho));
        REQUIRE(outside_disk_atom(c, rho).eval(p) == !within(c, p, rho));
    }
}

TEST_CASE("classify soundness on a 32x32 grid") {
    std::mt19937_64 g(32);
    std::uniform_real_distribution<double> u(-2, 2), w(0.01, 1.5), coef(-3, 3);
    auto rel = [&](int k) { return static_cast<Rel>(k % 4); };
    int decided = 0;
    for (int it = 0; it < 3000; ++it) {
        double x0 = u(g), y0 = u(g);
        Region box{x0, x0 + w(g), y0, y0 + w(g)};
        RangeSpec range;
        int nclauses = 1 + it % 2;
        for (int c = 0; c < nclauses; ++c) {
            Clause cl;
            int natoms = 1 + (it / 2) % 6;
            for (int a = 0; a < natoms; ++a) {
                Atom at;
                at.poly = {u(g), u(g), coef(g), coef(g), coef(g), coef(g), coef(g), coef(g)};
                if (a % 3 == 0) at = disk_atom({u(g), u(g)}, w(g));
                at.rel = a % 3 == 0 ? at.rel : rel(it + a);
                cl.push_back(at);
            }
            range.clauses.push_back(cl);
        }
        auto cls = classify(box, range);
        if (cls == Classification::Crossing) continue;
        ++decided;
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                Point2 p{box.xlo + (box.xhi - box.xlo) * i / 31, box.ylo + (box.yhi - box.ylo) * j / 31};
                REQUIRE(range.contains(p) == (cls == Classification::Inside));
            }
    }
    CHECK(decided > 300);
}

TEST_CASE("atom negation and complexity") {
    Atom a = linear_atom(1, 0, -1, Rel::Le);  // x <= 1
    CHECK(a.eval({1, 0}));
    CHECK_FALSE(a.negated().eval({1, 0}));
    CHECK(a.negated().eval({1.5, 0}));
    RangeSpec r{{Clause(6, a), Clause(6, a)}};
    CHECK(r.constant_complexity());
    r.clauses.push_back({});
    CHECK_FALSE(r.constant_complexity());
}
