#include <random>
#include <set>

#include "doctest.h"
#include "frq/error.hpp"
#include "frq/signature.hpp"
#include "oracles.hpp"

using namespace frq;

TEST_CASE("disk_arrangement_cells examples") {
    CHECK(disk_arrangement_cells({{0, 0}, {1, 0}}, 1).size() == 4);
    auto apart = disk_arrangement_cells({{0, 0}, {3, 0}}, 1);
    CHECK(apart.size() == 3);
    for (auto& c : apart) CHECK(c.signs != 3);
    CHECK(disk_arrangement_cells({{0, 0}}, 1).size() == 2);
}

TEST_CASE("arrangement cells are complete under random sampling") {
    std::mt19937_64 g(41);
    std::uniform_real_distribution<double> u(0, 1), r(0.1, 0.6);
    for (int it = 0; it < 40; ++it) {
        int tq = 1 + it % 5;
        std::vector<Point2> c;
        for (int i = 0; i < tq; ++i) c.push_back({u(g), u(g)});
        double rho = r(g);
        auto cells = disk_arrangement_cells(c, rho);
        std::set<SignVector> have;
        std::vector<Atom> atoms;
        for (Point2 p : c) atoms.push_back(disk_atom(p, rho));
        for (auto& cell : cells) {
            REQUIRE(have.insert(cell.signs).second);
            REQUIRE(sign_vector(atoms, cell.witness) == cell.signs);
        }
        std::uniform_real_distribution<double> w(-1, 2);
        for (int k = 0; k < 100000 / 40; ++k) {
            Point2 p{w(g), w(g)};
            REQUIRE(have.count(sign_vector(atoms, p)));
        }
    }
}

TEST_CASE("arrangement of lines and a thin strip") {
    // two parallel lines 2e-9 apart plus a crossing line
    std::vector<Atom> atoms = {linear_atom(1, 0, 1e-9, Rel::Ge), linear_atom(1, 0, -1e-9, Rel::Le),
                               linear_atom(0, 1, 0, Rel::Ge)};
    auto cells = arrangement_cells(atoms);
    std::set<SignVector> have;
    for (auto& c : cells) have.insert(c.signs);
    CHECK(have.count(0b011));  // inside the strip, below
    CHECK(have.count(0b111));
    CHECK(have.size() == 6);
}

namespace {

int pieces_containing(const std::vector<std::vector<RefinedCell>>& all, Point2 p, std::size_t* which) {
    int n = 0;
    for (std::size_t c = 0; c < all.size(); ++c)
        for (const auto& piece : all[c]) {
            bool in = true;
            for (const auto& a : piece.atoms) in = in && a.eval(p);
            if (in) {
                ++n;
                *which = c;
            }
        }
    return n;
}

double shell_distance(const std::vector<Point2>& centers, double rho, Point2 p) {
    double d = 1e300;
    for (Point2 c : centers) d = std::min(d, std::abs(dist(c, p) - rho));
    return d;
}

}  // namespace

TEST_CASE("refine_cell examples") {
    auto disk = refine_cell(1, {{0, 0}}, 1);
    CHECK(disk.size() <= 2);
    for (auto& piece : disk) CHECK(piece.atoms.size() <= 6);
    std::mt19937_64 g(42);
    std::uniform_real_distribution<double> u(-1, 1);
    int inside = 0;
    for (int k = 0; k < 10000; ++k) {
        Point2 p{u(g), u(g)};
        if (norm(p) > 1 - 1e-9) continue;
        int n = 0;
        for (auto& piece : disk) {
            bool in = true;
            for (auto& a : piece.atoms) in = in && a.eval(p);
            n += in;
        }
        REQUIRE(n == 1);
        ++inside;
    }
    CHECK(inside > 7000);
    auto lens = refine_cell(3, {{0, 0}, {1, 0}}, 1);
    CHECK(lens.size() <= 4);
    CHECK_FALSE(refine_cell(0, {{0, 0}}, 1).empty());
}

TEST_CASE("refined pieces partition the plane consistently with sign vectors") {
    std::mt19937_64 g(43);
    std::uniform_real_distribution<double> u(0, 1), r(0.15, 0.5), w(-1, 2);
    for (int it = 0; it < 10; ++it) {
        int tq = 1 + it % 4;
        std::vector<Point2> c;
        for (int i = 0; i < tq; ++i) c.push_back({u(g), u(g)});
        double rho = r(g);
        std::vector<Atom> atoms;
        for (Point2 p : c) atoms.push_back(disk_atom(p, rho));
        auto cells = disk_arrangement_cells(c, rho);
        std::vector<std::vector<RefinedCell>> pieces;
        for (auto& cell : cells) {
            pieces.push_back(refine_cell(cell.signs, c, rho));
            for (auto& piece : pieces.back()) REQUIRE(piece.atoms.size() <= 6);
        }
        for (int k = 0; k < 10000; ++k) {
            Point2 p{w(g), w(g)};
            if (shell_distance(c, rho, p) < 1e-7) continue;
            std::size_t which = 0;
            REQUIRE(pieces_containing(pieces, p, &which) == 1);
            REQUIRE(cells[which].signs == sign_vector(atoms, p));
        }
    }
}

TEST_CASE("enumerate_feasible_matrices") {
    auto one = enumerate_feasible_matrices({"q", {{0, 0}}}, 1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0].bits == std::vector<std::uint8_t>{1, 1});
    auto same = enumerate_feasible_matrices({"q", {{0, 0}, {0, 0}, {0, 0}}}, 5, 2);
    REQUIRE(same.size() == 1);
    for (auto b : same[0].bits) CHECK(b == 1);
    CHECK_THROWS_AS(enumerate_feasible_matrices({"q", {{0, 0}, {0.5, 0}, {1, 0}}}, 0.4, 12, 1000), ResourceError);

    std::mt19937_64 g(44);
    for (int it = 0; it < 20; ++it) {
        auto q = oracle::random_curve(g, 3);
        double rho = 0.35;
        auto ms = enumerate_feasible_matrices(q, rho, 2);
        std::set<FreeSpaceMatrix> set(ms.begin(), ms.end());
        REQUIRE(set.size() == ms.size());
        auto cells = disk_arrangement_cells(q.vertices, rho);
        for (auto& m : ms) {
            REQUIRE(matrix_feasible(m));
            // witness curve realizing m
            Curve s{"s", {}};
            for (int j = 0; j < 2; ++j) {
                SignVector col = 0;
                for (int i = 0; i < 3; ++i)
                    if (m.at(i, j)) col |= SignVector{1} << i;
                for (auto& c : cells)
                    if (c.signs == col) s.vertices.push_back(c.witness);
            }
            REQUIRE(s.size() == 2);
            REQUIRE(free_space_matrix(q, s, rho) == m);
        }
        int hits = 0;
        for (int k = 0; k < 100; ++k) {
            auto s = oracle::random_curve(g, 2);
            if (!discrete_decide(q, s, rho)) continue;
            ++hits;
            REQUIRE(set.count(free_space_matrix(q, s, rho)));
        }
        (void)hits;
    }
}

TEST_CASE("column layout and stored points") {
    CHECK(column_specs(3).size() == 89);
    CHECK(column_specs(2).size() == 6 * 2 + 6 * 2 + 9 + 8 * 2 + 2);
    auto specs = column_specs(2);
    Curve far{"s", {{0, 0}, {5, 0.1}}};
    auto tp = curve_to_tpoint(far, 1, specs);
    for (std::size_t c = 0; c < specs.size(); ++c) {
        if (specs[c].kind != ColumnKind::Hmp) continue;
        if (specs[c].entry == 8) CHECK(tp.coords[c].x == kSentinel);
        if (specs[c].entry == 9) CHECK(tp.coords[c].x == -kSentinel);
        if (specs[c].entry >= 8) CHECK(tp.coords[c].y == 0);
    }
    // scalar tangent endpoint stored with zero second coordinate
    Curve near{"s", {{0, 0}, {1, 0.2}}};
    auto tn = curve_to_tpoint(near, 1, specs);
    for (std::size_t c = 0; c < specs.size(); ++c)
        if (specs[c].kind == ColumnKind::Hmp && specs[c].entry == 8) {
            CHECK(tn.coords[c].y == 0);
            CHECK(tn.coords[c].x >= 0);
            CHECK(tn.coords[c].x < 2 * kPi);
        }
    Curve flat{"s", {{0, 0}, {0, 0}}};
    CHECK_FALSE(curve_to_tpoint(flat, 1, specs).diagnostics.empty());
    CHECK_THROWS_AS(curve_to_tpoint({"s", {{0, 0}}}, 1, specs), ValidationError);
}

namespace {

std::vector<SignVector> masks_of(const ContinuousQueryPlan& plan, const std::vector<Point2>& coords) {
    std::vector<SignVector> m;
    for (int k = 0; k < plan.levels(); ++k) m.push_back(sign_vector(plan.level(k).atoms, coords[k]));
    return m;
}

bool run(const ContinuousQueryPlan& plan, const std::vector<SignVector>& m) {
    long st = plan.initial_state();
    for (int k = 0; k < plan.levels(); ++k) st = plan.step(st, k, m[k]);
    return plan.accept(st, m);
}

}  // namespace

TEST_CASE("continuous plan agrees with the predicate pipeline") {
    std::mt19937_64 g(45);
    int checked = 0, positives = 0;
    for (int it = 0; it < 200; ++it) {
        int tq = 2 + it % 2, ts = 2 + (it / 2) % 2;
        auto q = oracle::random_curve(g, tq), s = oracle::random_curve(g, ts);
        std::uniform_real_distribution<double> f(0.6, 1.3);
        double rho = std::max(0.05, discrete_value(q, s) * f(g));
        if (alt_godau_decide(q, s, rho - 1e-7) != alt_godau_decide(q, s, rho + 1e-7)) continue;
        ContinuousQueryPlan plan(q, rho, ts);
        auto tp = curve_to_tpoint(s, rho, plan.specs());
        auto m = masks_of(plan, tp.coords);
        // each stored coordinate falls in exactly one listed cell
        for (int k = 0; k < plan.levels(); ++k) {
            int n = 0;
            for (auto& c : plan.level(k).cells) n += RangeSpec{{c.range}}.contains(tp.coords[k]);
            REQUIRE(n == 1);
        }
        REQUIRE(plan.assignment(m) == eval_hl_lowlevel(q, s, rho));
        bool want = continuous_decide_predicates(q, s, rho);
        REQUIRE(run(plan, m) == want);
        positives += want;
        ++checked;
    }
    CHECK(checked > 180);
    CHECK(positives > 20);
}

TEST_CASE("continuous plan special cases") {
    Curve q{"q", {{0, 0}, {1, 0}}};
    ContinuousQueryPlan plan(q, 1, 2);
    Curve far{"s", {{10, 10}, {11, 10.5}}};
    CHECK_FALSE(run(plan, masks_of(plan, curve_to_tpoint(far, 1, plan.specs()).coords)));
    Curve same{"s", q.vertices};
    CHECK(run(plan, masks_of(plan, curve_to_tpoint(same, 1, plan.specs()).coords)));
    CHECK_THROWS_AS(plan.enumerate_assignments(1000), ResourceError);
}
