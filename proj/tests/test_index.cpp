#include <random>
#include <sstream>

#include "doctest.h"
#include "frq/dataset.hpp"
#include "frq/error.hpp"
#include "frq/index.hpp"
#include "oracles.hpp"

using namespace frq;

namespace {

std::vector<std::vector<Point2>> random_points(std::mt19937_64& g, int n, int t) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<std::vector<Point2>> pts(n);
    for (auto& p : pts)
        for (int k = 0; k < t; ++k) p.push_back({u(g), u(g)});
    return pts;
}

RangeSpec random_range(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0, 1), r(0.1, 0.7), a(0, 2 * kPi);
    auto halfplane = [&] {
        double th = a(g);
        return linear_atom(std::cos(th), std::sin(th), -(std::cos(th) * u(g) + std::sin(th) * u(g)), Rel::Le);
    };
    switch (g() % 4) {
        case 0: return {{Clause{disk_atom({u(g), u(g)}, r(g))}}};
        case 1: return {{Clause{halfplane()}}};
        case 2: return {{Clause{disk_atom({u(g), u(g)}, r(g)), halfplane()}}};
        default: return {{Clause{disk_atom({u(g), u(g)}, r(g))}, Clause{halfplane(), halfplane()}}};
    }
}

std::vector<std::uint32_t> brute(const std::vector<std::vector<Point2>>& pts, const std::vector<RangeSpec>& rs) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < rs.size() && ok; ++k) ok = rs[k].contains(pts[i][k]);
        if (ok) out.push_back(i);
    }
    return out;
}

}  // namespace

TEST_CASE("trivial indexes") {
    MultilevelIndex empty;
    QueryStats st;
    CHECK(empty.query(std::vector<RangeSpec>{}, &st).empty());
    CHECK(st.visited == 0);
    CHECK(empty.build_stats().nodes == 0);

    auto one = MultilevelIndex::build({{{0.5, 0.5}}});
    CHECK(one.structures().size() == 1);
    CHECK(one.structures()[0].nodes.size() == 1);
    CHECK(one.query({RangeSpec::whole_plane()}, &st) == std::vector<std::uint32_t>{0});
    CHECK(st.visited == 1);
    CHECK(one.query({RangeSpec::empty()}).empty());
    CHECK_THROWS_AS(MultilevelIndex::build({{}}), ValidationError);
    CHECK_THROWS_AS(MultilevelIndex::build({}), ValidationError);
}

TEST_CASE("partition validity for n=1000, t=1") {
    std::mt19937_64 g(51);
    auto pts = random_points(g, 1000, 1);
    auto ix = MultilevelIndex::build(pts);
    const auto& s = ix.structures()[0];
    std::vector<int> seen(1000, 0);
    for (const auto& nd : s.nodes) {
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            Point2 p = ix.point(s.ids[i], 0);
            REQUIRE(p.x >= nd.box.xlo);
            REQUIRE(p.x <= nd.box.xhi);
            REQUIRE(p.y >= nd.box.ylo);
            REQUIRE(p.y <= nd.box.yhi);
        }
        if (nd.leaf()) {
            REQUIRE(nd.end - nd.begin <= 32u);
            for (std::uint32_t i = nd.begin; i < nd.end; ++i) ++seen[s.ids[i]];
        } else {
            std::uint32_t at = nd.begin;
            for (int c = 0; c < nd.child_count; ++c) {
                const auto& ch = s.nodes[nd.first_child + c];
                REQUIRE(ch.begin == at);
                at = ch.end;
            }
            REQUIRE(at == nd.end);
        }
    }
    for (int v : seen) REQUIRE(v == 1);
}

TEST_CASE("point references grow with t") {
    std::mt19937_64 g(52);
    auto pts = random_points(g, 1000, 3);
    std::uint64_t prev = 0;
    for (int t = 1; t <= 3; ++t) {
        std::vector<std::vector<Point2>> cut;
        for (auto& p : pts) cut.emplace_back(p.begin(), p.begin() + t);
        auto bs = MultilevelIndex::build(cut).build_stats();
        REQUIRE(bs.point_refs > prev);
        REQUIRE(bs.max_depth.size() == static_cast<std::size_t>(t));
        prev = bs.point_refs;
    }
}

TEST_CASE("range queries equal brute force on n=1000, t=3") {
    std::mt19937_64 g(53);
    auto pts = random_points(g, 1000, 3);
    auto ix = MultilevelIndex::build(pts);
    std::size_t total = 0;
    for (int q = 0; q < 100; ++q) {
        std::vector<RangeSpec> rs{random_range(g), random_range(g), random_range(g)};
        auto got = ix.query(rs);
        REQUIRE(got == brute(pts, rs));
        total += got.size();
    }
    CHECK(total > 0);
    std::vector<RangeSpec> all(3, RangeSpec::whole_plane());
    CHECK(ix.query(all).size() == 1000);
    all[0] = RangeSpec::empty();
    CHECK(ix.query(all).empty());
}

TEST_CASE("discrete curve queries equal brute force") {
    std::mt19937_64 g(54);
    std::vector<Curve> curves;
    for (int i = 0; i < 400; ++i) curves.push_back(oracle::random_curve(g, 3));
    auto ix = build_discrete_index(curves);
    std::size_t total = 0;
    for (int q = 0; q < 30; ++q) {
        auto qc = oracle::random_curve(g, 1 + q % 3);
        auto got = query_index(ix, qc, 0.3);
        REQUIRE(got == brute_force(curves, qc, 0.3, DistanceKind::Discrete));
        total += got.size();
    }
    CHECK(total > 0);
}

TEST_CASE("continuous curve queries equal brute force") {
    std::mt19937_64 g(55);
    std::vector<Curve> curves;
    for (int i = 0; i < 120; ++i) curves.push_back(oracle::random_curve(g, 2 + i % 2));
    const double rho = 0.5;
    auto ix = build_continuous_index(curves, rho);
    CHECK(ix.dims() == 89);
    std::size_t total = 0;
    int used = 0;
    for (int q = 0; q < 12; ++q) {
        auto qc = oracle::random_curve(g, 2);
        bool band = false;
        for (auto& c : curves) band = band || alt_godau_decide(qc, c, rho - 1e-7) != alt_godau_decide(qc, c, rho + 1e-7);
        if (band) continue;
        auto got = query_index(ix, qc, rho);
        REQUIRE(got == brute_force(curves, qc, rho, DistanceKind::Continuous));
        total += got.size();
        ++used;
    }
    CHECK(used >= 10);
    CHECK(total > 0);
    CHECK_THROWS_AS(query_index(ix, curves[0], 0.4), ValidationError);
}

TEST_CASE("serialization round trip and determinism") {
    std::mt19937_64 g(56);
    std::vector<Curve> curves;
    for (int i = 0; i < 300; ++i) curves.push_back(oracle::random_curve(g, 3));
    auto a = build_discrete_index(curves), b = build_discrete_index(curves);
    CHECK(a.serialize() == b.serialize());
    std::stringstream ss;
    a.save(ss);
    auto c = MultilevelIndex::load(ss);
    CHECK(c == a);
    CHECK(c.serialize() == a.serialize());
    for (int q = 0; q < 10; ++q) {
        auto qc = oracle::random_curve(g, 3);
        CHECK(query_index(a, qc, 0.3) == query_index(c, qc, 0.3));
    }
    auto bytes = a.serialize();
    CHECK_THROWS_AS(MultilevelIndex::deserialize("FRIY" + bytes.substr(4)), ValidationError);
    CHECK_THROWS_AS(MultilevelIndex::deserialize(bytes.substr(0, bytes.size() / 2)), ValidationError);
}
