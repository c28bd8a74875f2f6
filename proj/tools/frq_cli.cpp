#include <chrono>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <new>
#include <sstream>

#include "CLI11.hpp"
#include "frq/dataset.hpp"
#include "frq/error.hpp"
#include "frq/index.hpp"
#include "frq/lbgen.hpp"

using namespace frq;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point since) {
    return std::chrono::duration<double, std::micro>(Clock::now() - since).count();
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct GenOpts {
    std::string mode = "slabs", out = ".";
    std::int64_t n = 1024;
    int r = 16, t = 2, l = 4, tq = 3;
    double R = 4, tau = 0, eps = 0, lo = 0, hi = 1;
    std::uint64_t seed = 1;
    std::size_t queries = 0;
};

InstanceSpec to_spec(const GenOpts& o) {
    InstanceSpec s;
    s.n = o.n;
    s.r = o.r;
    s.t = o.t;
    s.R = o.R;
    s.l = o.l;
    s.tau = o.tau;
    s.seed = o.seed;
    s.eps = o.eps;
    s.mode = instance_mode_from_string(o.mode);
    return s;
}

InstanceSpec spec_from_manifest(const Manifest& m) {
    auto need = [&](const std::string& k) {
        auto v = manifest_get(m, k);
        if (v.empty()) throw ValidationError("manifest lacks '" + k + "'");
        return v;
    };
    InstanceSpec s;
    try {
        s.mode = instance_mode_from_string(need("mode"));
        s.n = std::stoll(need("n"));
        s.r = std::stoi(need("r"));
        s.t = std::stoi(need("t"));
        s.R = std::stod(need("R"));
        s.l = std::stoi(need("l"));
        s.seed = std::stoull(need("seed"));
        s.tau = std::stod(manifest_get(m, "tau_requested", "0"));
        s.eps = std::stod(manifest_get(m, "eps_requested", "0"));
    } catch (const std::invalid_argument&) {
        throw ValidationError("manifest has a malformed number");
    } catch (const std::out_of_range&) {
        throw ValidationError("manifest has an out-of-range number");
    }
    return s;
}

void construction_manifest(Manifest& m, const Construction& c) {
    const auto& s = c.spec;
    m.emplace_back("n", std::to_string(s.n));
    m.emplace_back("r", std::to_string(s.r));
    m.emplace_back("t", std::to_string(s.t));
    m.emplace_back("R", fmt(s.R));
    m.emplace_back("l", std::to_string(s.l));
    m.emplace_back("seed", std::to_string(s.seed));
    m.emplace_back("tau_requested", fmt(s.tau));
    m.emplace_back("eps_requested", fmt(s.eps));
    m.emplace_back("tau", fmt(c.tau));
    m.emplace_back("tau_exponent_c", std::to_string(c.c));
    m.emplace_back("X", fmt(c.X));
    m.emplace_back("X_int", std::to_string(c.Xi));
    m.emplace_back("color_branch", c.pruned.easy ? "easy (l > 2^(t-1))" : "sampled");
    m.emplace_back("p_used", fmt(c.pruned.p));
    m.emplace_back("p_formula_proof", "2^-t * X^(-2t/l)");
    m.emplace_back("p_formula_statement", "2^-t * X^(-t/l)");
    m.emplace_back("good_colors", std::to_string(c.pruned.colors.size()));
    m.emplace_back("n_c", std::to_string(c.n_c));
    m.emplace_back("families", std::to_string(c.families.size()));
    m.emplace_back("total", std::to_string(c.total()));
}

std::string format_slabs(const Construction& c) {
    std::string s;
    for (const auto& f : c.families)
        for (std::size_t k = 0; k < f.count(); ++k) {
            auto m = f.member(k);
            s += "f" + std::to_string(f.base.family) + "m" + std::to_string(k);
            for (const auto& sl : m.slabs) s += " " + fmt(sl.theta) + " " + fmt(sl.c1) + " " + fmt(sl.c2);
            s += "\n";
        }
    return s;
}

int cmd_gen(const GenOpts& o) {
    fs::create_directories(o.out);
    Manifest m{{"mode", o.mode}};
    const fs::path dir(o.out);
    if (o.mode == "random") {
        if (o.n < 1 || o.t < 1) throw ValidationError("random: need n >= 1 and t >= 1");
        Rng rng(o.seed);
        Rng cs = rng.stream("curves"), qs = rng.stream("queries");
        auto curves = random_curves(cs, static_cast<std::size_t>(o.n), o.t, "c", o.lo, o.hi);
        m.emplace_back("n", std::to_string(o.n));
        m.emplace_back("t", std::to_string(o.t));
        m.emplace_back("seed", std::to_string(o.seed));
        m.emplace_back("lo", fmt(o.lo));
        m.emplace_back("hi", fmt(o.hi));
        write_curves((dir / "curves.txt").string(), curves);
        if (o.queries > 0) {
            m.emplace_back("queries", std::to_string(o.queries));
            m.emplace_back("tq", std::to_string(o.tq));
            write_curves((dir / "queries.txt").string(), random_curves(qs, o.queries, o.tq, "q", o.lo, o.hi));
        }
        write_file((dir / "manifest.txt").string(), format_manifest(m));
        return 0;
    }
    auto spec = to_spec(o);
    switch (spec.mode) {
        case InstanceMode::Slabs: {
            auto c = build_construction(spec);
            construction_manifest(m, c);
            write_file((dir / "slabs.txt").string(), format_slabs(c));
            break;
        }
        case InstanceMode::DiscreteLenses: {
            auto d = build_discrete_instance(spec);
            construction_manifest(m, d.construction);
            m.emplace_back("eps", fmt(d.eps));
            m.emplace_back("rho", fmt(d.rho));
            m.emplace_back("distance", "discrete");
            m.emplace_back("query_domain", d.query_domain());
            write_curves((dir / "curves.txt").string(), d.curves);
            break;
        }
        case InstanceMode::ContinuousZigzag: {
            auto ci = build_continuous_instance(spec);
            construction_manifest(m, ci.construction);
            m.emplace_back("rho", "1");
            m.emplace_back("distance", "continuous");
            m.emplace_back("curves", std::to_string(ci.curves.size()));
            m.emplace_back("query_domain", ci.query_domain());
            write_curves((dir / "curves.txt").string(), ci.curves);
            break;
        }
    }
    write_file((dir / "manifest.txt").string(), format_manifest(m));
    return 0;
}

struct BuildOpts {
    std::string curves, out, mode = "discrete";
    double rho = 0, eps = 0.25;
    int leaf = 32;
};

int cmd_build(const BuildOpts& o) {
    auto curves = read_curves(o.curves);
    IndexParams p;
    p.eps = o.eps;
    p.leaf_cap = o.leaf;
    MultilevelIndex ix;
    if (o.mode == "discrete")
        ix = build_discrete_index(curves, p);
    else if (o.mode == "continuous")
        ix = build_continuous_index(curves, o.rho, p);
    else
        throw ValidationError("build: mode must be discrete or continuous");
    write_file(o.out, ix.serialize());
    auto bs = ix.build_stats();
    std::cerr << "built " << ix.size() << " curves, " << ix.dims() << " levels, " << bs.structures << " structures, "
              << bs.nodes << " nodes, " << ix.padding_notes.size() << " padding notes\n";
    return 0;
}

void print_result(std::ostream& os, const std::string& qid, const std::vector<std::uint32_t>& hits,
                  const std::vector<std::string>& ids) {
    os << qid << " " << hits.size();
    for (auto h : hits) os << " " << ids.at(h);
    os << "\n";
}

struct QueryOpts {
    std::string index, queries, curves, mode = "discrete";
    double rho = 0;
    bool timing = false;
};

int cmd_query(const QueryOpts& o) {
    auto ix = MultilevelIndex::deserialize(read_file(o.index));
    auto qs = read_curves(o.queries);
    if (ix.mode == IndexMode::Continuous && o.rho != ix.rho)
        throw ValidationError("continuous index was built for rho=" + fmt(ix.rho) + ", query asks rho=" + fmt(o.rho));
    for (const auto& q : qs) {
        if (q.size() == 0) throw ValidationError("query " + q.id + " has no vertices");
        QueryStats st;
        auto t0 = Clock::now();
        std::vector<std::uint32_t> hits;
        double plan_us = 0;
        if (ix.mode == IndexMode::Discrete) {
            QueryPlanDiscrete plan(q, o.rho, static_cast<int>(ix.ts));
            plan_us = elapsed_us(t0);
            hits = ix.query(plan, &st);
        } else if (ix.mode == IndexMode::Continuous) {
            Curve qq = q;
            if (qq.size() == 1) qq.vertices.push_back(qq.vertices[0]);
            ContinuousQueryPlan plan(qq, o.rho, static_cast<int>(ix.ts));
            plan_us = elapsed_us(t0);
            hits = ix.query(plan, &st);
        } else {
            throw ValidationError("index has no curve mode");
        }
        double total_us = elapsed_us(t0);
        print_result(std::cout, q.id, hits, ix.ids);
        if (o.timing)
            std::cerr << q.id << " plan_us=" << plan_us << " query_us=" << total_us - plan_us
                      << " canonical=" << st.canonical << " k=" << hits.size() << "\n";
    }
    return 0;
}

int cmd_oracle(const QueryOpts& o) {
    auto curves = read_curves(o.curves);
    auto qs = read_curves(o.queries);
    DistanceKind kind;
    if (o.mode == "discrete")
        kind = DistanceKind::Discrete;
    else if (o.mode == "continuous")
        kind = DistanceKind::Continuous;
    else
        throw ValidationError("oracle: mode must be discrete or continuous");
    std::vector<std::string> ids;
    for (const auto& c : curves) ids.push_back(c.id);
    for (const auto& q : qs) {
        if (q.size() == 0) throw ValidationError("query " + q.id + " has no vertices");
        print_result(std::cout, q.id, brute_force(curves, q, o.rho, kind), ids);
    }
    return 0;
}

struct BenchOpts {
    int min_exp = 10, max_exp = 16, queries = 50;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_bench(const BenchOpts& o) {
    if (o.min_exp < 1 || o.max_exp < o.min_exp || o.max_exp > 24) throw ValidationError("bench: bad exponent range");
    std::ostringstream csv;
    csv << "n,build_ms,index_bytes,nodes,plan_us,query_us,canonical,visited,k,ref_sqrt_n\n";
    Rng root(o.seed);
    for (int e = o.min_exp; e <= o.max_exp; ++e) {
        const std::uint32_t n = 1u << e;
        Rng g = root.stream("bench/" + std::to_string(e));
        std::vector<std::vector<Point2>> pts(n);
        for (auto& p : pts) {
            double x = g.uniform();
            p.push_back({x, g.uniform()});
        }
        auto t0 = Clock::now();
        auto ix = MultilevelIndex::build(pts);
        double build_ms = elapsed_us(t0) / 1000;
        double plan = 0, query = 0, canonical = 0, visited = 0, k = 0;
        for (int q = 0; q < o.queries; ++q) {
            auto t1 = Clock::now();
            double th = g.uniform(0, 2 * kPi);
            double px = g.uniform(), py = g.uniform();
            std::vector<RangeSpec> rs{
                {{Clause{linear_atom(std::cos(th), std::sin(th), -(std::cos(th) * px + std::sin(th) * py), Rel::Le)}}}};
            plan += elapsed_us(t1);
            auto t2 = Clock::now();
            QueryStats st;
            auto hits = ix.query(rs, &st);
            query += elapsed_us(t2);
            canonical += st.canonical;
            visited += st.visited;
            k += hits.size();
        }
        double qn = o.queries;
        csv << n << "," << build_ms << "," << ix.serialize().size() << "," << ix.build_stats().nodes << ","
            << plan / qn << "," << query / qn << "," << canonical / qn << "," << visited / qn << "," << k / qn << ","
            << std::sqrt(static_cast<double>(n)) << "\n";
    }
    if (o.out.empty())
        std::cout << csv.str();
    else
        write_file(o.out, csv.str());
    return 0;
}

struct VerifyOpts {
    std::string dir;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
};

int cmd_verify(const VerifyOpts& o) {
    const fs::path dir(o.dir);
    auto m = parse_manifest(read_file((dir / "manifest.txt").string()));
    auto spec = spec_from_manifest(m);
    bool ok = true;
    auto out = [](const std::string& k, const std::string& v) { std::cout << k << "=" << v << "\n"; };
    Rng rng = Rng(o.seed).stream("verify-lb");
    const int t = spec.t;
    auto sample = [&] {
        std::vector<Point2> p(t);
        for (auto& q : p) q = {rng.uniform(), rng.uniform()};
        return p;
    };

    auto c = build_construction(spec);
    auto v = verify_slab_construction(c, o.samples, 100, o.seed);
    out("mode", to_string(spec.mode));
    out("coverage", v.coverage_ok ? "exactly-one-per-family" : "FAILED");
    out("coverage_samples", std::to_string(v.samples));
    out("coverage_misses", std::to_string(v.misses));
    out("coverage_multi", std::to_string(v.multi));
    out("min_box_volume", fmt(v.min_box_volume));
    out("volume_constant_C", fmt(v.max_C));
    out("volume_pairs", std::to_string(v.pairs));
    out("volume_bound", v.max_C <= 64 ? "ok" : "FAILED");
    ok = ok && v.coverage_ok && v.max_C <= 64;

    switch (spec.mode) {
        case InstanceMode::Slabs: {
            bool same = read_file((dir / "slabs.txt").string()) == format_slabs(c);
            out("regenerated", same ? "identical" : "DIFFERENT");
            ok = ok && same;
            break;
        }
        case InstanceMode::DiscreteLenses: {
            auto d = build_discrete_instance(spec);
            bool same = read_file((dir / "curves.txt").string()) == format_curves(d.curves);
            out("regenerated", same ? "identical" : "DIFFERENT");
            std::size_t used = 0, mismatches = 0;
            for (std::size_t s = 0; s < std::min<std::size_t>(o.samples, 200); ++s) {
                auto p = sample();
                bool err = false;
                for (std::size_t i = 0; i < d.curves.size() && !err; ++i)
                    for (int j = 0; j < t; ++j)
                        err = err || slab_contains(d.slabs[i].slabs[j], p[j]) != lens_contains(d.lenses[i][j], p[j]);
                if (err) continue;
                ++used;
                auto qc = d.query_curve(p);
                for (std::size_t i = 0; i < d.curves.size(); ++i)
                    mismatches += discrete_decide(qc, d.curves[i], d.rho) != tslab_contains(d.slabs[i], p);
            }
            out("rho", fmt(d.rho));
            out("lens_queries", std::to_string(used));
            out("lens_mismatches", std::to_string(mismatches));
            ok = ok && same && mismatches == 0;
            break;
        }
        case InstanceMode::ContinuousZigzag: {
            auto ci = build_continuous_instance(spec);
            bool same = read_file((dir / "curves.txt").string()) == format_curves(ci.curves);
            out("regenerated", same ? "identical" : "DIFFERENT");
            std::size_t checked = 0, failures = 0;
            while (checked < std::min<std::size_t>(o.samples, 100)) {
                std::size_t idx = rng.below(ci.curves.size());
                int fam = ci.curve_family[idx];
                std::vector<std::pair<double, double>> segs;
                bool fits = true;
                for (int j = 0; j < t && fits; ++j) {
                    const auto& z = ci.series[fam][j].gadgets[ci.curve_gadgets[idx][j]];
                    double val = z.x2 + (z.x3 - z.x2) * rng.uniform(0.05, 0.95);
                    double a = rng.uniform(-0.25, 0.25), b = val - a * z.x1;
                    segs.push_back({b - 4 * a, b + 4 * a});
                    fits = std::abs(b - 4 * a) <= 1 && std::abs(b + 4 * a) <= 1;
                }
                if (!fits) continue;
                ++checked;
                failures += !alt_godau_decide(zigzag_query(segs), ci.curves[idx], 1);
            }
            out("zigzag_queries", std::to_string(checked));
            out("zigzag_failures", std::to_string(failures));
            ok = ok && same && failures == 0;
            break;
        }
    }
    out("status", ok ? "ok" : "FAILED");
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frechet range searching: index, oracle, benchmark and lower-bound instances"};
    app.require_subcommand(1);

    GenOpts g;
    auto* gen = app.add_subcommand("gen", "generate a dataset or lower-bound instance");
    gen->add_option("--mode", g.mode, "slabs | discrete-lenses | continuous-zigzag | random")
        ->check(CLI::IsMember({"slabs", "discrete-lenses", "continuous-zigzag", "random"}));
    gen->add_option("--n", g.n, "input size");
    gen->add_option("--r", g.r, "number of families");
    gen->add_option("--t", g.t, "levels / vertices per curve");
    gen->add_option("--R", g.R, "thickness base");
    gen->add_option("--l", g.l, "subset size l");
    gen->add_option("--tau", g.tau, "fixed thickness product (default: automatic)");
    gen->add_option("--eps", g.eps, "lens error area (default 1/(4nt))");
    gen->add_option("--seed", g.seed, "seed");
    gen->add_option("--queries", g.queries, "random mode: number of query curves");
    gen->add_option("--tq", g.tq, "random mode: query vertices");
    gen->add_option("--lo", g.lo, "random mode: coordinate lower bound");
    gen->add_option("--hi", g.hi, "random mode: coordinate upper bound");
    gen->add_option("--out", g.out, "output directory");

    BuildOpts b;
    auto* build = app.add_subcommand("build", "build an index file from a curve file");
    build->add_option("--curves", b.curves, "curve file")->required();
    build->add_option("--out", b.out, "index file")->required();
    build->add_option("--mode", b.mode, "discrete | continuous");
    build->add_option("--rho", b.rho, "radius bound at build time (continuous)");
    build->add_option("--eps", b.eps, "fan-out exponent");
    build->add_option("--leaf", b.leaf, "leaf capacity");

    QueryOpts q;
    auto* query = app.add_subcommand("query", "answer queries with an index");
    query->add_option("--index", q.index, "index file")->required();
    query->add_option("--queries", q.queries, "query curve file")->required();
    query->add_option("--rho", q.rho, "radius")->required();
    query->add_flag("--timing", q.timing, "per-query timings on stderr");

    QueryOpts oq;
    auto* oracle = app.add_subcommand("oracle", "brute-force answers");
    oracle->add_option("--curves", oq.curves, "curve file")->required();
    oracle->add_option("--queries", oq.queries, "query curve file")->required();
    oracle->add_option("--rho", oq.rho, "radius")->required();
    oracle->add_option("--mode", oq.mode, "discrete | continuous");

    BenchOpts bo;
    auto* bench = app.add_subcommand("bench", "halfplane range reporting sweep (t=1) as CSV");
    bench->add_option("--min-exp", bo.min_exp, "smallest n = 2^e");
    bench->add_option("--max-exp", bo.max_exp, "largest n = 2^e");
    bench->add_option("--queries", bo.queries, "queries per size");
    bench->add_option("--seed", bo.seed, "seed");
    bench->add_option("--out", bo.out, "CSV file (default stdout)");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify-lb", "check a generated instance against its properties");
    verify->add_option("--dir", vo.dir, "instance directory written by gen")->required();
    verify->add_option("--samples", vo.samples, "Monte-Carlo samples");
    verify->add_option("--seed", vo.seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) return cmd_gen(g);
        if (*build) return cmd_build(b);
        if (*query) return cmd_query(q);
        if (*oracle) return cmd_oracle(oq);
        if (*bench) return cmd_bench(bo);
        if (*verify) return cmd_verify(vo);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
