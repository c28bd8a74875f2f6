#include "frq/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "frq/error.hpp"

namespace frq {

namespace {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok, int line) {
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
        throw ValidationError("curve file line " + std::to_string(line) + ": bad number '" + tok + "'");
    return v;
}

}  // namespace

std::vector<Curve> parse_curves(const std::string& text) {
    std::vector<Curve> out;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        Curve c;
        ls >> c.id;
        std::vector<double> v;
        std::string tok;
        while (ls >> tok) v.push_back(parse_double(tok, ln));
        if (v.empty() || v.size() % 2)
            throw ValidationError("curve file line " + std::to_string(ln) + ": need a non-empty list of x y pairs");
        for (std::size_t i = 0; i < v.size(); i += 2) c.vertices.push_back({v[i], v[i + 1]});
        out.push_back(std::move(c));
    }
    return out;
}

std::string format_curves(const std::vector<Curve>& curves) {
    std::string s;
    for (const auto& c : curves) {
        s += c.id;
        for (Point2 p : c.vertices) s += " " + fmt(p.x) + " " + fmt(p.y);
        s += "\n";
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw ResourceError("write failed for " + path);
}

std::vector<Curve> read_curves(const std::string& path) { return parse_curves(read_file(path)); }
void write_curves(const std::string& path, const std::vector<Curve>& curves) {
    write_file(path, format_curves(curves));
}

std::string format_manifest(const Manifest& m) {
    std::string s;
    for (const auto& [k, v] : m) s += k + "=" + v + "\n";
    return s;
}

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError("manifest: line without '=': " + line);
        m.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
}

std::string manifest_get(const Manifest& m, const std::string& key, const std::string& fallback) {
    for (const auto& [k, v] : m)
        if (k == key) return v;
    return fallback;
}

std::vector<Curve> random_curves(Rng& rng, std::size_t n, int t, const std::string& prefix, double lo, double hi) {
    std::vector<Curve> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Curve c{prefix + std::to_string(i), {}};
        for (int k = 0; k < t; ++k) {
            double x = rng.uniform(lo, hi);
            double y = rng.uniform(lo, hi);
            c.vertices.push_back({x, y});
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::string> pad_curves(std::vector<Curve>& curves, int t, bool split_edges) {
    std::vector<std::string> notes;
    for (auto& c : curves) {
        if (c.vertices.empty()) throw ValidationError("curve " + c.id + " has no vertices");
        if (static_cast<int>(c.size()) > t)
            throw ValidationError("curve " + c.id + " has more than " + std::to_string(t) + " vertices");
        if (static_cast<int>(c.size()) < t) {
            notes.push_back(c.id + ": padded " + std::to_string(c.size()) + " -> " + std::to_string(t));
            while (static_cast<int>(c.size()) < t) {
                auto& v = c.vertices;
                if (!split_edges || v.size() < 2) {
                    v.push_back(v.back());
                    continue;
                }
                std::size_t best = 0;
                for (std::size_t i = 1; i + 1 < v.size(); ++i)
                    if (dist(v[i], v[i + 1]) > dist(v[best], v[best + 1])) best = i;
                Point2 mid = 0.5 * (v[best] + v[best + 1]);
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(best) + 1, mid);
            }
        }
    }
    return notes;
}

namespace {

int max_len(const std::vector<Curve>& curves) {
    std::size_t t = 0;
    for (const auto& c : curves) t = std::max(t, c.size());
    return static_cast<int>(t);
}

}  // namespace

MultilevelIndex build_discrete_index(std::vector<Curve> curves, IndexParams params) {
    if (curves.empty()) throw ValidationError("build: empty dataset");
    const int ts = max_len(curves);
    auto notes = pad_curves(curves, ts);
    std::vector<std::vector<Point2>> pts;
    for (const auto& c : curves) pts.push_back(c.vertices);
    auto ix = MultilevelIndex::build(pts, params);
    ix.mode = IndexMode::Discrete;
    ix.ts = static_cast<std::uint32_t>(ts);
    for (const auto& c : curves) ix.ids.push_back(c.id);
    ix.padding_notes = std::move(notes);
    return ix;
}

MultilevelIndex build_continuous_index(std::vector<Curve> curves, double rho, IndexParams params) {
    if (curves.empty()) throw ValidationError("build: empty dataset");
    if (!(rho > 0)) throw ValidationError("build: continuous index needs rho > 0");
    const int ts = std::max(2, max_len(curves));
    auto notes = pad_curves(curves, ts, true);
    auto specs = column_specs(ts);
    std::vector<std::vector<Point2>> pts;
    for (const auto& c : curves) {
        auto emb = curve_to_tpoint(c, rho, specs);
        for (const auto& d : emb.diagnostics) notes.push_back(c.id + ": " + d);
        pts.push_back(std::move(emb.coords));
    }
    auto ix = MultilevelIndex::build(pts, params);
    ix.mode = IndexMode::Continuous;
    ix.rho = rho;
    ix.ts = static_cast<std::uint32_t>(ts);
    ix.columns = specs;
    for (const auto& c : curves) ix.ids.push_back(c.id);
    ix.padding_notes = std::move(notes);
    return ix;
}

std::vector<std::uint32_t> query_index(const MultilevelIndex& ix, const Curve& q, double rho, QueryStats* st) {
    if (q.size() == 0) throw ValidationError("query curve " + q.id + " has no vertices");
    switch (ix.mode) {
        case IndexMode::Discrete: {
            QueryPlanDiscrete plan(q, rho, static_cast<int>(ix.ts));
            return ix.query(plan, st);
        }
        case IndexMode::Continuous: {
            if (rho != ix.rho)
                throw ValidationError("continuous index was built for rho=" + fmt(ix.rho) + ", query asks rho=" +
                                      fmt(rho));
            Curve qq = q;
            if (qq.size() == 1) qq.vertices.push_back(qq.vertices[0]);
            ContinuousQueryPlan plan(qq, rho, static_cast<int>(ix.ts));
            return ix.query(plan, st);
        }
        default: throw ValidationError("index has no curve mode");
    }
}

std::vector<std::uint32_t> brute_force(const std::vector<Curve>& curves, const Curve& q, double rho,
                                       DistanceKind kind) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        bool hit = kind == DistanceKind::Discrete ? discrete_decide(q, curves[i], rho)
                                                  : alt_godau_decide(q, curves[i], rho);
        if (hit) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

}  // namespace frq
