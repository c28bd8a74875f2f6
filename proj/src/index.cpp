#include "frq/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "frq/error.hpp"

namespace frq {

static_assert(std::endian::native == std::endian::little, "FRIX writer assumes a little-endian host");

MultilevelIndex MultilevelIndex::build(const std::vector<std::vector<Point2>>& points, IndexParams params) {
    if (points.empty()) throw ValidationError("build_index: no points");
    const std::size_t t = points[0].size();
    if (t == 0) throw ValidationError("build_index: t must be at least 1");
    if (static_cast<int>(t) > params.max_levels)
        throw ValidationError("build_index: t=" + std::to_string(t) + " exceeds max_levels");
    if (params.leaf_cap < 1 || !(params.eps > 0 && params.eps < 1))
        throw ValidationError("build_index: need leaf_cap >= 1 and 0 < eps < 1");
    MultilevelIndex ix;
    ix.params_ = params;
    ix.n_ = static_cast<std::uint32_t>(points.size());
    ix.t_ = static_cast<std::uint32_t>(t);
    ix.pts_.reserve(points.size() * t);
    for (const auto& p : points) {
        if (p.size() != t) throw ValidationError("build_index: points have different t");
        ix.pts_.insert(ix.pts_.end(), p.begin(), p.end());
    }
    std::vector<std::uint32_t> all(ix.n_);
    for (std::uint32_t i = 0; i < ix.n_; ++i) all[i] = i;
    ix.build_structure(0, std::move(all));
    return ix;
}

std::int32_t MultilevelIndex::build_structure(std::uint32_t level, std::vector<std::uint32_t> ids) {
    auto s = static_cast<std::uint32_t>(structs_.size());
    LevelStructure ls;
    ls.level = level;
    ls.ids = std::move(ids);
    PartitionNode root;
    root.begin = 0;
    root.end = static_cast<std::uint32_t>(ls.ids.size());
    ls.nodes.push_back(root);
    structs_.push_back(std::move(ls));
    build_node(s, 0, level);
    return static_cast<std::int32_t>(s);
}

void MultilevelIndex::build_node(std::uint32_t s, std::uint32_t node, std::uint32_t level) {
    const std::uint32_t b = structs_[s].nodes[node].begin, e = structs_[s].nodes[node].end;
    {
        Region box{1e300, -1e300, 1e300, -1e300};
        for (std::uint32_t i = b; i < e; ++i) {
            Point2 p = point(structs_[s].ids[i], level);
            box.xlo = std::min(box.xlo, p.x);
            box.xhi = std::max(box.xhi, p.x);
            box.ylo = std::min(box.ylo, p.y);
            box.yhi = std::max(box.yhi, p.y);
        }
        structs_[s].nodes[node].box = box;
    }
    const std::uint32_t size = e - b;
    if (size <= static_cast<std::uint32_t>(params_.leaf_cap)) return;

    auto r = static_cast<std::uint32_t>(std::ceil(std::pow(static_cast<double>(size), params_.eps)));
    r = std::min(std::max(r, 2u), size);
    struct Part {
        std::uint32_t b, e;
        int axis;
    };
    std::vector<Part> parts{{b, e, 0}};
    auto& ids = structs_[s].ids;
    while (parts.size() < r) {
        auto big = std::max_element(parts.begin(), parts.end(),
                                    [](const Part& x, const Part& y) { return x.e - x.b < y.e - y.b; });
        Part p = *big;
        if (p.e - p.b < 2) break;
        std::uint32_t mid = p.b + (p.e - p.b) / 2;
        auto key = [&](std::uint32_t id) {
            Point2 q = point(id, level);
            return std::pair{p.axis == 0 ? q.x : q.y, id};
        };
        std::nth_element(ids.begin() + p.b, ids.begin() + mid, ids.begin() + p.e,
                         [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });
        *big = {p.b, mid, 1 - p.axis};
        parts.push_back({mid, p.e, 1 - p.axis});
    }
    std::sort(parts.begin(), parts.end(), [](const Part& x, const Part& y) { return x.b < y.b; });

    auto first = static_cast<std::int32_t>(structs_[s].nodes.size());
    structs_[s].nodes[node].first_child = first;
    structs_[s].nodes[node].child_count = static_cast<std::int32_t>(parts.size());
    for (const auto& p : parts) {
        PartitionNode c;
        c.begin = p.b;
        c.end = p.e;
        structs_[s].nodes.push_back(c);
    }
    for (std::size_t c = 0; c < parts.size(); ++c) build_node(s, static_cast<std::uint32_t>(first + c), level);
    if (level + 1 < t_) {
        std::vector<std::uint32_t> sub(structs_[s].ids.begin() + b, structs_[s].ids.begin() + e);
        std::int32_t nx = build_structure(level + 1, std::move(sub));
        structs_[s].nodes[node].next = nx;
    }
}

BuildStats MultilevelIndex::build_stats() const {
    BuildStats b;
    b.max_depth.assign(t_, 0);
    for (const auto& s : structs_) {
        ++b.structures;
        b.nodes += s.nodes.size();
        b.point_refs += s.ids.size();
        std::vector<std::pair<std::int32_t, std::uint32_t>> stack{{0, 1}};
        while (!stack.empty()) {
            auto [n, d] = stack.back();
            stack.pop_back();
            b.max_depth[s.level] = std::max(b.max_depth[s.level], d);
            const auto& nd = s.nodes[n];
            for (std::int32_t c = 0; c < nd.child_count; ++c) stack.push_back({nd.first_child + c, d + 1});
        }
    }
    return b;
}

namespace {

void finish(std::vector<std::uint32_t>& out) {
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end())
        throw InvariantViolation("query reported an id twice");
}

}  // namespace

std::vector<std::uint32_t> MultilevelIndex::query(const std::vector<RangeSpec>& ranges, QueryStats* stp) const {
    QueryStats local;
    QueryStats& st = stp ? *stp : local;
    st = {};
    std::vector<std::uint32_t> out;
    if (structs_.empty()) return out;
    if (ranges.size() != t_) throw ValidationError("query: need one range per level");

    auto scan = [&](const LevelStructure& S, const PartitionNode& nd, std::uint32_t from) {
        ++st.canonical;
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            std::uint32_t id = S.ids[i];
            ++st.scanned;
            bool ok = true;
            for (std::uint32_t l = from; l < t_ && ok; ++l) ok = ranges[l].contains(point(id, l));
            if (ok) out.push_back(id);
        }
    };
    auto rec = [&](auto& self, std::int32_t s, std::int32_t node) -> void {
        const LevelStructure& S = structs_[s];
        const PartitionNode& nd = S.nodes[node];
        const std::uint32_t k = S.level;
        ++st.visited;
        auto cls = classify(nd.box, ranges[k]);
        if (cls == Classification::Outside) return;
        if (cls == Classification::Inside) {
            ++st.inside;
            if (k + 1 == t_) {
                ++st.canonical;
                out.insert(out.end(), S.ids.begin() + nd.begin, S.ids.begin() + nd.end);
            } else if (nd.next >= 0) {
                self(self, nd.next, 0);
            } else {
                scan(S, nd, k + 1);
            }
            return;
        }
        ++st.crossing;
        if (nd.leaf()) {
            scan(S, nd, k);
            return;
        }
        for (std::int32_t c = 0; c < nd.child_count; ++c) self(self, s, nd.first_child + c);
    };
    rec(rec, 0, 0);
    finish(out);
    st.reported = out.size();
    return out;
}

std::vector<std::uint32_t> MultilevelIndex::query(const QueryProgram& prog, QueryStats* stp) const {
    QueryStats local;
    QueryStats& st = stp ? *stp : local;
    st = {};
    std::vector<std::uint32_t> out;
    if (structs_.empty()) return out;
    if (prog.levels() != static_cast<int>(t_))
        throw ValidationError("query: program has " + std::to_string(prog.levels()) + " levels, index has " +
                              std::to_string(t_));

    auto scan = [&](const LevelStructure& S, const PartitionNode& nd, std::uint32_t from, long state,
                    const std::vector<SignVector>& masks) {
        ++st.canonical;
        std::vector<SignVector> m;
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            std::uint32_t id = S.ids[i];
            ++st.scanned;
            m = masks;
            long s2 = state;
            for (std::uint32_t l = from; l < t_ && s2 >= 0; ++l) {
                m[l] = sign_vector(prog.level(static_cast<int>(l)).atoms, point(id, l));
                s2 = prog.step(s2, static_cast<int>(l), m[l]);
            }
            if (s2 >= 0 && prog.accept(s2, m)) out.push_back(id);
        }
    };
    auto rec = [&](auto& self, std::int32_t s, std::int32_t node, long state, std::vector<SignVector>& masks) -> void {
        const LevelStructure& S = structs_[s];
        const PartitionNode& nd = S.nodes[node];
        const std::uint32_t k = S.level;
        ++st.visited;
        if (nd.leaf()) {
            scan(S, nd, k, state, masks);
            return;
        }
        const PlanLevel& L = prog.level(static_cast<int>(k));
        bool complete = prog.closed_world() ||
                        (L.atoms.size() < 63 && L.cells.size() == (std::size_t{1} << L.atoms.size()));
        bool all_out = true;
        for (const auto& cell : L.cells) {
            auto cls = classify(nd.box, cell.range);
            if (cls == Classification::Outside) continue;
            long s2 = prog.step(state, static_cast<int>(k), cell.mask);
            if (cls == Classification::Inside) {
                ++st.inside;
                if (s2 < 0) return;
                SignVector saved = masks[k];
                masks[k] = cell.mask;
                if (k + 1 == t_) {
                    if (prog.accept(s2, masks)) {
                        ++st.canonical;
                        out.insert(out.end(), S.ids.begin() + nd.begin, S.ids.begin() + nd.end);
                    }
                } else {
                    self(self, nd.next, 0, s2, masks);
                }
                masks[k] = saved;
                return;
            }
            if (s2 >= 0) all_out = false;
        }
        if (complete && all_out) return;
        ++st.crossing;
        for (std::int32_t c = 0; c < nd.child_count; ++c) self(self, s, nd.first_child + c, state, masks);
    };
    std::vector<SignVector> masks(t_, 0);
    rec(rec, 0, 0, prog.initial_state(), masks);
    finish(out);
    st.reported = out.size();
    return out;
}

// ---- FRIX serialization ----------------------------------------------------------

namespace {

constexpr std::uint32_t kFormatVersion = 1;

struct Writer {
    std::string buf;
    template <class T>
    void put(T v) {
        char raw[sizeof(T)];
        std::memcpy(raw, &v, sizeof(T));
        buf.append(raw, sizeof(T));
    }
    void str(const std::string& s) {
        put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        buf += s;
    }
};

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;
    template <class T>
    T get() {
        if (pos + sizeof(T) > buf.size()) throw ValidationError("FRIX: truncated file");
        T v;
        std::memcpy(&v, buf.data() + pos, sizeof(T));
        pos += sizeof(T);
        return v;
    }
    std::string str() {
        auto n = get<std::uint32_t>();
        if (pos + n > buf.size()) throw ValidationError("FRIX: truncated string");
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
    std::uint32_t count(std::size_t elem_size) {
        auto n = get<std::uint32_t>();
        if (static_cast<std::uint64_t>(n) * elem_size > buf.size() - pos) throw ValidationError("FRIX: bad count");
        return n;
    }
};

}  // namespace

std::string MultilevelIndex::serialize() const {
    Writer w;
    w.buf = "FRIX";
    w.put(kFormatVersion);
    w.put(params_.eps);
    w.put<std::int32_t>(params_.leaf_cap);
    w.put<std::int32_t>(params_.max_levels);
    w.put(static_cast<std::uint8_t>(mode));
    w.put(rho);
    w.put(ts);
    w.put(n_);
    w.put(t_);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(columns.size()));
    for (const auto& c : columns) {
        w.put(static_cast<std::uint8_t>(c.kind));
        w.put<std::int32_t>(c.entry);
        w.put<std::int32_t>(c.j);
        w.put<std::int32_t>(c.k);
        w.put<std::uint8_t>(c.padding);
    }
    w.put<std::uint32_t>(static_cast<std::uint32_t>(ids.size()));
    for (const auto& s : ids) w.str(s);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(padding_notes.size()));
    for (const auto& s : padding_notes) w.str(s);
    for (Point2 p : pts_) {
        w.put(p.x);
        w.put(p.y);
    }
    w.put<std::uint32_t>(static_cast<std::uint32_t>(structs_.size()));
    for (const auto& s : structs_) {
        w.put(s.level);
        w.put<std::uint32_t>(static_cast<std::uint32_t>(s.nodes.size()));
        for (const auto& nd : s.nodes) {
            w.put(nd.box.xlo);
            w.put(nd.box.xhi);
            w.put(nd.box.ylo);
            w.put(nd.box.yhi);
            w.put(nd.first_child);
            w.put(nd.child_count);
            w.put(nd.begin);
            w.put(nd.end);
            w.put(nd.next);
        }
        w.put<std::uint32_t>(static_cast<std::uint32_t>(s.ids.size()));
        for (auto id : s.ids) w.put(id);
    }
    return w.buf;
}

MultilevelIndex MultilevelIndex::deserialize(const std::string& bytes) {
    if (bytes.size() < 8 || bytes.compare(0, 4, "FRIX") != 0) throw ValidationError("FRIX: bad magic");
    Reader r{bytes, 4};
    if (auto v = r.get<std::uint32_t>(); v != kFormatVersion)
        throw ValidationError("FRIX: unsupported format version " + std::to_string(v));
    MultilevelIndex ix;
    ix.params_.eps = r.get<double>();
    ix.params_.leaf_cap = r.get<std::int32_t>();
    ix.params_.max_levels = r.get<std::int32_t>();
    ix.mode = static_cast<IndexMode>(r.get<std::uint8_t>());
    ix.rho = r.get<double>();
    ix.ts = r.get<std::uint32_t>();
    ix.n_ = r.get<std::uint32_t>();
    ix.t_ = r.get<std::uint32_t>();
    for (std::uint32_t c = 0, nc = r.count(14); c < nc; ++c) {
        ColumnSpec cs;
        cs.kind = static_cast<ColumnKind>(r.get<std::uint8_t>());
        cs.entry = r.get<std::int32_t>();
        cs.j = r.get<std::int32_t>();
        cs.k = r.get<std::int32_t>();
        cs.padding = r.get<std::uint8_t>() != 0;
        ix.columns.push_back(cs);
    }
    for (std::uint32_t i = 0, ni = r.count(4); i < ni; ++i) ix.ids.push_back(r.str());
    for (std::uint32_t i = 0, ni = r.count(4); i < ni; ++i) ix.padding_notes.push_back(r.str());
    const std::uint64_t npts = std::uint64_t(ix.n_) * ix.t_;
    if (npts * 16 > bytes.size()) throw ValidationError("FRIX: bad point count");
    ix.pts_.resize(npts);
    for (auto& p : ix.pts_) {
        p.x = r.get<double>();
        p.y = r.get<double>();
    }
    for (std::uint32_t s = 0, ns = r.count(8); s < ns; ++s) {
        LevelStructure ls;
        ls.level = r.get<std::uint32_t>();
        ls.nodes.resize(r.count(52));
        for (auto& nd : ls.nodes) {
            nd.box.xlo = r.get<double>();
            nd.box.xhi = r.get<double>();
            nd.box.ylo = r.get<double>();
            nd.box.yhi = r.get<double>();
            nd.first_child = r.get<std::int32_t>();
            nd.child_count = r.get<std::int32_t>();
            nd.begin = r.get<std::uint32_t>();
            nd.end = r.get<std::uint32_t>();
            nd.next = r.get<std::int32_t>();
        }
        ls.ids.resize(r.count(4));
        for (auto& id : ls.ids) id = r.get<std::uint32_t>();
        ix.structs_.push_back(std::move(ls));
    }
    if (r.pos != bytes.size()) throw ValidationError("FRIX: trailing bytes");
    // structural sanity so a corrupt file cannot send queries out of bounds
    for (const auto& s : ix.structs_) {
        if (s.level >= ix.t_ || s.nodes.empty()) throw ValidationError("FRIX: bad structure");
        for (const auto& nd : s.nodes) {
            bool bad = nd.begin > nd.end || nd.end > s.ids.size() || nd.child_count < 0 ||
                       (nd.child_count > 0 && (nd.first_child < 0 ||
                                               std::size_t(nd.first_child) + nd.child_count > s.nodes.size())) ||
                       nd.next >= static_cast<std::int32_t>(ix.structs_.size());
            if (bad) throw ValidationError("FRIX: bad node");
        }
        for (auto id : s.ids)
            if (id >= ix.n_) throw ValidationError("FRIX: bad id");
    }
    return ix;
}

void MultilevelIndex::save(std::ostream& os) const {
    auto b = serialize();
    os.write(b.data(), static_cast<std::streamsize>(b.size()));
    if (!os) throw ResourceError("FRIX: write failed");
}

MultilevelIndex MultilevelIndex::load(std::istream& is) {
    std::ostringstream ss;
    ss << is.rdbuf();
    return deserialize(ss.str());
}

bool operator==(const MultilevelIndex& a, const MultilevelIndex& b) { return a.serialize() == b.serialize(); }

}  // namespace frq
