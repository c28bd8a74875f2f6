#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "frq/range.hpp"
#include "frq/signature.hpp"

namespace frq {

struct IndexParams {
    double eps = 0.25;
    int leaf_cap = 32;
    int max_levels = 256;
};

enum class IndexMode : std::uint8_t { Generic = 0, Discrete = 1, Continuous = 2 };

struct PartitionNode {
    Region box;
    std::int32_t first_child = -1, child_count = 0;
    std::uint32_t begin = 0, end = 0;  // id range inside the owning structure
    std::int32_t next = -1;            // next-level structure over this node's ids
    bool leaf() const { return child_count == 0; }
};

// One partition tree over the level-th coordinate of its id set.
struct LevelStructure {
    std::uint32_t level = 0;
    std::vector<PartitionNode> nodes;  // nodes[0] is the root
    std::vector<std::uint32_t> ids;
};

struct BuildStats {
    std::uint64_t structures = 0, nodes = 0, point_refs = 0;
    std::vector<std::uint32_t> max_depth;  // per level
};

struct QueryStats {
    std::uint64_t visited = 0, inside = 0, crossing = 0, canonical = 0, scanned = 0, reported = 0;
};

class MultilevelIndex {
  public:
    MultilevelIndex() = default;

    // points[i] is the t-point of id i.
    static MultilevelIndex build(const std::vector<std::vector<Point2>>& points, IndexParams params = {});

    std::uint32_t size() const { return n_; }
    std::uint32_t dims() const { return t_; }
    const IndexParams& params() const { return params_; }
    Point2 point(std::uint32_t id, std::uint32_t level) const { return pts_[std::size_t(id) * t_ + level]; }
    const std::vector<LevelStructure>& structures() const { return structs_; }
    BuildStats build_stats() const;

    // One range per level; ids whose every coordinate lies in its range.
    std::vector<std::uint32_t> query(const std::vector<RangeSpec>& ranges, QueryStats* st = nullptr) const;
    // Branches over the program's cells level by level.
    std::vector<std::uint32_t> query(const QueryProgram& prog, QueryStats* st = nullptr) const;

    // Metadata carried through serialization.
    IndexMode mode = IndexMode::Generic;
    double rho = 0;  // bound radius for continuous indexes
    std::uint32_t ts = 0;
    std::vector<ColumnSpec> columns;
    std::vector<std::string> ids;
    std::vector<std::string> padding_notes;

    void save(std::ostream& os) const;
    static MultilevelIndex load(std::istream& is);
    std::string serialize() const;
    static MultilevelIndex deserialize(const std::string& bytes);

    friend bool operator==(const MultilevelIndex& a, const MultilevelIndex& b);

  private:
    std::uint32_t n_ = 0, t_ = 0;
    IndexParams params_;
    std::vector<Point2> pts_;
    std::vector<LevelStructure> structs_;

    std::int32_t build_structure(std::uint32_t level, std::vector<std::uint32_t> ids);
    void build_node(std::uint32_t s, std::uint32_t node, std::uint32_t level);
};

}  // namespace frq
