#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frq/frechet.hpp"
#include "frq/predicates.hpp"
#include "frq/range.hpp"

namespace frq {

// Bit i is the truth value of atom i of the generating range set (at most 64).
using SignVector = std::uint64_t;

SignVector sign_vector(const std::vector<Atom>& atoms, Point2 p);

struct ArrangementCell {
    SignVector signs = 0;
    Point2 witness;
};

// Realizable sign vectors of an arrangement of disk and halfplane atoms, found
// by probing candidate points around every boundary piece. The probe offset is
// halved until no new sign vector shows up.
std::vector<ArrangementCell> arrangement_cells(const std::vector<Atom>& atoms, std::optional<Point2> far = {});
std::vector<ArrangementCell> disk_arrangement_cells(const std::vector<Point2>& centers, double rho);

// Vertical decomposition piece: x-range [xl, xr) plus at most two arc bounds.
struct RefinedCell {
    Clause atoms;
    bool degenerate = false;
};
std::vector<RefinedCell> refine_cell(SignVector v, const std::vector<Point2>& centers, double rho);

std::vector<FreeSpaceMatrix> enumerate_feasible_matrices(const Curve& q, double rho, int ts,
                                                         std::size_t cap = 1000000);

// ---- query programs consumed by the multilevel index -------------------------

struct PlanCell {
    SignVector mask = 0;
    Clause range;                      // exact: every atom with the cell's polarity
    std::vector<RefinedCell> pieces;   // constant-complexity decomposition (disk columns)
};

struct PlanLevel {
    std::vector<Atom> atoms;
    std::vector<PlanCell> cells;
};

// A query run level by level: each stored point's sign vector at level k is a
// label, `step` advances a per-path state (-1 rejects) and `accept` decides
// at the end.
class QueryProgram {
  public:
    virtual ~QueryProgram() = default;
    virtual int levels() const = 0;
    virtual const PlanLevel& level(int k) const = 0;
    virtual long initial_state() const { return 0; }
    virtual long step(long state, int k, SignVector mask) const = 0;
    virtual bool accept(long state, const std::vector<SignVector>& masks) const = 0;
    // Whether a point whose mask matches no listed cell is always rejected.
    virtual bool closed_world() const = 0;
};

class QueryPlanDiscrete : public QueryProgram {
  public:
    QueryPlanDiscrete(const Curve& q, double rho, int ts, std::size_t cap = 1000000);

    int levels() const override { return ts_; }
    const PlanLevel& level(int k) const override { return levels_[k]; }
    long step(long state, int k, SignVector mask) const override;
    bool accept(long state, const std::vector<SignVector>&) const override { return state >= 0; }
    bool closed_world() const override { return true; }

    const Curve& query() const { return q_; }
    double rho() const { return rho_; }
    const std::vector<FreeSpaceMatrix>& matrices() const { return matrices_; }

  private:
    Curve q_;
    double rho_;
    int ts_;
    std::vector<FreeSpaceMatrix> matrices_;
    std::vector<PlanLevel> levels_;
    std::vector<std::map<SignVector, long>> trie_;
};

// ---- continuous t-point layout -----------------------------------------------

enum class ColumnKind : std::uint8_t { Hvep, Vvep, Hmp, Vmp, Start, End };

// entry is 1-based inside its group (6 for hvep/vvep, 9 for hmp, 8 for vmp).
// j is the input edge or vertex; k is the second input vertex of an hmp pair.
struct ColumnSpec {
    ColumnKind kind = ColumnKind::Start;
    int entry = 1;
    int j = 0, k = 0;
    bool padding = false;
    friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

std::vector<ColumnSpec> column_specs(int ts);
std::string to_string(const ColumnSpec& c);

struct TPointEmbedding {
    std::vector<Point2> coords;
    std::vector<std::string> diagnostics;
};

inline constexpr double kSentinel = 1e9;

TPointEmbedding curve_to_tpoint(const Curve& s, double rho, const std::vector<ColumnSpec>& specs);

// Query-side elementary ranges of one column; bit order matches hl_from_masks.
std::vector<Atom> column_atoms(const ColumnSpec& c, const Curve& q, double rho);

// High-level predicate values from per-column sign vectors.
HLAssignment hl_from_masks(const std::vector<ColumnSpec>& specs, const std::vector<SignVector>& masks, int tq,
                           int ts);

class ContinuousQueryPlan : public QueryProgram {
  public:
    ContinuousQueryPlan(const Curve& q, double rho, int ts);

    int levels() const override { return static_cast<int>(levels_.size()); }
    const PlanLevel& level(int k) const override { return levels_[k]; }
    long step(long state, int k, SignVector mask) const override;
    bool accept(long state, const std::vector<SignVector>& masks) const override;
    bool closed_world() const override { return false; }

    const std::vector<ColumnSpec>& specs() const { return specs_; }
    HLAssignment assignment(const std::vector<SignVector>& masks) const;

    struct Assignment {
        HLAssignment hl;
        std::vector<SignVector> masks;
    };
    // Explicit Cartesian product of the column cells, filtered; throws
    // ResourceError when the product exceeds cap.
    std::vector<Assignment> enumerate_assignments(std::size_t cap = 1000000) const;

  private:
    Curve q_;
    double rho_;
    int ts_;
    std::vector<ColumnSpec> specs_;
    std::vector<PlanLevel> levels_;
};

}  // namespace frq
