#pragma once

#include <cstdint>
#include <vector>

#include "frq/frechet.hpp"

namespace frq {

// Truth values of the high-level predicates for a curve pair, 0-based:
//   hvep(i,j): query vertex q_i near input edge s_j s_{j+1}      i<tq, j<ts-1
//   vvep(i,j): input vertex s_j near query edge q_i q_{i+1}       i<tq-1, j<ts
//   hmp(i,j,k): s_j then s_k along directed line of q_i q_{i+1}  i<tq-1, j<k<ts
//   vmp(i,k,j): q_i then q_k along directed line of s_j s_{j+1}  i<k<tq, j<ts-1
struct HLAssignment {
    int tq = 0, ts = 0;
    bool p1 = false, p2 = false;
    std::vector<std::uint8_t> hvep_, vvep_, hmp_, vmp_;

    HLAssignment() = default;
    HLAssignment(int tq_, int ts_);

    std::uint8_t& hvep(int i, int j) { return hvep_[i * (ts - 1) + j]; }
    std::uint8_t& vvep(int i, int j) { return vvep_[i * ts + j]; }
    std::uint8_t& hmp(int i, int j, int k) { return hmp_[(i * ts + j) * ts + k]; }
    std::uint8_t& vmp(int i, int k, int j) { return vmp_[(i * tq + k) * (ts - 1) + j]; }
    bool hvep(int i, int j) const { return hvep_[i * (ts - 1) + j]; }
    bool vvep(int i, int j) const { return vvep_[i * ts + j]; }
    bool hmp(int i, int j, int k) const { return hmp_[(i * ts + j) * ts + k]; }
    bool vmp(int i, int k, int j) const { return vmp_[(i * tq + k) * (ts - 1) + j]; }

    friend bool operator==(const HLAssignment&, const HLAssignment&) = default;
};

// Direct geometric evaluation (point-segment distances, ordered chords).
HLAssignment eval_hl(const Curve& q, const Curve& s, double rho);

// Whether some p1 before p2 on the line through e_from->e_to (directed) has
// |p1-a1| <= rho and |p2-a2| <= rho. A zero-length edge degenerates to its
// single point.
bool monotone_direct(Point2 a1, Point2 a2, Point2 e_from, Point2 e_to, double rho);

struct VertexEdgeBits {
    bool a = false, b = false, c = false, combined = false;
};
VertexEdgeBits ll_vertex_edge(Point2 a1, Point2 b1, Point2 b2, double rho);

struct MonotonicityBits {
    bool d = false, e = false, f = false, g = false, h = false, i = false, combined = false;
};
MonotonicityBits ll_monotonicity(Point2 a1, Point2 a2, Point2 e_from, Point2 e_to, double rho);

// Lemma-level evaluation through the low-level bits.
HLAssignment eval_hl_lowlevel(const Curve& q, const Curve& s, double rho);

// Reach-from-below/left dynamic program over the cell grid.
bool feasible_cell_sequence(const HLAssignment& h, int tq, int ts);

bool continuous_decide_predicates(const Curve& q, const Curve& s, double rho);

}  // namespace frq
