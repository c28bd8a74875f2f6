#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frq/geometry.hpp"

namespace frq {

struct Curve {
    std::string id;
    std::vector<Point2> vertices;
    std::size_t size() const { return vertices.size(); }
    const Point2& operator[](std::size_t i) const { return vertices[i]; }
};

// Row i belongs to query vertex q_i, column j to input vertex s_j.
struct FreeSpaceMatrix {
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> bits;

    FreeSpaceMatrix() = default;
    FreeSpaceMatrix(int r, int c) : rows(r), cols(c), bits(static_cast<std::size_t>(r) * c, 0) {}
    bool at(int i, int j) const { return bits[static_cast<std::size_t>(i) * cols + j] != 0; }
    void set(int i, int j, bool v) { bits[static_cast<std::size_t>(i) * cols + j] = v ? 1 : 0; }
    bool column_bit(int j, int i) const { return at(i, j); }
    friend bool operator==(const FreeSpaceMatrix&, const FreeSpaceMatrix&) = default;
    friend auto operator<=>(const FreeSpaceMatrix&, const FreeSpaceMatrix&) = default;
};

FreeSpaceMatrix free_space_matrix(const Curve& q, const Curve& s, double rho);
bool matrix_feasible(const FreeSpaceMatrix& m);
bool discrete_decide(const Curve& q, const Curve& s, double rho);
double discrete_value(const Curve& q, const Curve& s);

// Free-space interval propagation; exact up to kEps.
bool alt_godau_decide(const Curve& q, const Curve& s, double rho);

// Parameters t in [0,1] with |a + t(b-a) - p| <= rho, as [lo,hi]; lo > hi if empty.
struct Interval {
    double lo = 1, hi = 0;
    bool empty() const { return lo > hi; }
};
Interval free_interval(Point2 p, Point2 a, Point2 b, double rho);

}  // namespace frq
