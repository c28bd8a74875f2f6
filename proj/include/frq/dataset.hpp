#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frq/frechet.hpp"
#include "frq/index.hpp"
#include "frq/rng.hpp"

namespace frq {

// Curve files: one curve per line, `id x1 y1 x2 y2 ...`, blank lines and lines
// starting with '#' ignored. Coordinates are written with 17 significant digits.
std::vector<Curve> parse_curves(const std::string& text);
std::string format_curves(const std::vector<Curve>& curves);
std::vector<Curve> read_curves(const std::string& path);
void write_curves(const std::string& path, const std::vector<Curve>& curves);

// Manifest: `key=value` lines in insertion order.
using Manifest = std::vector<std::pair<std::string, std::string>>;
std::string format_manifest(const Manifest& m);
Manifest parse_manifest(const std::string& text);
std::string manifest_get(const Manifest& m, const std::string& key, const std::string& fallback = "");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

std::vector<Curve> random_curves(Rng& rng, std::size_t n, int t, const std::string& prefix, double lo = 0,
                                 double hi = 1);

// Brings every curve to exactly t vertices and returns one note per padded
// curve; longer curves are rejected. Discrete padding repeats the last vertex.
// With split_edges the longest edge is halved instead, which keeps the curve's
// trace (and so its continuous distances) and avoids zero-length edges.
std::vector<std::string> pad_curves(std::vector<Curve>& curves, int t, bool split_edges = false);

enum class DistanceKind { Discrete, Continuous };

MultilevelIndex build_discrete_index(std::vector<Curve> curves, IndexParams params = {});
MultilevelIndex build_continuous_index(std::vector<Curve> curves, double rho, IndexParams params = {});

// Query an index built by one of the builders above. Continuous indexes refuse
// a rho different from the one bound at build time.
std::vector<std::uint32_t> query_index(const MultilevelIndex& ix, const Curve& q, double rho,
                                       QueryStats* st = nullptr);

// Brute-force scans used as oracles by the CLI and the acceptance suite.
std::vector<std::uint32_t> brute_force(const std::vector<Curve>& curves, const Curve& q, double rho,
                                       DistanceKind kind);

}  // namespace frq
