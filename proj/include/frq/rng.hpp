#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace frq {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 with a portable double mapping (the standard distributions are
// implementation-defined, which would break byte-identical outputs across
// toolchains). Sub-streams are derived as splitmix64(seed ^ fnv1a(name)).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : g_(splitmix64(seed)), seed_(seed) {}

    Rng stream(std::string_view name) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
        return Rng(splitmix64(seed_ ^ h));
    }
    std::uint64_t next() { return g_(); }
    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }
    std::uint64_t seed() const { return seed_; }

  private:
    std::mt19937_64 g_;
    std::uint64_t seed_;
};

}  // namespace frq
