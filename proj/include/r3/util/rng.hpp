#pragma once

#include <cstdint>
#include <string_view>

namespace r3 {

// Deterministic PRNG with named sub-streams. All experiment randomness flows
// from one top-level seed through fork(), so runs are reproducible regardless
// of evaluation order or platform (no std::*_distribution involved).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // decorrelate trivially related seeds
    next();
    next();
  }

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    return n == 0 ? 0 : static_cast<std::uint64_t>(
               (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Independent child stream for a named purpose (task sampling, rollouts, ...).
  Rng fork(std::string_view name) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the name
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    return Rng(next() ^ h);
  }

  Rng fork(std::uint64_t index) {
    return Rng(next() ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace r3
