#pragma once

#include <cstdint>

namespace etkin {

// Deterministic 64-bit generator (SplitMix64). Every draw an artifact depends
// on goes through this engine so that outputs are identical across platforms,
// runs and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Stable per-stream seed derivation: feeds master and stream indices through
// the generator so derived streams are decorrelated from each other and from
// the master stream. Used to give every benchmark problem its own seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  SplitMix64 g(master);
  SplitMix64 ga(g.next() ^ (a * 0xD1342543DE82EF95ull + 0x9E3779B97F4A7C15ull));
  SplitMix64 gb(ga.next() ^ (b * 0x2545F4914F6CDD1Dull + 0xBF58476D1CE4E5B9ull));
  return gb.next();
}

}  // namespace etkin
