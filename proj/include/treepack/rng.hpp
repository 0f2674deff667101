#pragma once

#include <cstdint>

namespace treepack {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)) ^ b);
}

// Small deterministic generator for tests and stream synthesis.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  bool chance(std::uint64_t num, std::uint64_t den) {
    return (unsigned __int128)next() * den < ((unsigned __int128)num << 64);
  }

 private:
  std::uint64_t state_;
};

// Exact Bernoulli(num/den) from a fixed 64-bit draw: accepts iff
// u < 2^64 * num/den, so keyed draws are replayable.
inline bool coin_accept(std::uint64_t u, std::uint64_t num, std::uint64_t den) {
  if (num >= den) return true;
  return (unsigned __int128)u * den < ((unsigned __int128)num << 64);
}

}  // namespace treepack
