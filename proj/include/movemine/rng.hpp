#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace movemine {

// splitmix64 finalizer, used to derive independent sub-stream seeds so that
// per-observation / per-fold / per-tree randomness does not depend on the
// order work is scheduled in.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  uint64_t s = mix64(base ^ 0xa0761d6478bd642fULL);
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  s = mix64(s ^ c);
  return s;
}

// Sampling helpers on top of mt19937_64. The std:: distributions are
// implementation-defined; these are not, so generated streams are stable
// across standard libraries.

inline double rand01(std::mt19937_64& rng) {  // [0, 1)
  return double(rng() >> 11) * 0x1.0p-53;
}

inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {  // [0, n)
  return uint64_t((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline int64_t uniform_int(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + int64_t(uniform_below(rng, uint64_t(hi - lo + 1)));
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * rand01(rng);
}

template <class T>
void shuffle_vec(std::mt19937_64& rng, std::vector<T>& v) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = size_t(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace movemine
