#ifndef TSGEVAL_RANDOM_HPP_
#define TSGEVAL_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tsgeval {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mixes a master seed with a path of integers (experiment id, point index,
// purpose tag). The result depends only on the inputs, never on call order.
inline Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace tsgeval

#endif  // TSGEVAL_RANDOM_HPP_
