#include "mimogan/common/rng.hpp"

namespace mimogan {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master);
  std::uint64_t i = 1;
  for (std::uint64_t p : path) {
    h = mix64(h ^ (p + 0x9e3779b97f4a7c15ULL * i));
    ++i;
  }
  return h;
}

}  // namespace mimogan
