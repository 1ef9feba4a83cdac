#include "faces/rng.hpp"

#include <cmath>

namespace faces {

std::uint64_t mix_seed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ull;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ull;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebull;
  return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  // FNV-1a over the tag, then splitmix rounds folding in master and index.
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : tag) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return mix_seed(mix_seed(master ^ hash) ^ mix_seed(index));
}

}  // namespace faces
