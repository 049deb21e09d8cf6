#include "trimlat/rng.hpp"

namespace trimlat {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t SiteKeyedRng::bits(std::uint64_t stream, const Site& site) const {
  std::uint64_t h = mix64(seed_ ^ 0x9E3779B97F4A7C15ull);
  h = mix64(h ^ stream);
  h = mix64(h ^ static_cast<std::uint64_t>(site.size()));
  for (std::int64_t c : site) h = mix64(h ^ static_cast<std::uint64_t>(c));
  return h;
}

double SiteKeyedRng::uniform(std::uint64_t stream, const Site& site) const {
  return static_cast<double>(bits(stream, site) >> 11) * 0x1.0p-53;
}

}  // namespace trimlat
