#pragma once

#include <cstdint>

#include "trimlat/lattice.hpp"

namespace trimlat {

// SplitMix64 finalizer (Steele-Lea-Flood mixing constants).
std::uint64_t mix64(std::uint64_t z);

// Counter-based generator keyed by (seed, stream, site). A draw depends only
// on its key, never on call order or box shape, so disorder realizations
// agree on shared sites across nested boxes. The stream index separates
// Monte Carlo samples.
class SiteKeyedRng {
 public:
  explicit SiteKeyedRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits(std::uint64_t stream, const Site& site) const;
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, const Site& site) const;

 private:
  std::uint64_t seed_;
};

}  // namespace trimlat
