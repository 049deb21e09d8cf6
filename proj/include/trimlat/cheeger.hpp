#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "trimlat/lattice.hpp"
#include "trimlat/pattern.hpp"

namespace trimlat {

enum class BetaMode {
  Trimmed,    // beta_A(Gamma) = |dA| / |A|, requires A disjoint from Gamma
  Penalized,  // beta_A(t) = (|dA| + t |A ∩ Gamma|) / |A|, any finite A
};

// Boundary edges are counted against all of Z^d, not clipped to a window.
double beta_of_set(const std::vector<Site>& a, int dim, const TrimPattern& gamma, BetaMode mode,
                   double t = 0.0);

struct CheegerResult {
  double beta = 0.0;
  std::vector<Site> minimizer;
  std::uint64_t sets_enumerated = 0;
  bool exhaustive = false;  // every connected subset of the window was visited
  BetaMode mode = BetaMode::Trimmed;
  double t = 0.0;
  nlohmann::json to_json() const;
};

// Window minimum of beta over nonempty subsets of the window (admissible
// sites only in Trimmed mode). Only connected subsets are enumerated: the
// form and the cardinality are additive over connected components, so the
// minimum over all subsets is attained on a connected one. Without a
// cardinality cap the admissible count is limited to 24 sites; with a cap,
// to 64.
CheegerResult beta_bruteforce(const BoxRegion& window, const TrimPattern& gamma, BetaMode mode,
                              double t = 0.0, std::optional<int> max_cardinality = std::nullopt);

// |dA| >= K_*^(-d) |A| for finite A disjoint from a (K, >=1)-dense Gamma.
struct IsoperimetricCheck {
  std::int64_t boundary_size = 0;
  double floor = 0.0;  // |A| / K_*^d
  bool ok = false;
};

IsoperimetricCheck isoperimetric_check(const std::vector<Site>& a, int dim,
                                       const TrimPattern& gamma, std::int64_t K);

}  // namespace trimlat
