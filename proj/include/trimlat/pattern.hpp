#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "trimlat/lattice.hpp"

namespace trimlat {

// The set Gamma of penalized/removed sites. Either a periodic pattern
// (a set of residues of a cubic period lattice, canonical form) or an
// explicit finite site set valid inside a window.
class TrimPattern {
 public:
  enum class Kind { Periodic, Explicit };

  static TrimPattern periodic(int dim, std::int64_t period, std::vector<Site> cell_sites);
  static TrimPattern explicit_set(int dim, std::vector<Site> sites, BoxRegion window);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::int64_t period() const;                 // throws for explicit patterns
  const BoxRegion& window() const;             // throws for periodic patterns
  const std::vector<Site>& base_sites() const { return sites_; }

  // Membership. For explicit patterns, sites outside the window throw
  // std::out_of_range (membership there is undefined).
  bool contains(const Site& s) const;

  std::vector<Site> sites_in(const BoxRegion& box) const;

  struct DensityCheck {
    bool ok = false;
    std::optional<Site> violating_cell;  // first cell center with fewer than Q points
    std::int64_t min_count = 0;          // smallest per-cell count seen
    bool window_local = false;           // true when only window-contained cells were checked
  };

  // Verifies |Gamma ∩ open K-cell(zeta)| >= Q for cell centers zeta in K Z^d.
  // Periodic patterns are decided exactly for all of Z^d by checking one
  // lcm(period, K) period of cell centers. Explicit patterns check the cells
  // whose closed cell lies inside the pattern window (result flagged
  // window_local).
  DensityCheck check_relatively_dense(std::int64_t K, std::int64_t Q) const;

  // Runs the density check and stores (K, Q) on success; throws
  // std::invalid_argument on failure.
  void declare_density(std::int64_t K, std::int64_t Q);
  std::optional<std::int64_t> declared_k() const { return declared_k_; }
  std::optional<std::int64_t> declared_q() const { return declared_q_; }

  nlohmann::json to_json() const;
  static TrimPattern from_json(const nlohmann::json& j);

 private:
  TrimPattern() = default;
  Kind kind_ = Kind::Periodic;
  int dim_ = 1;
  std::int64_t period_ = 0;
  std::vector<Site> sites_;  // periodic: residues in [0,period)^d; explicit: the set
  std::optional<BoxRegion> window_;
  std::optional<std::int64_t> declared_k_, declared_q_;
};

}  // namespace trimlat
