#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "trimlat/lattice.hpp"

namespace trimlat {

// Background on-site potential V. Periodic potentials store one value per
// residue of the period cell (lexicographic order over [0, period)^d).
class Potential {
 public:
  enum class Kind { Zero, Periodic, Explicit, Callback };

  static Potential zero(int dim = 1);
  static Potential periodic(int dim, std::int64_t period, std::vector<double> cell_values);
  static Potential explicit_map(int dim, std::unordered_map<Site, double, SiteHash> values,
                                BoxRegion window);
  static Potential callback(int dim, std::function<double(const Site&)> fn);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double operator()(const Site& s) const;

  double sup(const BoxRegion& window) const;
  double inf(const BoxRegion& window) const;
  // sup - inf. For periodic potentials this is the exact global spread
  // (independent of the window); otherwise it is evaluated over the window.
  double spread(const BoxRegion& window) const;
  double global_spread() const;  // Zero/Periodic only; throws otherwise

  nlohmann::json to_json() const;  // Callback kind is not serializable
  static Potential from_json(const nlohmann::json& j);

 private:
  Kind kind_ = Kind::Zero;
  int dim_ = 1;
  std::int64_t period_ = 0;
  std::vector<double> cell_values_;
  std::unordered_map<Site, double, SiteHash> map_;
  std::optional<BoxRegion> window_;
  std::function<double(const Site&)> fn_;
};

// Y = 2d + 1 + spread(V).
double y_const(int d, double spread_v);

}  // namespace trimlat
