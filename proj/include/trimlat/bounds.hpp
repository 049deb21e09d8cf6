#pragma once

#include <cstdint>
#include <string>

namespace trimlat {

// Parameters of a trimming geometry: dimension d, cell size K, per-cell
// count Q, and the potential spread sup V - inf V.
struct ModelParams {
  int d = 1;
  std::int64_t K = 2;
  std::int64_t Q = 1;
  double spr_v = 0.0;

  void validate() const;  // d>=1, K>=2, 1<=Q<=K^d, spr_v>=0
  double y() const;       // 2d + 1 + spr_v
};

// Value in scientific decomposition mantissa * 10^exp10, mantissa in [1, 10).
// Used to report results whose magnitude leaves the double range.
struct ScaledValue {
  double mantissa = 0.0;
  std::int64_t exp10 = 0;
  double as_double() const;
  std::string str() const;
};

ScaledValue scaled_from_log10(double log10_value);

// Lower bound for the trimming gap E_Gamma - E_0:  Q / ((2dK-1) Y^(2dK-1)).
double delta_lower(const ModelParams& p);
ScaledValue delta_lower_scaled(const ModelParams& p);

// Penalized version, monotone in t with limit delta_lower:
//   Q/(2dK-1) * (Y^-(2dK-1) - (Y+t)^-(2dK-1)).
double delta_t_lower(const ModelParams& p, double t);

// Isoperimetric route, free Laplacian: E >= 1 / (4d K_*^(2d)).
double cheeger_free_lower(int d, std::int64_t K);

// Isoperimetric route for the penalized operator, valid for t >= 2d-1:
//   1 / ((6d-1) K_*^(2d)).
double t_large_lower(int d, std::int64_t K, double t);

// Penalized lower bound valid for all t >= 0: t / (4d K_*^(2d) (t+4d) + 1).
double combined_t_lower(int d, std::int64_t K, double t);

// Two-sided control of the penalized gap delta(t) by the trimmed gap delta:
//   upper    = 2d + spr_v
//   lower_15 = t/(t + 6d + 2 spr_v) * delta
//   lower_210= delta * t / (t + 4d + delta + spr_v)   (sharper)
struct Sandwich {
  double lower_15 = 0.0;
  double lower_210 = 0.0;
  double upper = 0.0;
};

Sandwich sandwich_t(const ModelParams& p, double t, double delta_measured);

// Analytic lower bound for the coupling constant in the projection
// inequality at energy E1 (valid when E0 < E1 < E0 + delta_lower):
//   s0       = Y * ((1 - (E1-E0)/delta_lower)^(-1/(2dK-1)) - 1)
//   Z        = (2dK+1)/(2dK) * (s0 / Y)
//   kappa_lb = Q/(2dK+1) * ((1+Z) Y)^(-2dK)
struct KappaBound {
  double s0 = 0.0;
  double z = 0.0;
  double kappa_lb = 0.0;
  double witness_s = 0.0;  // (2dK+1)/(2dK) * s0
};

KappaBound kappa_lower(const ModelParams& p, double e0, double e1);

}  // namespace trimlat
