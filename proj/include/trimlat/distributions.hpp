#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "trimlat/rng.hpp"

namespace trimlat {

// Single-site disorder distribution with support in [lo, hi], hi >= 0.
// The random kinds are nondegenerate by construction; point_mass is a
// degenerate mode for deterministic tests.
class SiteDistribution {
 public:
  enum class Kind { Uniform, TwoPoint, Discrete, BetaLike, PointMass };

  static SiteDistribution uniform(double a, double b);
  static SiteDistribution two_point(double v0, double v1, double p);  // P(v0) = p
  // Atoms as (value, probability); probabilities must sum to 1.
  static SiteDistribution discrete(std::vector<std::pair<double, double>> atoms);
  // Density x^(alpha-1) (1-x)^(beta-1) / B(alpha,beta) scaled to [0, scale];
  // alpha, beta >= 1 (unimodal).
  static SiteDistribution beta_like(double alpha, double beta, double scale);
  static SiteDistribution point_mass(double v);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool atomic() const;
  bool degenerate() const { return kind_ == Kind::PointMass; }

  // Concentration function S(t) = sup_a mu([a, a+t]), t >= 0. Closed form
  // for uniform / two-point / discrete / point mass; for beta-like the
  // unimodal window maximum located by ternary search on the CDF.
  double concentration(double t) const;

  double cdf(double x) const;
  double quantile(double u) const;  // u in [0, 1)
  double sample(const SiteKeyedRng& rng, std::uint64_t stream, const Site& site) const;

  // Quadrature of f against the measure: sum w_i f(x_i). Continuous kinds use
  // the composite midpoint rule with n panels on [lo, hi]; atomic kinds
  // return their atoms exactly (n ignored).
  std::vector<std::pair<double, double>> quadrature(int n = 512) const;
  // h/2 * tv for continuous kinds (midpoint error for a BV integrand), 0 for
  // atomic kinds.
  double quadrature_error(int n, double tv) const;

  nlohmann::json to_json() const;
  static SiteDistribution from_json(const nlohmann::json& j);

 private:
  SiteDistribution() = default;
  Kind kind_ = Kind::Uniform;
  double lo_ = 0.0, hi_ = 1.0;
  double p_ = 0.5;                                  // two-point
  double alpha_ = 1.0, beta_ = 1.0;                 // beta-like
  std::vector<std::pair<double, double>> atoms_;    // discrete
};

// Regularized incomplete beta function I_x(a, b) (continued fraction).
double reg_inc_beta(double a, double b, double x);

}  // namespace trimlat
