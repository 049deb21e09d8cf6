#include "trimlat/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "trimlat/io.hpp"
#include "trimlat/lattice.hpp"

namespace trimlat {

namespace {

// K^d with saturation; only used to range-check Q
std::int64_t cell_volume_sat(std::int64_t k, int d) {
  std::int64_t v = 1;
  for (int i = 0; i < d; ++i) {
    if (v > (std::int64_t{1} << 62) / k) return std::int64_t{1} << 62;
    v *= k;
  }
  return v;
}

}  // namespace

void ModelParams::validate() const {
  if (d < 1) throw std::invalid_argument("ModelParams: dimension must be >= 1");
  if (K < 2) throw std::invalid_argument("ModelParams: K must be >= 2");
  if (Q < 1 || Q > cell_volume_sat(K, d)) {
    throw std::invalid_argument("ModelParams: Q must lie in [1, K^d]");
  }
  if (spr_v < 0.0) throw std::invalid_argument("ModelParams: negative potential spread");
}

double ModelParams::y() const { return 2.0 * d + 1.0 + spr_v; }

double ScaledValue::as_double() const {
  return mantissa * std::pow(10.0, static_cast<double>(exp10));
}

std::string ScaledValue::str() const { return fmt_real(mantissa) + "e" + std::to_string(exp10); }

ScaledValue scaled_from_log10(double log10_value) {
  ScaledValue s;
  s.exp10 = static_cast<std::int64_t>(std::floor(log10_value));
  s.mantissa = std::pow(10.0, log10_value - static_cast<double>(s.exp10));
  if (s.mantissa >= 10.0) {
    s.mantissa /= 10.0;
    ++s.exp10;
  }
  return s;
}

double delta_lower(const ModelParams& p) {
  p.validate();
  const double n = 2.0 * p.d * static_cast<double>(p.K) - 1.0;
  return static_cast<double>(p.Q) / (n * std::pow(p.y(), n));
}

ScaledValue delta_lower_scaled(const ModelParams& p) {
  p.validate();
  const double n = 2.0 * p.d * static_cast<double>(p.K) - 1.0;
  return scaled_from_log10(std::log10(static_cast<double>(p.Q)) - std::log10(n) -
                           n * std::log10(p.y()));
}

double delta_t_lower(const ModelParams& p, double t) {
  p.validate();
  if (t < 0.0) throw std::invalid_argument("delta_t_lower: negative t");
  const double n = 2.0 * p.d * static_cast<double>(p.K) - 1.0;
  const double y = p.y();
  // Y^-n - (Y+t)^-n = Y^-n * (1 - exp(-n log1p(t/Y))), stable near t = 0
  return static_cast<double>(p.Q) / n * std::pow(y, -n) * -std::expm1(-n * std::log1p(t / y));
}

namespace {

double cell_side_power(int d, std::int64_t k) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::pow(static_cast<double>(k_star(k)), 2.0 * d);
}

}  // namespace

double cheeger_free_lower(int d, std::int64_t K) { return 1.0 / (4.0 * d * cell_side_power(d, K)); }

double t_large_lower(int d, std::int64_t K, double t) {
  double pw = cell_side_power(d, K);
  if (t < 2.0 * d - 1.0) throw std::invalid_argument("t_large_lower: requires t >= 2d - 1");
  return 1.0 / ((6.0 * d - 1.0) * pw);
}

double combined_t_lower(int d, std::int64_t K, double t) {
  double pw = cell_side_power(d, K);
  if (t < 0.0) throw std::invalid_argument("combined_t_lower: negative t");
  return t / (4.0 * d * pw * (t + 4.0 * d) + 1.0);
}

Sandwich sandwich_t(const ModelParams& p, double t, double delta_measured) {
  p.validate();
  if (t < 0.0) throw std::invalid_argument("sandwich_t: negative t");
  if (delta_measured < 0.0) throw std::invalid_argument("sandwich_t: negative trimmed gap");
  Sandwich s;
  s.upper = 2.0 * p.d + p.spr_v;
  s.lower_15 = t / (t + 6.0 * p.d + 2.0 * p.spr_v) * delta_measured;
  s.lower_210 = delta_measured * t / (t + 4.0 * p.d + delta_measured + p.spr_v);
  return s;
}

KappaBound kappa_lower(const ModelParams& p, double e0, double e1) {
  p.validate();
  const double dl = delta_lower(p);
  if (!(e1 > e0) || !(e1 < e0 + dl)) {
    throw std::invalid_argument("kappa_lower: requires E0 < E1 < E0 + delta_lower");
  }
  const double n = 2.0 * p.d * static_cast<double>(p.K);
  const double y = p.y();
  const double w = std::pow(1.0 - (e1 - e0) / dl, -1.0 / (n - 1.0));
  KappaBound kb;
  kb.s0 = y * (w - 1.0);
  kb.z = (n + 1.0) / n * (w - 1.0);
  kb.kappa_lb = static_cast<double>(p.Q) / (n + 1.0) * std::pow((1.0 + kb.z) * y, -n);
  kb.witness_s = (n + 1.0) / n * kb.s0;
  return kb;
}

}  // namespace trimlat
