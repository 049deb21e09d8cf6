#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "trimlat/bounds.hpp"
#include "trimlat/distributions.hpp"
#include "trimlat/operator.hpp"
#include "trimlat/spectra.hpp"

namespace trimlat {

// Random operator H0 + lambda * sum_{z in Gamma} omega_z chi_z with
// H0 = -Laplacian + V0 and iid omega with the given distribution.
struct AndersonModel {
  int d = 1;
  Potential v0 = Potential::zero();
  TrimPattern gamma = TrimPattern::periodic(1, 2, {{0}});
  double lambda = 1.0;
  SiteDistribution dist = SiteDistribution::uniform(0.0, 1.0);

  double m_bound() const { return dist.hi(); }  // sup supp
  // lambda > 0, supp in [0, M], dims consistent; degenerate dist only via
  // the explicit point-mass test mode.
  void validate() const;
  ModelParams params(const BoxRegion& box) const;  // from declared (K,Q) + spread
};

// Disorder values on the Gamma sites of the box, keyed by (seed, sample, site).
std::vector<double> disorder_on_box(const AndersonModel& m, const BoxRegion& box,
                                    std::uint64_t seed, std::uint64_t sample_index);

// One realization as a box operator (full mode, diagonal 2d + V0 + lambda*omega*chi_Gamma).
LatticeOperator sample(const AndersonModel& m, const BoxRegion& box, std::uint64_t seed,
                       std::uint64_t sample_index = 0);

// Numeric coupling constant at energy E1 from the penalized base operator on
// the box: max over the s-grid of (E(s) - E1)/s where E(s) > E1. The
// finite-volume value dominates the infinite-volume one, so the projection
// inequality on this box holds with it.
struct KappaScan {
  double kappa = 0.0;
  double s_at = 0.0;
  std::vector<std::pair<double, double>> table;  // (s, E(s))
};

KappaScan kappa_scan(const AndersonModel& m, const BoxRegion& box, double e1, int n_grid = 60,
                     double s_lo = 1e-2, double s_hi = 1e3);

enum class KappaMode { Analytic, Numeric };

// Averaged eigenvalue count in I over disorder samples vs
//   8 kappa^-1 S(lambda^-1 |I|) |Gamma ∩ box|.
struct WegnerReport {
  double e1 = 0.0;
  std::pair<double, double> interval{0.0, 0.0};
  int n_samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double bound_rhs = 0.0;
  double kappa = 0.0;
  std::string kappa_mode;
  double s_value = 0.0;  // S(lambda^-1 |I|)
  std::int64_t gamma_count = 0;
  double e_empty_box = 0.0;    // ground energy of H0 on the box
  double e_trimmed_box = 0.0;  // trimmed H0 on the box (proxy upper anchor for E1)
  double certified_ceiling = 0.0;  // e_empty_box + delta_lower
  std::string e1_validity;         // "certified" or "proxy"
  std::vector<std::pair<int, double>> running_mean;  // convergence table
  bool pass = false;
  void write_csv(std::ostream& os, bool timestamp = true) const;  // per-checkpoint rows
  nlohmann::json summary_json() const;
};

WegnerReport wegner_experiment(const AndersonModel& m, const BoxRegion& box, double e1,
                               std::pair<double, double> interval, int n_samples,
                               std::uint64_t seed, KappaMode mode = KappaMode::Numeric);

// Smallest eigenvalue of P chi_Gamma P on ran P, P the spectral projection
// of a sample up to E1, compared with the coupling lower bound.
struct PvpSample {
  std::uint64_t index = 0;
  int rank = 0;
  double min_eig = 0.0;  // NaN when rank = 0
  bool ok = true;
};

struct PvpReport {
  double e1 = 0.0;
  double kappa_lb = 0.0;
  std::string kappa_mode;
  int n_samples = 0;
  int nonvacuous = 0;
  int violations = 0;
  double min_eig_overall = 0.0;  // over nonvacuous samples
  std::vector<PvpSample> samples;
  bool pass = false;
  void write_csv(std::ostream& os, bool timestamp = true) const;
};

PvpReport pvp_check(const AndersonModel& m, const BoxRegion& box, double e0_ref, double e1,
                    int n_samples, std::uint64_t seed, KappaMode mode = KappaMode::Analytic,
                    double tol = 1e-8);

// One-site spectral averaging: all omega frozen except at the chosen site,
// integral of <delta_z, chi_I delta_z> d mu over that site's distribution vs
// 8 S(lambda^-1 |I|).
struct SpecAvgReport {
  Site site;
  std::pair<double, double> interval{0.0, 0.0};
  double integral = 0.0;
  double bound = 0.0;
  double error_term = 0.0;  // grid TV estimate based; 0 for atomic kinds
  double tv_grid = 0.0;
  int nodes = 0;
  bool pass = false;
};

SpecAvgReport spectral_averaging_check(const AndersonModel& m, const BoxRegion& box,
                                       const Site& zeta, std::pair<double, double> interval,
                                       int nodes = 512, std::uint64_t seed = 1,
                                       std::uint64_t sample_index = 0);

// Ground-energy statistics across box sizes; medians are pathwise coupled
// (site-keyed draws), so they cannot increase with L.
struct GsmcRow {
  double L = 0.0;
  std::size_t n_sites = 0;
  double base_energy = 0.0;  // disorder-free ground energy on the box
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0, mean = 0.0;
};

struct GsmcReport {
  std::vector<GsmcRow> rows;
  int n_samples = 0;
  double e0_extrapolated = 0.0;  // Richardson L^-2 extrapolation of base energies
  bool medians_monotone = false;
  double min_overall = 0.0;
  bool min_above_base = false;  // min_overall >= largest-box base energy
  void write_csv(std::ostream& os, bool timestamp = true) const;
};

GsmcReport ground_energy_mc(const AndersonModel& m, const std::vector<double>& l_list,
                            int n_samples, std::uint64_t seed);

}  // namespace trimlat
