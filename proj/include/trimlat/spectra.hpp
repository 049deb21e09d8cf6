#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trimlat/operator.hpp"

namespace trimlat {

struct SolverInfo {
  std::string method;      // "dense", "lanczos", "power"
  std::int64_t iterations = 0;
  double residual = 0.0;
};

// Smallest eigenvalue. Dense symmetric eigendecomposition for n <= 512,
// otherwise restarted Lanczos (all-ones start, full reorthogonalization,
// Ritz-vector restarts) to absolute tolerance tol.
double ground_energy(const LatticeOperator& op, double tol = 1e-10, SolverInfo* info = nullptr);
double ground_energy_dense(const LatticeOperator& op);
double ground_energy_lanczos(const LatticeOperator& op, double tol = 1e-10,
                             SolverInfo* info = nullptr);

// Ground state of a full-mode box operator via power iteration on the
// nonnegative companion matrix. The returned vector is normalized, strictly
// positive, and checked against the propagation inequalities
//   psi(x) >= Y^-m * sum_{|x-y|_1 <= m} psi(y)   (m = 1, 2)
// and the uniform floor min psi >= Y^(-dL).
struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd psi;
  double min_psi = 0.0;
  double ucp_floor = 0.0;          // Y^(-dL)
  bool ucp_ok = false;             // min_psi >= ucp_floor
  double graph_margin = 0.0;       // min over x,m of psi(x) - Y^-m * local sum
  bool graph_ok = false;           // graph_margin >= 0
  SolverInfo info;
};

GroundState ground_state_pf(const LatticeOperator& op, double tol = 1e-12,
                            std::int64_t max_iter = 2000000);

// Exact count of eigenvalues in the closed interval [a, b] by Sylvester
// inertia of LDL^T factorizations (Bunch-Kaufman pivoting) at the widened
// shifts a - eps and b + eps, eps = 1e-12 * max(1, |H|_inf). Zero pivots
// trigger an outward shift perturbation, recorded in the metadata.
struct CountMeta {
  double eps = 0.0;
  double shift_lo = 0.0, shift_hi = 0.0;
  int perturbations = 0;
};

std::int64_t count_eigs(const LatticeOperator& op, double a, double b, CountMeta* meta = nullptr);

// Ground energy of H + t*chi_Gamma along a t-grid, with forward-difference
// slopes. Monotone (nondecreasing) by construction; a violation beyond
// solver slack indicates a solver failure and throws.
struct EnergyCurve {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> fd_slope;  // size n-1, slope of [t_i, t_i+1]
  std::vector<double> gap;       // E_1 - E_0 per grid point; empty on the Lanczos path
  int d = 1;
  std::optional<std::int64_t> K, Q;  // from the pattern's declared density
  double spread_v = 0.0;
  double solver_tol = 1e-10;

  // Q (Y + t)^(-2dK) per grid point; empty when (K, Q) are undeclared.
  std::vector<double> derivative_bounds() const;
  void write_csv(std::ostream& os, bool timestamp = true) const;
};

EnergyCurve energy_curve(const BoxRegion& box, const Potential& v, const TrimPattern& gamma,
                         const std::vector<double>& t_grid, double tol = 1e-10);

// Default grid {0, 0.05, ..., t_max}.
std::vector<double> default_t_grid(double t_max, double dt = 0.05);

// Checks the forward-difference slopes of a curve against Q (Y+t)^(-2dK).
// Guaranteed form: slope over [t_i, t_i+1] >= bound(t_i+1) - tol (mean value
// theorem, bound decreasing). Also reported: the left-endpoint comparison
// with curvature slack dt / gap.
struct DerivativeCheckRow {
  double t_left = 0.0, t_right = 0.0;
  double slope = 0.0;
  double bound_right = 0.0;
  double margin = 0.0;  // slope - bound_right
  bool ok = false;
  double bound_left = 0.0;
  double slack_left = 0.0;  // solver + curvature slack
  bool ok_left = true;      // trivially true when the gap is unavailable
};

struct DerivativeReport {
  std::vector<DerivativeCheckRow> rows;
  bool all_ok = false;
  double tol = 0.0;
  void write_csv(std::ostream& os, bool timestamp = true) const;
};

DerivativeReport derivative_check(const EnergyCurve& curve, std::int64_t Q, std::int64_t K,
                                  double tol = 1e-9);

}  // namespace trimlat
