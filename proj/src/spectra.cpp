#include "trimlat/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <lapacke.h>

#include "trimlat/io.hpp"

namespace trimlat {

namespace {

constexpr std::size_t kDenseCrossover = 512;

double dense_smallest(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  return es.eigenvalues()(0);
}

}  // namespace

double ground_energy_dense(const LatticeOperator& op) {
  return dense_smallest(op.dense());
}

double ground_energy_lanczos(const LatticeOperator& op, double tol, SolverInfo* info) {
  if (tol <= 0.0) throw std::invalid_argument("ground_energy_lanczos: tolerance must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(op.size());
  const Eigen::Index m = std::min<Eigen::Index>(n, 96);
  const double scale = std::max(1.0, op.norm_inf());

  Eigen::VectorXd start = Eigen::VectorXd::Ones(n);
  start.normalize();
  std::int64_t matvecs = 0;
  double theta = 0.0;
  double res = 0.0;

  for (int restart = 0; restart < 800; ++restart) {
    Eigen::MatrixXd basis(n, m);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    Eigen::Index k = 0;
    Eigen::VectorXd v = start;
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    double b_prev = 0.0;
    for (; k < m; ++k) {
      basis.col(k) = v;
      Eigen::VectorXd w = op.apply(v);
      ++matvecs;
      alpha(k) = v.dot(w);
      w -= alpha(k) * v + b_prev * prev;
      // full reorthogonalization against the stored basis
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
      double b = w.norm();
      if (k + 1 < m) beta(k) = b;
      if (b < 1e-14 * scale) {
        ++k;
        break;
      }
      prev = v;
      b_prev = b;
      v = w / b;
    }

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      tri(i, i) = alpha(i);
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    theta = es.eigenvalues()(0);
    Eigen::VectorXd ritz = basis.leftCols(k) * es.eigenvectors().col(0);
    ritz.normalize();
    Eigen::VectorXd r = op.apply(ritz) - theta * ritz;
    ++matvecs;
    res = r.norm();
    double gap = (k > 1) ? std::max(es.eigenvalues()(1) - theta, tol) : tol;
    if (res * res <= tol * gap || res <= tol) {
      start = ritz;
      break;
    }
    start = ritz;
  }

  if (info) {
    info->method = "lanczos";
    info->iterations = matvecs;
    info->residual = res;
  }
  return theta;
}

double ground_energy(const LatticeOperator& op, double tol, SolverInfo* info) {
  if (op.size() <= kDenseCrossover) {
    double e = ground_energy_dense(op);
    if (info) {
      info->method = "dense";
      info->iterations = 0;
      info->residual = 0.0;
    }
    return e;
  }
  return ground_energy_lanczos(op, tol, info);
}

GroundState ground_state_pf(const LatticeOperator& op, double tol, std::int64_t max_iter) {
  auto pf = pf_companion(op);
  const Eigen::Index n = static_cast<Eigen::Index>(op.size());

  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  x.normalize();
  double theta = 0.0;
  double res = 0.0;
  std::int64_t it = 0;
  for (; it < max_iter; ++it) {
    Eigen::VectorXd y = pf.t_matrix * x;
    theta = x.dot(y);
    res = (y - theta * x).norm();
    double norm = y.norm();
    if (norm == 0.0) throw std::runtime_error("ground_state_pf: collapsed iterate");
    x = y / norm;
    if (res <= tol) break;
  }

  GroundState g;
  g.energy = pf.offset - theta;
  g.psi = x;
  g.min_psi = x.minCoeff();
  g.info.method = "power";
  g.info.iterations = it;
  g.info.residual = res;

  const int d = op.dim();
  const double y_val = 2.0 * d + 1.0 + pf.spread;
  g.ucp_floor = std::pow(y_val, -static_cast<double>(d) * op.box().side());
  g.ucp_ok = g.min_psi >= g.ucp_floor;

  // propagation inequality over l1 balls of radius 1 and 2
  const auto& sites = op.sites();
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int m = 1; m <= 2; ++m) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        std::int64_t dist = 0;
        for (int ax = 0; ax < d; ++ax) dist += std::llabs(sites[i][ax] - sites[j][ax]);
        if (dist <= m) sum += x(j);
      }
      margin = std::min(margin, x(i) - std::pow(y_val, -static_cast<double>(m)) * sum);
    }
  }
  g.graph_margin = margin;
  g.graph_ok = margin >= -1e-10;
  return g;
}

namespace {

// negative eigenvalue count of the shifted matrix via Bunch-Kaufman LDL^T
std::int64_t negative_inertia(Eigen::MatrixXd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  lapack_int ret = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (ret < 0) throw std::runtime_error("dsytrf: bad argument");
  if (ret > 0) throw std::runtime_error("dsytrf: singular block");  // caller perturbs the shift
  std::int64_t neg = 0;
  for (lapack_int i = 0; i < n; ++i) {
    if (ipiv[static_cast<std::size_t>(i)] > 0) {
      if (a(i, i) < 0.0) ++neg;
    } else {
      // 2x2 block at (i, i+1)
      double p = a(i, i), q = a(i + 1, i + 1), r = a(i + 1, i);
      double det = p * q - r * r;
      if (det < 0.0) {
        ++neg;  // one of each sign
      } else if (p + q < 0.0) {
        neg += 2;
      }
      ++i;
    }
  }
  return neg;
}

std::int64_t counted_below(const Eigen::MatrixXd& h, double shift, double eps, int* perturbations,
                           int direction) {
  double s = shift;
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd a = h;
    a.diagonal().array() -= s;
    try {
      return negative_inertia(std::move(a));
    } catch (const std::runtime_error&) {
      if (attempt >= 3) throw;
      s += direction * eps * (1 << attempt);
      if (perturbations) ++(*perturbations);
    }
  }
}

}  // namespace

std::int64_t count_eigs(const LatticeOperator& op, double a, double b, CountMeta* meta) {
  if (a > b) throw std::invalid_argument("count_eigs: empty interval");
  const double eps = 1e-12 * std::max(1.0, op.norm_inf());
  auto h = op.dense();
  int perturbations = 0;
  double lo = a - eps, hi = b + eps;
  std::int64_t below_hi = counted_below(h, hi, eps, &perturbations, +1);
  std::int64_t below_lo = counted_below(h, lo, eps, &perturbations, -1);
  if (meta) {
    meta->eps = eps;
    meta->shift_lo = lo;
    meta->shift_hi = hi;
    meta->perturbations = perturbations;
  }
  return below_hi - below_lo;
}

std::vector<double> EnergyCurve::derivative_bounds() const {
  if (!K || !Q) return {};
  const double y = 2.0 * d + 1.0 + spread_v;
  const double expn = 2.0 * d * static_cast<double>(*K);
  std::vector<double> out;
  out.reserve(t.size());
  for (double tv : t) {
    out.push_back(static_cast<double>(*Q) * std::pow(y + tv, -expn));
  }
  return out;
}

void EnergyCurve::write_csv(std::ostream& os, bool timestamp) const {
  CsvWriter w(os, timestamp);
  w.header({"t", "energy", "fd_slope", "gap", "bound"});
  auto bounds = derivative_bounds();
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<std::string> row(5);
    row[0] = fmt_real(t[i]);
    row[1] = fmt_real(energy[i]);
    row[2] = i + 1 < t.size() ? fmt_real(fd_slope[i]) : "";
    row[3] = i < gap.size() ? fmt_real(gap[i]) : "";
    row[4] = i < bounds.size() ? fmt_real(bounds[i]) : "";
    w.row(row);
  }
}

EnergyCurve energy_curve(const BoxRegion& box, const Potential& v, const TrimPattern& gamma,
                         const std::vector<double>& t_grid, double tol) {
  if (t_grid.size() < 2) throw std::invalid_argument("energy_curve: need at least two t values");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0) throw std::invalid_argument("energy_curve: negative t");
    if (i > 0 && t_grid[i] <= t_grid[i - 1]) {
      throw std::invalid_argument("energy_curve: t grid must increase");
    }
  }

  EnergyCurve c;
  c.t = t_grid;
  c.d = box.dim();
  c.K = gamma.declared_k();
  c.Q = gamma.declared_q();
  c.spread_v = v.spread(box);
  c.solver_tol = tol;

  const bool dense_path = box.size() <= kDenseCrossover;
  for (double tv : t_grid) {
    auto op = assemble(box, v, OperatorKind::Penalized, &gamma, tv);
    if (dense_path) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense(), Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
      c.energy.push_back(es.eigenvalues()(0));
      c.gap.push_back(es.eigenvalues()(1) - es.eigenvalues()(0));
    } else {
      c.energy.push_back(ground_energy_lanczos(op, tol));
    }
  }

  for (std::size_t i = 0; i + 1 < c.t.size(); ++i) {
    double dt = c.t[i + 1] - c.t[i];
    double de = c.energy[i + 1] - c.energy[i];
    if (de < -10.0 * tol) {
      throw std::runtime_error("energy_curve: ground energy decreased along the penalty");
    }
    c.fd_slope.push_back(de / dt);
  }
  return c;
}

std::vector<double> default_t_grid(double t_max, double dt) {
  if (!(t_max > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("default_t_grid: t_max and dt must be positive");
  }
  std::vector<double> g;
  std::int64_t n = static_cast<std::int64_t>(std::llround(t_max / dt));
  if (n < 1) n = 1;
  for (std::int64_t i = 0; i <= n; ++i) g.push_back(std::min(dt * static_cast<double>(i), t_max));
  g.back() = t_max;
  return g;
}

DerivativeReport derivative_check(const EnergyCurve& curve, std::int64_t Q, std::int64_t K,
                                  double tol) {
  if (Q < 1 || K < 1) throw std::invalid_argument("derivative_check: bad (K, Q)");
  if (curve.t.size() < 2) throw std::invalid_argument("derivative_check: curve too short");
  const double y = 2.0 * curve.d + 1.0 + curve.spread_v;
  const double expn = 2.0 * curve.d * static_cast<double>(K);

  DerivativeReport rep;
  rep.tol = tol;
  rep.all_ok = true;
  for (std::size_t i = 0; i + 1 < curve.t.size(); ++i) {
    DerivativeCheckRow row;
    row.t_left = curve.t[i];
    row.t_right = curve.t[i + 1];
    row.slope = curve.fd_slope[i];
    row.bound_right = static_cast<double>(Q) * std::pow(y + row.t_right, -expn);
    row.margin = row.slope - row.bound_right;
    row.ok = row.margin >= -tol;
    row.bound_left = static_cast<double>(Q) * std::pow(y + row.t_left, -expn);
    if (curve.gap.size() == curve.t.size()) {
      double gap_min = std::min(curve.gap[i], curve.gap[i + 1]);
      double dt = row.t_right - row.t_left;
      row.slack_left = tol + 2.0 * dt / std::max(gap_min, 1e-12);
      row.ok_left = row.slope >= row.bound_left - row.slack_left;
    }
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

void DerivativeReport::write_csv(std::ostream& os, bool timestamp) const {
  CsvWriter w(os, timestamp);
  w.header({"t_left", "t_right", "slope", "bound_right", "margin", "ok", "bound_left",
            "slack_left", "ok_left"});
  for (const auto& r : rows) {
    w.row({fmt_real(r.t_left), fmt_real(r.t_right), fmt_real(r.slope), fmt_real(r.bound_right),
           fmt_real(r.margin), r.ok ? "1" : "0", fmt_real(r.bound_left), fmt_real(r.slack_left),
           r.ok_left ? "1" : "0"});
  }
}

}  // namespace trimlat
