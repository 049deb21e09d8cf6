#include "trimlat/anderson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "trimlat/io.hpp"

namespace trimlat {

void AndersonModel::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("AndersonModel: lambda must be positive");
  if (dist.lo() < 0.0) throw std::invalid_argument("AndersonModel: disorder support below 0");
  if (v0.dim() != d) throw std::invalid_argument("AndersonModel: background potential dimension");
  if (gamma.dim() != d) throw std::invalid_argument("AndersonModel: pattern dimension");
}

ModelParams AndersonModel::params(const BoxRegion& box) const {
  validate();
  auto k = gamma.declared_k();
  auto q = gamma.declared_q();
  if (!k || !q) throw std::invalid_argument("AndersonModel: pattern density not declared");
  ModelParams p{d, *k, *q, v0.spread(box)};
  p.validate();
  return p;
}

namespace {

std::vector<std::size_t> gamma_indices(const AndersonModel& m, const BoxRegion& box) {
  std::vector<std::size_t> idx;
  const auto& sites = box.sites();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (m.gamma.contains(sites[i])) idx.push_back(i);
  }
  return idx;
}

}  // namespace

std::vector<double> disorder_on_box(const AndersonModel& m, const BoxRegion& box,
                                    std::uint64_t seed, std::uint64_t sample_index) {
  m.validate();
  if (box.dim() != m.d) throw std::invalid_argument("disorder_on_box: box dimension");
  SiteKeyedRng rng(seed);
  std::vector<double> omega;
  const auto& sites = box.sites();
  for (std::size_t i : gamma_indices(m, box)) {
    omega.push_back(m.dist.sample(rng, sample_index, sites[i]));
  }
  return omega;
}

LatticeOperator sample(const AndersonModel& m, const BoxRegion& box, std::uint64_t seed,
                       std::uint64_t sample_index) {
  auto base = assemble(box, m.v0, OperatorKind::Full);
  auto omega = disorder_on_box(m, box, seed, sample_index);
  std::vector<double> add(box.size(), 0.0);
  auto idx = gamma_indices(m, box);
  for (std::size_t j = 0; j < idx.size(); ++j) add[idx[j]] = m.lambda * omega[j];
  return base.with_diagonal_added(add);
}

KappaScan kappa_scan(const AndersonModel& m, const BoxRegion& box, double e1, int n_grid,
                     double s_lo, double s_hi) {
  m.validate();
  if (box.dim() != m.d) throw std::invalid_argument("kappa_scan: box dimension");
  if (n_grid < 1) throw std::invalid_argument("kappa_scan: empty grid");
  if (!(s_lo > 0.0) || !(s_hi >= s_lo)) throw std::invalid_argument("kappa_scan: bad s range");

  KappaScan ks;
  double lg_lo = std::log10(s_lo), lg_hi = std::log10(s_hi);
  for (int i = 0; i < n_grid; ++i) {
    double s = n_grid == 1
                   ? s_lo
                   : std::pow(10.0, lg_lo + (lg_hi - lg_lo) * i / static_cast<double>(n_grid - 1));
    auto op = assemble(box, m.v0, OperatorKind::Penalized, &m.gamma, s);
    double e = ground_energy(op);
    ks.table.emplace_back(s, e);
    if (e > e1 && (e - e1) / s > ks.kappa) {
      ks.kappa = (e - e1) / s;
      ks.s_at = s;
    }
  }
  if (ks.kappa == 0.0) {
    throw std::invalid_argument("kappa_scan: no grid point with E(s) above e1");
  }
  return ks;
}

WegnerReport wegner_experiment(const AndersonModel& m, const BoxRegion& box, double e1,
                               std::pair<double, double> interval, int n_samples,
                               std::uint64_t seed, KappaMode mode) {
  m.validate();
  if (box.dim() != m.d) throw std::invalid_argument("wegner_experiment: box dimension");
  if (interval.first > interval.second) {
    throw std::invalid_argument("wegner_experiment: inverted interval");
  }
  if (n_samples < 1) throw std::invalid_argument("wegner_experiment: need samples");

  WegnerReport r;
  r.e1 = e1;
  r.interval = interval;
  r.n_samples = n_samples;

  auto p = m.params(box);
  r.e_empty_box = ground_energy(assemble(box, m.v0, OperatorKind::Full));
  r.e_trimmed_box = ground_energy(assemble(box, m.v0, OperatorKind::Trimmed, &m.gamma));
  r.certified_ceiling = r.e_empty_box + delta_lower(p);
  r.e1_validity =
      (e1 > r.e_empty_box && e1 < r.certified_ceiling) ? "certified" : "proxy";

  if (mode == KappaMode::Analytic) {
    r.kappa = kappa_lower(p, r.e_empty_box, e1).kappa_lb;
    r.kappa_mode = "analytic";
  } else {
    r.kappa = kappa_scan(m, box, e1).kappa;
    r.kappa_mode = "numeric";
  }

  r.gamma_count = static_cast<std::int64_t>(gamma_indices(m, box).size());
  r.s_value = m.dist.concentration((interval.second - interval.first) / m.lambda);
  r.bound_rhs = 8.0 / r.kappa * r.s_value * static_cast<double>(r.gamma_count);

  double sum = 0.0, sumsq = 0.0;
  std::int64_t next_checkpoint = 1;
  for (int i = 0; i < n_samples; ++i) {
    auto op = sample(m, box, seed, static_cast<std::uint64_t>(i));
    auto c = static_cast<double>(count_eigs(op, interval.first, interval.second));
    sum += c;
    sumsq += c * c;
    if (i + 1 == next_checkpoint || i + 1 == n_samples) {
      r.running_mean.emplace_back(i + 1, sum / (i + 1));
      next_checkpoint *= 2;
    }
  }
  r.mean = sum / n_samples;
  if (n_samples > 1) {
    double var = (sumsq - sum * sum / n_samples) / (n_samples - 1);
    r.std_error = std::sqrt(std::max(var, 0.0) / n_samples);
  }
  r.pass = r.mean <= r.bound_rhs + 3.0 * r.std_error;
  return r;
}

void WegnerReport::write_csv(std::ostream& os, bool timestamp) const {
  CsvWriter w(os, timestamp);
  w.header({"n", "mean"});
  for (auto [n, mn] : running_mean) w.row({std::to_string(n), fmt_real(mn)});
}

nlohmann::json WegnerReport::summary_json() const {
  nlohmann::json j;
  j["e1"] = e1;
  j["interval"] = {interval.first, interval.second};
  j["n_samples"] = n_samples;
  j["mean"] = mean;
  j["std_error"] = std_error;
  j["bound_rhs"] = bound_rhs;
  j["kappa"] = kappa;
  j["kappa_mode"] = kappa_mode;
  j["s_value"] = s_value;
  j["gamma_count"] = gamma_count;
  j["e_empty_box"] = e_empty_box;
  j["e_trimmed_box"] = e_trimmed_box;
  j["certified_ceiling"] = certified_ceiling;
  j["e1_validity"] = e1_validity;
  j["pass"] = pass;
  return j;
}

PvpReport pvp_check(const AndersonModel& m, const BoxRegion& box, double e0_ref, double e1,
                    int n_samples, std::uint64_t seed, KappaMode mode, double tol) {
  m.validate();
  if (box.dim() != m.d) throw std::invalid_argument("pvp_check: box dimension");
  if (n_samples < 1) throw std::invalid_argument("pvp_check: need samples");

  PvpReport r;
  r.e1 = e1;
  r.n_samples = n_samples;
  if (mode == KappaMode::Analytic) {
    r.kappa_lb = kappa_lower(m.params(box), e0_ref, e1).kappa_lb;
    r.kappa_mode = "analytic";
  } else {
    r.kappa_lb = kappa_scan(m, box, e1).kappa;
    r.kappa_mode = "numeric";
  }

  auto gidx = gamma_indices(m, box);
  double overall = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    auto op = sample(m, box, seed, static_cast<std::uint64_t>(i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("pvp_check: eigensolver failed");

    PvpSample ps;
    ps.index = static_cast<std::uint64_t>(i);
    Eigen::Index rank = 0;
    while (rank < es.eigenvalues().size() && es.eigenvalues()(rank) <= e1) ++rank;
    ps.rank = static_cast<int>(rank);
    if (rank == 0) {
      ps.min_eig = std::numeric_limits<double>::quiet_NaN();
    } else {
      // P chi P compressed to ran P: rows of the low eigenvectors at Gamma sites
      Eigen::MatrixXd low = es.eigenvectors().leftCols(rank);
      Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rank, rank);
      for (std::size_t gi : gidx) {
        b += low.row(static_cast<Eigen::Index>(gi)).transpose() *
             low.row(static_cast<Eigen::Index>(gi));
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b, Eigen::EigenvaluesOnly);
      ps.min_eig = eb.eigenvalues()(0);
      ps.ok = ps.min_eig >= r.kappa_lb - tol;
      ++r.nonvacuous;
      overall = std::min(overall, ps.min_eig);
      if (!ps.ok) ++r.violations;
    }
    r.samples.push_back(ps);
  }
  r.min_eig_overall = r.nonvacuous > 0 ? overall : std::numeric_limits<double>::quiet_NaN();
  r.pass = r.violations == 0;
  return r;
}

void PvpReport::write_csv(std::ostream& os, bool timestamp) const {
  CsvWriter w(os, timestamp);
  w.header({"index", "rank", "min_eig", "ok"});
  for (const auto& s : samples) {
    w.row({std::to_string(s.index), std::to_string(s.rank),
           s.rank > 0 ? fmt_real(s.min_eig) : "", s.ok ? "1" : "0"});
  }
}

SpecAvgReport spectral_averaging_check(const AndersonModel& m, const BoxRegion& box,
                                       const Site& zeta, std::pair<double, double> interval,
                                       int nodes, std::uint64_t seed, std::uint64_t sample_index) {
  m.validate();
  if (box.dim() != m.d) throw std::invalid_argument("spectral_averaging_check: box dimension");
  if (!m.gamma.contains(zeta)) {
    throw std::invalid_argument("spectral_averaging_check: site not in the pattern");
  }
  auto zeta_idx = box.find(zeta);
  if (!zeta_idx) throw std::invalid_argument("spectral_averaging_check: site outside the box");
  if (interval.first > interval.second) {
    throw std::invalid_argument("spectral_averaging_check: inverted interval");
  }
  if (nodes < 1) throw std::invalid_argument("spectral_averaging_check: need nodes");

  SpecAvgReport rep;
  rep.site = zeta;
  rep.interval = interval;
  rep.nodes = nodes;
  rep.bound = 8.0 * m.dist.concentration((interval.second - interval.first) / m.lambda);

  auto base = assemble(box, m.v0, OperatorKind::Full);
  auto omega = disorder_on_box(m, box, seed, sample_index);
  auto gidx = gamma_indices(m, box);
  std::vector<double> add(box.size(), 0.0);
  for (std::size_t j = 0; j < gidx.size(); ++j) add[gidx[j]] = m.lambda * omega[j];

  // local spectral weight in I at zeta as a function of the zeta draw
  auto local_weight = [&](double w) {
    add[*zeta_idx] = m.lambda * w;
    auto op = base.with_diagonal_added(add);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("spectral_averaging_check: eigensolver failed");
    }
    double q = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      double e = es.eigenvalues()(k);
      if (e >= interval.first && e <= interval.second) {
        double amp = es.eigenvectors()(static_cast<Eigen::Index>(*zeta_idx), k);
        q += amp * amp;
      }
    }
    return q;
  };

  auto quad = m.dist.quadrature(nodes);
  double integral = 0.0;
  double tv = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  for (auto [x, w] : quad) {
    double q = local_weight(x);
    integral += w * q;
    if (have_prev) tv += std::fabs(q - prev);
    prev = q;
    have_prev = true;
  }
  rep.integral = integral;
  rep.tv_grid = tv;
  rep.error_term = m.dist.atomic() ? 0.0 : m.dist.quadrature_error(nodes, tv);
  rep.pass = integral <= rep.bound + rep.error_term + 1e-12;
  return rep;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  double h = p * static_cast<double>(sorted.size() - 1);
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

GsmcReport ground_energy_mc(const AndersonModel& m, const std::vector<double>& l_list,
                            int n_samples, std::uint64_t seed) {
  m.validate();
  if (l_list.empty()) throw std::invalid_argument("ground_energy_mc: empty box list");
  if (n_samples < 1) throw std::invalid_argument("ground_energy_mc: need samples");
  for (std::size_t i = 1; i < l_list.size(); ++i) {
    if (l_list[i] <= l_list[i - 1]) {
      throw std::invalid_argument("ground_energy_mc: box sizes must increase");
    }
  }

  GsmcReport rep;
  rep.n_samples = n_samples;
  double overall = std::numeric_limits<double>::infinity();
  for (double l : l_list) {
    auto box = BoxRegion::closed(m.d, l);
    GsmcRow row;
    row.L = l;
    row.n_sites = box.size();
    row.base_energy = ground_energy(assemble(box, m.v0, OperatorKind::Full));

    std::vector<double> energies;
    energies.reserve(static_cast<std::size_t>(n_samples));
    double sum = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      double e = ground_energy(sample(m, box, seed, static_cast<std::uint64_t>(i)));
      energies.push_back(e);
      sum += e;
    }
    std::sort(energies.begin(), energies.end());
    row.min = energies.front();
    row.max = energies.back();
    row.q25 = quantile_sorted(energies, 0.25);
    row.median = quantile_sorted(energies, 0.5);
    row.q75 = quantile_sorted(energies, 0.75);
    row.mean = sum / n_samples;
    overall = std::min(overall, row.min);
    rep.rows.push_back(row);
  }

  rep.medians_monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (rep.rows[i].median > rep.rows[i - 1].median) rep.medians_monotone = false;
  }
  rep.min_overall = overall;
  rep.min_above_base = overall >= rep.rows.back().base_energy;

  if (rep.rows.size() >= 2) {
    // Richardson step assuming E(L) = E_inf + c / L^2
    const auto& a = rep.rows[rep.rows.size() - 2];
    const auto& b = rep.rows.back();
    double la2 = a.L * a.L, lb2 = b.L * b.L;
    rep.e0_extrapolated = (b.base_energy * lb2 - a.base_energy * la2) / (lb2 - la2);
  } else {
    rep.e0_extrapolated = rep.rows.back().base_energy;
  }
  return rep;
}

void GsmcReport::write_csv(std::ostream& os, bool timestamp) const {
  CsvWriter w(os, timestamp);
  w.header({"L", "n_sites", "base_energy", "min", "q25", "median", "q75", "max", "mean"});
  for (const auto& r : rows) {
    w.row({fmt_real(r.L), std::to_string(r.n_sites), fmt_real(r.base_energy), fmt_real(r.min),
           fmt_real(r.q25), fmt_real(r.median), fmt_real(r.q75), fmt_real(r.max),
           fmt_real(r.mean)});
  }
}

}  // namespace trimlat
