#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trimlat/rng.hpp"
#include "trimlat/spectra.hpp"

using namespace trimlat;

namespace {

LatticeOperator chain(double side, double t = -1.0, std::int64_t period = 2) {
  auto box = BoxRegion::closed(1, side);
  if (t < 0.0) return assemble(box, Potential::zero(1), OperatorKind::Full);
  auto g = TrimPattern::periodic(1, period, {{0}});
  return assemble(box, Potential::zero(1), OperatorKind::Penalized, &g, t);
}

}  // namespace

TEST_CASE("dense ground energies of free boxes") {
  // 1d chain on n sites: 2 - 2 cos(pi / (n+1))
  CHECK(ground_energy_dense(chain(2.0)) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ground_energy_dense(chain(4.0)) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
  auto sq = assemble(BoxRegion::closed(2, 2.0), Potential::zero(2), OperatorKind::Full);
  CHECK(ground_energy_dense(sq) == doctest::Approx(2.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("trimmed ground energies, exact isolated cases") {
  auto box = BoxRegion::closed(1, 8.0);
  auto evens = TrimPattern::periodic(1, 2, {{0}});
  auto thirds = TrimPattern::periodic(1, 3, {{0}});
  auto e2 = ground_energy(assemble(box, Potential::zero(1), OperatorKind::Trimmed, &evens));
  auto e3 = ground_energy(assemble(box, Potential::zero(1), OperatorKind::Trimmed, &thirds));
  CHECK(e2 == doctest::Approx(2.0).epsilon(1e-12));  // isolated sites
  CHECK(e3 == doctest::Approx(1.0).epsilon(1e-12));  // isolated pairs

  auto evens2 = TrimPattern::periodic(2, 2, {{0, 0}});
  auto op = assemble(BoxRegion::closed(2, 8.0), Potential::zero(2), OperatorKind::Trimmed, &evens2);
  CHECK(op.size() == 56);
  CHECK(ground_energy(op) == doctest::Approx(1.3100059521441683).epsilon(1e-9));
}

TEST_CASE("lanczos path agrees with the dense solver") {
  auto box = BoxRegion::closed(1, 600.0);
  auto base = assemble(box, Potential::zero(1), OperatorKind::Full);
  SiteKeyedRng rng(11);
  std::vector<double> diag;
  diag.reserve(base.size());
  for (const auto& s : base.sites()) diag.push_back(rng.uniform(0, s));
  auto op = base.with_diagonal_added(diag);

  SolverInfo info;
  double el = ground_energy_lanczos(op, 1e-11, &info);
  double ed = ground_energy_dense(op);
  CHECK(info.method == "lanczos");
  CHECK(info.iterations > 0);
  CHECK(el == doctest::Approx(ed).epsilon(1e-8));

  SolverInfo auto_info;
  double ea = ground_energy(op, 1e-10, &auto_info);
  CHECK(auto_info.method == "lanczos");  // n = 601 > dense crossover
  CHECK(ea == doctest::Approx(ed).epsilon(1e-8));

  SolverInfo small_info;
  ground_energy(chain(4.0), 1e-10, &small_info);
  CHECK(small_info.method == "dense");
}

TEST_CASE("positive ground state with propagation floors") {
  auto gs = ground_state_pf(chain(3.0));
  CHECK(gs.energy == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(gs.psi.size() == 3);
  CHECK(gs.psi(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gs.psi(1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(gs.psi(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gs.psi.minCoeff() > 0.0);
  CHECK(gs.min_psi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gs.ucp_floor == doctest::Approx(std::pow(3.0, -3.0)).epsilon(1e-12));
  CHECK(gs.ucp_ok);
  CHECK(gs.graph_ok);
  CHECK(gs.graph_margin >= 0.0);

  auto gs5 = ground_state_pf(chain(4.0));
  CHECK(gs5.energy == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-11));
  CHECK(gs5.min_psi == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(gs5.ucp_floor == doctest::Approx(std::pow(3.0, -4.0)).epsilon(1e-12));
  CHECK(gs5.ucp_ok);
  CHECK(gs5.graph_ok);

  // nonzero potential: floors use Y = 2d + 1 + spread
  auto box = BoxRegion::closed(2, 4.0);
  auto v = Potential::periodic(2, 2, {0.0, 1.0, 0.5, 0.25});
  auto gsv = ground_state_pf(assemble(box, v, OperatorKind::Full));
  CHECK(gsv.psi.minCoeff() > 0.0);
  CHECK(gsv.ucp_floor == doctest::Approx(std::pow(6.0, -8.0)).epsilon(1e-10));
  CHECK(gsv.ucp_ok);
  CHECK(gsv.graph_ok);

  auto evens = TrimPattern::periodic(1, 2, {{0}});
  auto tr = assemble(BoxRegion::closed(1, 4.0), Potential::zero(1), OperatorKind::Trimmed, &evens);
  CHECK_THROWS_AS(ground_state_pf(tr), std::invalid_argument);
}

TEST_CASE("eigenvalue counting against known spectra") {
  // 5-site chain spectrum: {2-sqrt3, 1, 2, 3, 2+sqrt3}
  auto op = chain(4.0);
  CHECK(count_eigs(op, 0.0, 2.0) == 3);
  CHECK(count_eigs(op, 1.0, 2.0) == 2);  // both endpoints are eigenvalues
  CHECK(count_eigs(op, 0.5, 3.5) == 3);
  CHECK(count_eigs(op, 4.0, 5.0) == 0);
  CHECK(count_eigs(op, 0.0, 4.0) == 5);
  CHECK(count_eigs(op, -1.0, 0.0) == 0);
  CHECK_THROWS_AS(count_eigs(op, 2.0, 1.0), std::invalid_argument);

  CountMeta meta;
  count_eigs(op, 0.0, 2.0, &meta);
  CHECK(meta.eps > 0.0);
  CHECK(meta.shift_lo < 0.0);
  CHECK(meta.shift_hi > 2.0);
}

TEST_CASE("eigenvalue counting matches a dense eigendecomposition") {
  SiteKeyedRng rng(5);
  for (int inst = 0; inst < 8; ++inst) {
    auto base = assemble(BoxRegion::closed(1, 39.0), Potential::zero(1), OperatorKind::Full);
    std::vector<double> diag;
    for (const auto& s : base.sites()) {
      diag.push_back(4.0 * rng.uniform(static_cast<std::uint64_t>(inst), s));
    }
    auto op = base.with_diagonal_added(diag);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    const auto& w = es.eigenvalues();
    const double eps = 1e-12 * std::max(1.0, op.norm_inf());  // same widening as count_eigs
    for (int k = 0; k < 20; ++k) {
      double a = 8.0 * rng.uniform(1000 + inst, {k}) - 1.0;
      double b = a + 4.0 * rng.uniform(2000 + inst, {k});
      std::int64_t expect = 0;
      for (int i = 0; i < w.size(); ++i) {
        if (w(i) >= a - eps && w(i) <= b + eps) ++expect;
      }
      CHECK(count_eigs(op, a, b) == expect);
    }
  }
}

TEST_CASE("penalty curve is monotone, concave, below the trimmed energy") {
  auto box = BoxRegion::closed(1, 10.0);
  auto gamma = TrimPattern::periodic(1, 2, {{0}});
  gamma.declare_density(2, 1);
  auto v = Potential::zero(1);
  auto curve = energy_curve(box, v, gamma, {0.0, 0.5, 1.0, 2.0});

  REQUIRE(curve.t.size() == 4);
  CHECK(curve.energy[0] == doctest::Approx(0.06814834742186338).epsilon(1e-10));
  CHECK(curve.energy[1] == doctest::Approx(0.30203932083604984).epsilon(1e-10));
  CHECK(curve.energy[2] == doctest::Approx(0.5044923433950755).epsilon(1e-10));
  CHECK(curve.energy[3] == doctest::Approx(0.8246722528389248).epsilon(1e-10));
  CHECK(std::is_sorted(curve.energy.begin(), curve.energy.end()));
  REQUIRE(curve.fd_slope.size() == 3);
  CHECK(curve.fd_slope[0] == doctest::Approx(0.4677819468283729).epsilon(1e-9));
  CHECK(curve.fd_slope[0] > curve.fd_slope[1]);  // concavity
  CHECK(curve.fd_slope[1] > curve.fd_slope[2]);
  REQUIRE(curve.gap.size() == 4);
  CHECK(curve.gap[0] == doctest::Approx(0.19980084500925924).epsilon(1e-9));
  CHECK(curve.K == 2);
  CHECK(curve.Q == 1);
  CHECK(curve.spread_v == 0.0);

  auto tr = assemble(box, v, OperatorKind::Trimmed, &gamma);
  CHECK(curve.energy.back() <= ground_energy(tr) + 1e-10);

  auto bounds = curve.derivative_bounds();
  REQUIRE(bounds.size() == 4);
  CHECK(bounds[0] == doctest::Approx(std::pow(3.0, -4.0)).epsilon(1e-12));
  CHECK(bounds[1] == doctest::Approx(std::pow(3.5, -4.0)).epsilon(1e-12));
  CHECK(bounds[3] == doctest::Approx(std::pow(5.0, -4.0)).epsilon(1e-12));

  auto report = derivative_check(curve, 1, 2);
  CHECK(report.all_ok);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].slope == doctest::Approx(curve.fd_slope[0]));
  CHECK(report.rows[0].bound_right == doctest::Approx(std::pow(3.5, -4.0)));
  CHECK(report.rows[0].margin > 0.0);
  for (const auto& r : report.rows) {
    CHECK(r.ok);
    CHECK(r.ok_left);
  }

  std::ostringstream os;
  curve.write_csv(os, false);
  CHECK(os.str().rfind("t,", 0) == 0);
  CHECK(os.str().find("0.06814834742186") != std::string::npos);
}

TEST_CASE("default penalty grid") {
  auto g = default_t_grid(1.0);
  REQUIRE(g.size() == 21);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(0.05));
  CHECK_THROWS_AS(default_t_grid(-1.0), std::invalid_argument);
}
