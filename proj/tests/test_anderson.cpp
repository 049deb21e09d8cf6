#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "trimlat/anderson.hpp"

using namespace trimlat;

namespace {

AndersonModel base_model(double lambda = 1.0) {
  AndersonModel m;
  m.d = 1;
  m.v0 = Potential::zero(1);
  m.gamma = TrimPattern::periodic(1, 2, {{0}});
  m.gamma.declare_density(2, 1);
  m.lambda = lambda;
  m.dist = SiteDistribution::uniform(0.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("site-keyed generator is a pure function of its key") {
  SiteKeyedRng rng(42);
  CHECK(rng.bits(0, {3}) == rng.bits(0, {3}));
  CHECK(rng.bits(0, {3}) != rng.bits(1, {3}));
  CHECK(rng.bits(0, {3}) != rng.bits(0, {4}));
  CHECK(rng.bits(0, {3, 0}) != rng.bits(0, {0, 3}));
  SiteKeyedRng other(43);
  CHECK(rng.bits(0, {3}) != other.bits(0, {3}));
  for (int i = 0; i < 50; ++i) {
    double u = rng.uniform(7, {i});
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("concentration functions, closed forms") {
  auto u = SiteDistribution::uniform(0.0, 1.0);
  CHECK(u.concentration(0.0) == 0.0);
  CHECK(u.concentration(0.3) == doctest::Approx(0.3));
  CHECK(u.concentration(2.0) == 1.0);
  CHECK(u.cdf(0.5) == doctest::Approx(0.5));
  CHECK(u.quantile(0.25) == doctest::Approx(0.25));
  CHECK(!u.atomic());
  CHECK(!u.degenerate());

  auto tp = SiteDistribution::two_point(0.0, 1.0, 0.3);
  CHECK(tp.concentration(0.0) == doctest::Approx(0.7));
  CHECK(tp.concentration(0.5) == doctest::Approx(0.7));
  CHECK(tp.concentration(1.0) == doctest::Approx(1.0));
  CHECK(tp.atomic());
  auto qa = tp.quadrature();
  REQUIRE(qa.size() == 2);
  CHECK(qa[0].first == 0.0);
  CHECK(qa[0].second == doctest::Approx(0.3));

  auto disc = SiteDistribution::discrete({{0.0, 0.2}, {0.5, 0.3}, {1.0, 0.5}});
  CHECK(disc.concentration(0.25) == doctest::Approx(0.5));
  CHECK(disc.concentration(0.5) == doctest::Approx(0.8));
  CHECK(disc.concentration(1.0) == doctest::Approx(1.0));
  CHECK(disc.atomic());

  auto b = SiteDistribution::beta_like(2.0, 2.0, 1.0);
  CHECK(b.concentration(0.5) == doctest::Approx(0.6875).epsilon(1e-9));
  CHECK(b.concentration(1.5) == 1.0);
  CHECK(b.cdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.cdf(0.25) == doctest::Approx(0.15625).epsilon(1e-10));
  CHECK(b.quantile(b.cdf(0.3)) == doctest::Approx(0.3).epsilon(1e-8));

  auto pm = SiteDistribution::point_mass(0.7);
  CHECK(pm.concentration(0.0) == 1.0);
  CHECK(pm.degenerate());
  auto pq = pm.quadrature();
  REQUIRE(pq.size() == 1);
  CHECK(pq[0].first == 0.7);
  CHECK(pq[0].second == 1.0);
  SiteKeyedRng rng(1);
  CHECK(pm.sample(rng, 0, {5}) == 0.7);

  CHECK_THROWS_AS(SiteDistribution::uniform(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SiteDistribution::two_point(0.0, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(SiteDistribution::two_point(0.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(SiteDistribution::discrete({{0.0, 0.4}, {1.0, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(SiteDistribution::beta_like(0.5, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("regularized incomplete beta") {
  CHECK(reg_inc_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(reg_inc_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(reg_inc_beta(2.0, 2.0, 0.25) == doctest::Approx(0.15625).epsilon(1e-12));
  CHECK(reg_inc_beta(2.5, 1.5, 0.3) == doctest::Approx(0.08894372317066562).epsilon(1e-10));
  CHECK(reg_inc_beta(3.0, 4.0, 0.0) == 0.0);
  CHECK(reg_inc_beta(3.0, 4.0, 1.0) == 1.0);
  for (double x : {0.1, 0.37, 0.62, 0.9}) {
    CHECK(reg_inc_beta(2.5, 1.5, x) ==
          doctest::Approx(1.0 - reg_inc_beta(1.5, 2.5, 1.0 - x)).epsilon(1e-12));
  }
}

TEST_CASE("quadrature moments and error bound") {
  auto u = SiteDistribution::uniform(0.0, 1.0);
  auto q = u.quadrature(512);
  REQUIRE(q.size() == 512);
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (auto [x, wt] : q) {
    w += wt;
    m1 += wt * x;
    m2 += wt * x * x;
  }
  CHECK(w == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m1 == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  CHECK(u.quadrature_error(512, 2.0) == doctest::Approx(1.0 / 512.0).epsilon(1e-13));
  CHECK(SiteDistribution::two_point(0.0, 1.0, 0.3).quadrature_error(512, 2.0) == 0.0);
}

TEST_CASE("disorder draws couple across nested boxes") {
  auto m = base_model();
  auto small = BoxRegion::closed(1, 4.0);
  auto big = BoxRegion::closed(1, 8.0);
  auto ds = disorder_on_box(m, small, 9, 0);
  auto db = disorder_on_box(m, big, 9, 0);
  REQUIRE(ds.size() == 3);  // evens in {-2..2}
  REQUIRE(db.size() == 5);
  CHECK(db[1] == ds[0]);  // shared sites -2, 0, 2
  CHECK(db[2] == ds[1]);
  CHECK(db[3] == ds[2]);
  auto other = disorder_on_box(m, small, 9, 1);
  CHECK(ds != other);
  auto repeat = disorder_on_box(m, small, 9, 0);
  CHECK(ds == repeat);

  auto op = sample(m, small, 9, 0);
  auto dm = op.dense();
  CHECK(dm(0, 0) == doctest::Approx(2.0 + ds[0]));  // site -2
  CHECK(dm(1, 1) == 2.0);                           // site -1, no disorder
  CHECK(dm(2, 2) == doctest::Approx(2.0 + ds[1]));
  CHECK(dm(0, 1) == -1.0);

  auto p = m.params(small);
  CHECK(p.d == 1);
  CHECK(p.K == 2);
  CHECK(p.Q == 1);
  CHECK(p.spr_v == 0.0);
}

TEST_CASE("model validation") {
  auto m = base_model();
  m.validate();
  m.lambda = 0.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = base_model();
  m.dist = SiteDistribution::uniform(-0.5, 1.0);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = base_model();
  m.v0 = Potential::zero(2);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);

  auto nodecl = base_model();
  nodecl.gamma = TrimPattern::periodic(1, 2, {{0}});  // density not declared
  CHECK_THROWS_AS(nodecl.params(BoxRegion::closed(1, 4.0)), std::invalid_argument);
}

TEST_CASE("coupling constant scans") {
  auto m = base_model(2.0);
  auto box = BoxRegion::closed(1, 20.0);
  auto ks = kappa_scan(m, box, 0.011);
  CHECK(ks.kappa == doctest::Approx(1.4350801978038699).epsilon(1e-9));
  CHECK(ks.s_at == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(ks.table.size() == 60);

  // reference scan used by the disorder experiments
  auto ks50 = kappa_scan(m, BoxRegion::closed(1, 50.0), 0.5);
  CHECK(ks50.kappa == doctest::Approx(0.1700567981569113).epsilon(1e-9));
  CHECK(ks50.s_at == doctest::Approx(3.486365227678084).epsilon(1e-9));

  CHECK_THROWS_AS(kappa_scan(m, box, 0.011, 0), std::invalid_argument);
}

TEST_CASE("averaged eigenvalue count, deterministic disorder") {
  auto m = base_model(2.0);
  m.dist = SiteDistribution::point_mass(0.0);
  auto box = BoxRegion::closed(1, 20.0);
  auto r = wegner_experiment(m, box, 0.5, {0.0, 0.1}, 3, 17);
  CHECK(r.mean == 2.0);  // plain 21-chain has eigenvalues 0.0204, 0.0810 in [0, 0.1]
  CHECK(r.std_error == 0.0);
  CHECK(r.gamma_count == 11);
  CHECK(r.kappa > 0.0);
  CHECK(r.s_value == 1.0);  // point mass concentrates everything
  CHECK(r.e_empty_box == doctest::Approx(0.020357116238134833).epsilon(1e-10));
  CHECK(r.e1_validity == "proxy");  // 0.5 is far above the certified ceiling
  CHECK(r.pass);
  CHECK(!r.running_mean.empty());

  std::ostringstream os;
  r.write_csv(os, false);
  CHECK(os.str().rfind("n,", 0) == 0);
  auto j = r.summary_json();
  CHECK(j.at("mean") == 2.0);
  CHECK(j.at("pass") == true);

  // certified window: e1 below e_empty + gap bound
  auto rc = wegner_experiment(m, box, 0.025, {0.0, 0.022}, 2, 17);
  CHECK(rc.e1_validity == "certified");
  CHECK(rc.certified_ceiling == doctest::Approx(0.020357116238134833 + 1.0 / 81.0).epsilon(1e-9));
}

TEST_CASE("averaged eigenvalue count, random disorder") {
  auto m = base_model(2.0);
  auto r = wegner_experiment(m, BoxRegion::closed(1, 20.0), 0.5, {0.0, 0.1}, 40, 23);
  CHECK(r.n_samples == 40);
  CHECK(r.mean >= 0.0);
  CHECK(r.mean <= r.bound_rhs);
  CHECK(r.pass);
  CHECK(r.kappa_mode == "numeric");
}

TEST_CASE("projection positivity on low spectral subspaces") {
  auto m = base_model(0.003);
  auto box = BoxRegion::closed(1, 30.0);
  auto r = pvp_check(m, box, 0.0, 0.011, 5, 31);
  CHECK(r.kappa_lb == doctest::Approx(7.86883800789781e-05).epsilon(1e-10));
  CHECK(r.kappa_mode == "analytic");
  CHECK(r.n_samples == 5);
  CHECK(r.nonvacuous >= 1);
  CHECK(r.violations == 0);
  CHECK(r.pass);
  CHECK(r.min_eig_overall >= r.kappa_lb);
  REQUIRE(r.samples.size() == 5);
  for (const auto& s : r.samples) {
    if (s.rank > 0) CHECK(s.min_eig > 0.0);
  }

  // e1 outside the guarded window cannot use the analytic mode
  CHECK_THROWS_AS(pvp_check(m, box, 0.0, 0.5, 2, 31), std::invalid_argument);
  auto rn = pvp_check(m, box, 0.0, 0.012, 2, 31, KappaMode::Numeric);
  CHECK(rn.kappa_mode == "numeric");
}

TEST_CASE("one-site spectral averaging") {
  auto m = base_model();
  auto box = BoxRegion::closed(1, 8.0);
  // with seed 3 the lowest eigenvalue sweeps 0.254 -> 0.451 as omega at the
  // site runs over [0, 1], so [0.2, 0.4] sees genuine crossings
  auto r = spectral_averaging_check(m, box, {0}, {0.2, 0.4}, 256, 3, 0);
  CHECK(r.site == Site{0});
  CHECK(r.bound == doctest::Approx(8.0 * 0.2).epsilon(1e-12));  // 8 S(|I|/lambda)
  CHECK(r.integral >= 0.0);
  CHECK(r.integral <= r.bound + r.error_term + 1e-12);
  CHECK(r.error_term > 0.0);
  CHECK(r.nodes == 256);
  CHECK(r.pass);

  m.dist = SiteDistribution::two_point(0.0, 1.0, 0.5);
  auto ra = spectral_averaging_check(m, box, {2}, {0.0, 0.3});
  CHECK(ra.error_term == 0.0);
  CHECK(ra.pass);

  CHECK_THROWS_AS(spectral_averaging_check(m, box, {1}, {0.0, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(spectral_averaging_check(m, box, {0}, {0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("ground energy statistics across box sizes") {
  auto m = base_model();
  auto r = ground_energy_mc(m, {10.0, 20.0}, 30, 7);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.n_samples == 30);
  CHECK(r.rows[0].n_sites == 11);
  CHECK(r.rows[1].n_sites == 21);
  CHECK(r.rows[0].base_energy == doctest::Approx(0.06814834742186338).epsilon(1e-10));
  CHECK(r.rows[1].base_energy == doctest::Approx(0.020357116238134833).epsilon(1e-10));
  CHECK(r.e0_extrapolated == doctest::Approx(0.004426705843558383).epsilon(1e-9));
  CHECK(r.medians_monotone);  // pathwise coupling forces it
  CHECK(r.rows[1].median <= r.rows[0].median);
  CHECK(r.min_above_base);
  CHECK(r.min_overall >= r.rows[1].base_energy);
  for (const auto& row : r.rows) {
    CHECK(row.min <= row.q25);
    CHECK(row.q25 <= row.median);
    CHECK(row.median <= row.q75);
    CHECK(row.q75 <= row.max);
    CHECK(row.base_energy <= row.min);
  }

  std::ostringstream os;
  r.write_csv(os, false);
  CHECK(os.str().rfind("L,", 0) == 0);

  CHECK_THROWS_AS(ground_energy_mc(m, {}, 10, 7), std::invalid_argument);
  CHECK_THROWS_AS(ground_energy_mc(m, {10.0}, 0, 7), std::invalid_argument);
}
