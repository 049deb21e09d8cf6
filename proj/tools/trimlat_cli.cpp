// Command-line driver: each subcommand reads an optional JSON configuration
// (flags override file values), runs one experiment, and writes CSV or JSON.
// Exit status: 0 success, 1 a checked inequality failed, 2 invalid usage or
// configuration.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trimlat/anderson.hpp"
#include "trimlat/bounds.hpp"
#include "trimlat/cheeger.hpp"
#include "trimlat/io.hpp"
#include "trimlat/spectra.hpp"
#include "trimlat/verify.hpp"

namespace {

using namespace trimlat;

struct Options {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  bool out_given = false;
  bool no_timestamp = false;
};

struct Resolved {
  ExperimentConfig cfg;
  std::uint64_t seed = 1;
  std::string out;
  bool timestamp = true;
};

Resolved resolve(const std::string& command, const Options& o) {
  Resolved r;
  if (!o.config_path.empty()) {
    r.cfg = ExperimentConfig::load(o.config_path);
    if (r.cfg.command != command) {
      throw std::invalid_argument("configuration is for command '" + r.cfg.command +
                                  "', not '" + command + "'");
    }
  } else {
    r.cfg.command = command;
  }
  r.seed = o.seed_given ? o.seed
                        : static_cast<std::uint64_t>(r.cfg.integer("seed", 1));
  r.out = o.out_given ? o.out_path : r.cfg.str("out", "");
  r.timestamp = !o.no_timestamp;
  return r;
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  return fn(f);
}

Site site_from_json(const nlohmann::json& j, int d) {
  Site s;
  if (j.is_number_integer()) {
    s.push_back(j.get<std::int64_t>());
  } else if (j.is_array()) {
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw std::invalid_argument("site coordinates must be integers");
      s.push_back(c.get<std::int64_t>());
    }
  } else {
    throw std::invalid_argument("a site must be an integer or an integer array");
  }
  if (static_cast<int>(s.size()) != d) {
    throw std::invalid_argument("site dimension does not match d");
  }
  return s;
}

// Pattern from the configuration: an explicit "gamma" object wins, otherwise
// a cubic period K pattern with residues "base" (default: the origin).
TrimPattern pattern_from(const ExperimentConfig& cfg, int d, std::int64_t k) {
  if (cfg.has("gamma")) return TrimPattern::from_json(cfg.params.at("gamma"));
  std::vector<Site> base;
  if (cfg.has("base")) {
    for (const auto& j : cfg.params.at("base")) base.push_back(site_from_json(j, d));
  } else {
    base.push_back(Site(static_cast<std::size_t>(d), 0));
  }
  return TrimPattern::periodic(d, k, std::move(base));
}

Potential potential_from(const ExperimentConfig& cfg, int d) {
  if (!cfg.has("v_values")) return Potential::zero(d);
  auto period = cfg.integer("v_period", 1);
  return Potential::periodic(d, period, cfg.reals("v_values"));
}

SiteDistribution dist_from(const ExperimentConfig& cfg) {
  auto kind = cfg.str("dist", "uniform");
  if (kind == "uniform") {
    return SiteDistribution::uniform(cfg.real("dist_lo", 0.0), cfg.real("dist_hi", 1.0));
  }
  if (kind == "two_point") {
    return SiteDistribution::two_point(cfg.real("dist_v0", 0.0), cfg.real("dist_v1", 1.0),
                                       cfg.real("dist_p", 0.5));
  }
  if (kind == "beta") {
    return SiteDistribution::beta_like(cfg.real("dist_alpha", 2.0), cfg.real("dist_beta", 2.0),
                                       cfg.real("dist_scale", 1.0));
  }
  if (kind == "point") return SiteDistribution::point_mass(cfg.real("dist_value", 1.0));
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

AndersonModel model_from(const ExperimentConfig& cfg) {
  AndersonModel m;
  m.d = static_cast<int>(cfg.integer("d", 1));
  auto k = cfg.integer("K", 2);
  m.v0 = potential_from(cfg, m.d);
  m.gamma = pattern_from(cfg, m.d, k);
  auto chk = m.gamma.check_relatively_dense(k, 1);
  if (!chk.ok) throw std::invalid_argument("pattern is not relatively dense for the given K");
  m.gamma.declare_density(k, cfg.integer("Q", chk.min_count));
  m.lambda = cfg.real("lambda", 1.0);
  m.dist = dist_from(cfg);
  m.validate();
  return m;
}

int cmd_bounds(const Resolved& r) {
  const auto& cfg = r.cfg;
  ModelParams p{static_cast<int>(cfg.integer("d", 1)), cfg.integer("K", 2), cfg.integer("Q", 1),
                cfg.real("spr", 0.0)};
  p.validate();
  std::vector<double> t_list{0.25, 0.5, 1.0, 2.0, 4.0};
  if (cfg.has("t_list")) t_list = cfg.reals("t_list");

  return with_output(r.out, [&](std::ostream& os) {
    CsvWriter w(os, r.timestamp);
    w.header({"quantity", "t", "value"});
    w.row({"y", "", fmt_real(p.y())});
    w.row({"delta_lower", "", fmt_real(delta_lower(p))});
    w.row({"delta_lower_scaled", "", delta_lower_scaled(p).str()});
    w.row({"cheeger_free_lower", "", fmt_real(cheeger_free_lower(p.d, p.K))});
    for (double t : t_list) {
      w.row({"delta_t_lower", fmt_real(t), fmt_real(delta_t_lower(p, t))});
      w.row({"combined_t_lower", fmt_real(t), fmt_real(combined_t_lower(p.d, p.K, t))});
      if (t >= 2.0 * p.d - 1.0) {
        w.row({"t_large_lower", fmt_real(t), fmt_real(t_large_lower(p.d, p.K, t))});
      }
    }
    return 0;
  });
}

int cmd_gsenergy(const Resolved& r) {
  const auto& cfg = r.cfg;
  int d = static_cast<int>(cfg.integer("d", 1));
  auto k = cfg.integer("K", 2);
  double t = cfg.real("t", 1.0);
  auto box = BoxRegion::closed(d, cfg.real("L", 20.0));
  auto v = potential_from(cfg, d);
  auto gamma = pattern_from(cfg, d, k);

  struct Entry {
    const char* kind;
    OperatorKind op;
    double t;
  };
  const Entry entries[] = {{"full", OperatorKind::Full, 0.0},
                           {"trimmed", OperatorKind::Trimmed, 0.0},
                           {"penalized", OperatorKind::Penalized, t}};
  return with_output(r.out, [&](std::ostream& os) {
    CsvWriter w(os, r.timestamp);
    w.header({"kind", "n", "energy", "method", "iterations", "residual"});
    for (const auto& e : entries) {
      auto op = assemble(box, v, e.op, &gamma, e.t);
      SolverInfo info;
      double energy = ground_energy(op, 1e-10, &info);
      w.row({e.kind, std::to_string(op.size()), fmt_real(energy), info.method,
             std::to_string(info.iterations), fmt_real(info.residual)});
    }
    return 0;
  });
}

int cmd_curve(const Resolved& r) {
  const auto& cfg = r.cfg;
  int d = static_cast<int>(cfg.integer("d", 1));
  auto k = cfg.integer("K", 2);
  auto box = BoxRegion::closed(d, cfg.real("L", 12.0));
  auto v = potential_from(cfg, d);
  auto gamma = pattern_from(cfg, d, k);
  auto chk = gamma.check_relatively_dense(k, 1);
  if (chk.ok) gamma.declare_density(k, cfg.integer("Q", chk.min_count));

  std::vector<double> grid;
  if (cfg.has("t_list")) {
    grid = cfg.reals("t_list");
  } else {
    grid = default_t_grid(cfg.real("t_max", 3.0), cfg.real("dt", 0.05));
  }
  auto curve = energy_curve(box, v, gamma, grid, cfg.real("tol", 1e-10));

  int rc = 0;
  if (curve.K && curve.Q) {
    auto rep = derivative_check(curve, *curve.Q, *curve.K, cfg.real("check_tol", 1e-9));
    if (!rep.all_ok) rc = 1;
  }
  with_output(r.out, [&](std::ostream& os) {
    curve.write_csv(os, r.timestamp);
    return 0;
  });
  return rc;
}

int cmd_cheeger(const Resolved& r) {
  const auto& cfg = r.cfg;
  int d = static_cast<int>(cfg.integer("d", 1));
  auto k = cfg.integer("K", 2);
  auto window = BoxRegion::closed(d, cfg.real("L", 6.0));
  auto gamma = pattern_from(cfg, d, k);

  auto mode_name = cfg.str("mode", "trimmed");
  BetaMode mode;
  if (mode_name == "trimmed") {
    mode = BetaMode::Trimmed;
  } else if (mode_name == "penalized") {
    mode = BetaMode::Penalized;
  } else {
    throw std::invalid_argument("mode must be 'trimmed' or 'penalized'");
  }
  std::optional<int> cap;
  if (cfg.has("max_cardinality")) cap = static_cast<int>(cfg.integer("max_cardinality"));

  auto res = beta_bruteforce(window, gamma, mode, cfg.real("t", 1.0), cap);
  auto j = res.to_json();
  int rc = 0;
  if (mode == BetaMode::Trimmed) {
    double floor = std::pow(static_cast<double>(k_star(k)), -d);
    j["floor"] = floor;
    j["floor_ok"] = res.beta >= floor - 1e-12;
    if (!j["floor_ok"].get<bool>()) rc = 1;
  }
  with_output(r.out, [&](std::ostream& os) {
    os << j.dump(2) << "\n";
    return 0;
  });
  return rc;
}

int cmd_wegner(const Resolved& r) {
  const auto& cfg = r.cfg;
  auto m = model_from(cfg);
  if (!cfg.has("lambda")) m.lambda = 2.0;
  auto box = BoxRegion::closed(m.d, cfg.real("L", 50.0));
  std::pair<double, double> interval{0.0, 0.1};
  if (cfg.has("interval")) {
    auto iv = cfg.reals("interval");
    if (iv.size() != 2) throw std::invalid_argument("interval must have two endpoints");
    interval = {iv[0], iv[1]};
  }
  auto mode = cfg.str("kappa", "numeric") == "analytic" ? KappaMode::Analytic : KappaMode::Numeric;
  auto rep = wegner_experiment(m, box, cfg.real("e1", 0.5), interval,
                               static_cast<int>(cfg.integer("n_samples", 200)), r.seed, mode);
  std::clog << rep.summary_json().dump(2) << "\n";
  with_output(r.out, [&](std::ostream& os) {
    rep.write_csv(os, r.timestamp);
    return 0;
  });
  return rep.pass ? 0 : 1;
}

int cmd_pvp(const Resolved& r) {
  const auto& cfg = r.cfg;
  auto m = model_from(cfg);
  if (!cfg.has("lambda")) m.lambda = 0.003;
  auto box = BoxRegion::closed(m.d, cfg.real("L", 30.0));
  auto mode = cfg.str("kappa", "analytic") == "numeric" ? KappaMode::Numeric : KappaMode::Analytic;
  auto rep = pvp_check(m, box, cfg.real("e0_ref", 0.0), cfg.real("e1", 0.011),
                       static_cast<int>(cfg.integer("n_samples", 50)), r.seed, mode,
                       cfg.real("tol", 1e-8));
  with_output(r.out, [&](std::ostream& os) {
    rep.write_csv(os, r.timestamp);
    return 0;
  });
  return rep.pass ? 0 : 1;
}

int cmd_specavg(const Resolved& r) {
  const auto& cfg = r.cfg;
  auto m = model_from(cfg);
  auto box = BoxRegion::closed(m.d, cfg.real("L", 8.0));
  Site zeta(static_cast<std::size_t>(m.d), 0);
  if (cfg.has("zeta")) zeta = site_from_json(cfg.params.at("zeta"), m.d);
  std::pair<double, double> interval{0.0, 0.5};
  if (cfg.has("interval")) {
    auto iv = cfg.reals("interval");
    if (iv.size() != 2) throw std::invalid_argument("interval must have two endpoints");
    interval = {iv[0], iv[1]};
  }
  auto rep = spectral_averaging_check(m, box, zeta, interval,
                                      static_cast<int>(cfg.integer("nodes", 512)), r.seed,
                                      static_cast<std::uint64_t>(cfg.integer("sample_index", 0)));
  with_output(r.out, [&](std::ostream& os) {
    CsvWriter w(os, r.timestamp);
    w.header({"site", "a", "b", "integral", "bound", "error_term", "tv_grid", "nodes", "pass"});
    w.row({format_site(rep.site), fmt_real(rep.interval.first), fmt_real(rep.interval.second),
           fmt_real(rep.integral), fmt_real(rep.bound), fmt_real(rep.error_term),
           fmt_real(rep.tv_grid), std::to_string(rep.nodes), rep.pass ? "1" : "0"});
    return 0;
  });
  return rep.pass ? 0 : 1;
}

int cmd_gsmc(const Resolved& r) {
  const auto& cfg = r.cfg;
  auto m = model_from(cfg);
  std::vector<double> l_list{4.0, 8.0, 12.0};
  if (cfg.has("l_list")) l_list = cfg.reals("l_list");
  auto rep = ground_energy_mc(m, l_list, static_cast<int>(cfg.integer("n_samples", 25)), r.seed);
  with_output(r.out, [&](std::ostream& os) {
    rep.write_csv(os, r.timestamp);
    return 0;
  });
  return rep.medians_monotone && rep.min_above_base ? 0 : 1;
}

int cmd_verify(const Resolved& r) {
  auto level_name = r.cfg.str("level", "fast");
  VerifyLevel level;
  if (level_name == "fast") {
    level = VerifyLevel::Fast;
  } else if (level_name == "full") {
    level = VerifyLevel::Full;
  } else {
    throw std::invalid_argument("level must be 'fast' or 'full'");
  }
  auto results = run_acceptance(level, std::clog);
  bool all = true;
  with_output(r.out, [&](std::ostream& os) {
    all = print_results(results, os);
    return 0;
  });
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trimmed lattice operators: gap bounds, positivity checks, disorder experiments"};
  app.require_subcommand(1);

  struct Sub {
    std::string name;
    std::string help;
    int (*run)(const Resolved&);
    Options opts;
    CLI::App* cmd = nullptr;
    CLI::Option *seed_opt = nullptr, *out_opt = nullptr;
  };
  std::vector<Sub> subs = {
      {"bounds", "analytic gap and isoperimetric bounds for given parameters", cmd_bounds},
      {"gsenergy", "ground energies of the full, trimmed, penalized operators", cmd_gsenergy},
      {"curve", "ground energy along a penalty grid with slope checks", cmd_curve},
      {"cheeger", "window minimum of the boundary-to-volume ratio", cmd_cheeger},
      {"wegner", "averaged eigenvalue count vs the analytic ceiling", cmd_wegner},
      {"pvp", "spectral projection positivity on the penalized set", cmd_pvp},
      {"specavg", "one-site spectral averaging vs the concentration bound", cmd_specavg},
      {"gsmc", "ground energy statistics across box sizes", cmd_gsmc},
      {"verify", "run the acceptance criteria battery", cmd_verify},
  };
  for (auto& s : subs) {
    s.cmd = app.add_subcommand(s.name, s.help);
    s.cmd->add_option("--config", s.opts.config_path, "JSON configuration file");
    s.seed_opt = s.cmd->add_option("--seed", s.opts.seed, "RNG seed (overrides the file)");
    s.out_opt = s.cmd->add_option("--out", s.opts.out_path, "output file (default stdout)");
    s.cmd->add_flag("--no-timestamp", s.opts.no_timestamp, "suppress the timestamp comment");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto& s : subs) {
    if (!s.cmd->parsed()) continue;
    s.opts.seed_given = s.seed_opt->count() > 0;
    s.opts.out_given = s.out_opt->count() > 0;
    try {
      return s.run(resolve(s.name, s.opts));
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    } catch (const std::out_of_range& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
