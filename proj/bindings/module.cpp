// Python bindings for the core operations: box/pattern geometry, operator
// assembly, ground energies and eigenvalue counts, analytic bounds,
// boundary-ratio minimization, disorder experiments, and the verification
// battery.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trimlat/anderson.hpp"
#include "trimlat/bounds.hpp"
#include "trimlat/cheeger.hpp"
#include "trimlat/io.hpp"
#include "trimlat/spectra.hpp"
#include "trimlat/verify.hpp"

namespace py = pybind11;
using namespace trimlat;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trimmed lattice operators: spectral gaps, positivity, disorder experiments";

  // geometry
  m.def("k_star", &k_star, py::arg("K"), "Smallest odd integer >= K");
  m.def("format_site", &format_site, py::arg("site"));

  py::class_<BoxRegion>(m, "BoxRegion")
      .def_static("closed", &BoxRegion::closed, py::arg("dim"), py::arg("side"),
                  py::arg("center") = Site{})
      .def_static("open", &BoxRegion::open, py::arg("dim"), py::arg("side"),
                  py::arg("center") = Site{})
      .def_property_readonly("dim", &BoxRegion::dim)
      .def_property_readonly("side", &BoxRegion::side)
      .def("__len__", &BoxRegion::size)
      .def("contains", &BoxRegion::contains, py::arg("site"))
      .def("index_of", &BoxRegion::index_of, py::arg("site"))
      .def("site_at", &BoxRegion::site_at, py::arg("index"))
      .def("sites", &BoxRegion::sites)
      .def("lo", &BoxRegion::lo, py::arg("axis"))
      .def("hi", &BoxRegion::hi, py::arg("axis"));

  py::class_<TrimPattern::DensityCheck>(m, "DensityCheck")
      .def_readonly("ok", &TrimPattern::DensityCheck::ok)
      .def_readonly("violating_cell", &TrimPattern::DensityCheck::violating_cell)
      .def_readonly("min_count", &TrimPattern::DensityCheck::min_count)
      .def_readonly("window_local", &TrimPattern::DensityCheck::window_local);

  py::class_<TrimPattern>(m, "TrimPattern")
      .def_static("periodic", &TrimPattern::periodic, py::arg("dim"), py::arg("period"),
                  py::arg("cell_sites"))
      .def_static("explicit_set", &TrimPattern::explicit_set, py::arg("dim"), py::arg("sites"),
                  py::arg("window"))
      .def_property_readonly("dim", &TrimPattern::dim)
      .def("contains", &TrimPattern::contains, py::arg("site"))
      .def("sites_in", &TrimPattern::sites_in, py::arg("box"))
      .def("check_relatively_dense", &TrimPattern::check_relatively_dense, py::arg("K"),
           py::arg("Q"))
      .def("declare_density", &TrimPattern::declare_density, py::arg("K"), py::arg("Q"))
      .def_property_readonly("declared_k", &TrimPattern::declared_k)
      .def_property_readonly("declared_q", &TrimPattern::declared_q);

  py::class_<Potential>(m, "Potential")
      .def_static("zero", &Potential::zero, py::arg("dim") = 1)
      .def_static("periodic", &Potential::periodic, py::arg("dim"), py::arg("period"),
                  py::arg("cell_values"))
      .def("__call__", &Potential::operator(), py::arg("site"))
      .def("spread", &Potential::spread, py::arg("window"))
      .def_property_readonly("dim", &Potential::dim);

  // operators
  py::enum_<OperatorKind>(m, "OperatorKind")
      .value("Full", OperatorKind::Full)
      .value("Trimmed", OperatorKind::Trimmed)
      .value("Penalized", OperatorKind::Penalized);

  py::class_<LatticeOperator>(m, "LatticeOperator")
      .def("__len__", &LatticeOperator::size)
      .def_property_readonly("dim", &LatticeOperator::dim)
      .def_property_readonly("kind", &LatticeOperator::op_kind)
      .def_property_readonly("penalty", &LatticeOperator::penalty)
      .def("sites", &LatticeOperator::sites)
      .def("dense", &LatticeOperator::dense)
      .def("matrix", [](const LatticeOperator& op) { return LatticeOperator::Sparse(op.matrix()); })
      .def("apply", &LatticeOperator::apply, py::arg("x"))
      .def("quadratic_form", &LatticeOperator::quadratic_form, py::arg("x"))
      .def("norm_inf", &LatticeOperator::norm_inf)
      .def("with_diagonal_added", &LatticeOperator::with_diagonal_added, py::arg("add"));

  m.def("assemble", &assemble, py::arg("box"), py::arg("v"), py::arg("kind"),
        py::arg("gamma") = nullptr, py::arg("t") = 0.0,
        py::keep_alive<0, 4>());

  // spectra
  py::class_<SolverInfo>(m, "SolverInfo")
      .def_readonly("method", &SolverInfo::method)
      .def_readonly("iterations", &SolverInfo::iterations)
      .def_readonly("residual", &SolverInfo::residual);

  m.def(
      "ground_energy",
      [](const LatticeOperator& op, double tol) {
        SolverInfo info;
        double e = ground_energy(op, tol, &info);
        return py::make_tuple(e, info);
      },
      py::arg("op"), py::arg("tol") = 1e-10);

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("energy", &GroundState::energy)
      .def_readonly("psi", &GroundState::psi)
      .def_readonly("min_psi", &GroundState::min_psi)
      .def_readonly("ucp_floor", &GroundState::ucp_floor)
      .def_readonly("ucp_ok", &GroundState::ucp_ok)
      .def_readonly("graph_margin", &GroundState::graph_margin)
      .def_readonly("graph_ok", &GroundState::graph_ok);

  m.def("ground_state_pf", &ground_state_pf, py::arg("op"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 2000000);

  m.def(
      "count_eigs",
      [](const LatticeOperator& op, double a, double b) { return count_eigs(op, a, b); },
      py::arg("op"), py::arg("a"), py::arg("b"),
      "Exact number of eigenvalues in [a, b] by LDL^T inertia");

  py::class_<EnergyCurve>(m, "EnergyCurve")
      .def_readonly("t", &EnergyCurve::t)
      .def_readonly("energy", &EnergyCurve::energy)
      .def_readonly("fd_slope", &EnergyCurve::fd_slope)
      .def_readonly("gap", &EnergyCurve::gap)
      .def("derivative_bounds", &EnergyCurve::derivative_bounds)
      .def("csv", [](const EnergyCurve& c, bool timestamp) {
        std::ostringstream os;
        c.write_csv(os, timestamp);
        return os.str();
      }, py::arg("timestamp") = false);

  m.def("energy_curve", &energy_curve, py::arg("box"), py::arg("v"), py::arg("gamma"),
        py::arg("t_grid"), py::arg("tol") = 1e-10);
  m.def("default_t_grid", &default_t_grid, py::arg("t_max"), py::arg("dt") = 0.05);

  // analytic bounds
  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](int d, std::int64_t K, std::int64_t Q, double spr_v) {
             ModelParams p{d, K, Q, spr_v};
             p.validate();
             return p;
           }),
           py::arg("d"), py::arg("K"), py::arg("Q"), py::arg("spr_v") = 0.0)
      .def_readonly("d", &ModelParams::d)
      .def_readonly("K", &ModelParams::K)
      .def_readonly("Q", &ModelParams::Q)
      .def_readonly("spr_v", &ModelParams::spr_v)
      .def("y", &ModelParams::y);

  py::class_<ScaledValue>(m, "ScaledValue")
      .def_readonly("mantissa", &ScaledValue::mantissa)
      .def_readonly("exp10", &ScaledValue::exp10)
      .def("as_double", &ScaledValue::as_double)
      .def("__str__", &ScaledValue::str);

  m.def("delta_lower", &delta_lower, py::arg("params"));
  m.def("delta_lower_scaled", &delta_lower_scaled, py::arg("params"));
  m.def("delta_t_lower", &delta_t_lower, py::arg("params"), py::arg("t"));
  m.def("cheeger_free_lower", &cheeger_free_lower, py::arg("d"), py::arg("K"));
  m.def("t_large_lower", &t_large_lower, py::arg("d"), py::arg("K"), py::arg("t"));
  m.def("combined_t_lower", &combined_t_lower, py::arg("d"), py::arg("K"), py::arg("t"));

  py::class_<Sandwich>(m, "Sandwich")
      .def_readonly("lower_15", &Sandwich::lower_15)
      .def_readonly("lower_210", &Sandwich::lower_210)
      .def_readonly("upper", &Sandwich::upper);
  m.def("sandwich_t", &sandwich_t, py::arg("params"), py::arg("t"), py::arg("delta_measured"));

  py::class_<KappaBound>(m, "KappaBound")
      .def_readonly("s0", &KappaBound::s0)
      .def_readonly("z", &KappaBound::z)
      .def_readonly("kappa_lb", &KappaBound::kappa_lb)
      .def_readonly("witness_s", &KappaBound::witness_s);
  m.def("kappa_lower", &kappa_lower, py::arg("params"), py::arg("e0"), py::arg("e1"));

  // boundary ratios
  py::enum_<BetaMode>(m, "BetaMode")
      .value("Trimmed", BetaMode::Trimmed)
      .value("Penalized", BetaMode::Penalized);

  m.def("beta_of_set", &beta_of_set, py::arg("a"), py::arg("dim"), py::arg("gamma"),
        py::arg("mode"), py::arg("t") = 0.0);

  py::class_<CheegerResult>(m, "CheegerResult")
      .def_readonly("beta", &CheegerResult::beta)
      .def_readonly("minimizer", &CheegerResult::minimizer)
      .def_readonly("sets_enumerated", &CheegerResult::sets_enumerated)
      .def_readonly("exhaustive", &CheegerResult::exhaustive);

  m.def("beta_bruteforce", &beta_bruteforce, py::arg("window"), py::arg("gamma"), py::arg("mode"),
        py::arg("t") = 0.0, py::arg("max_cardinality") = py::none());

  py::class_<IsoperimetricCheck>(m, "IsoperimetricCheck")
      .def_readonly("boundary_size", &IsoperimetricCheck::boundary_size)
      .def_readonly("floor", &IsoperimetricCheck::floor)
      .def_readonly("ok", &IsoperimetricCheck::ok);
  m.def("isoperimetric_check", &isoperimetric_check, py::arg("a"), py::arg("dim"),
        py::arg("gamma"), py::arg("K"));

  // disorder
  py::class_<SiteKeyedRng>(m, "SiteKeyedRng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("bits", &SiteKeyedRng::bits, py::arg("stream"), py::arg("site"))
      .def("uniform", &SiteKeyedRng::uniform, py::arg("stream"), py::arg("site"));

  py::class_<SiteDistribution>(m, "SiteDistribution")
      .def_static("uniform", &SiteDistribution::uniform, py::arg("a"), py::arg("b"))
      .def_static("two_point", &SiteDistribution::two_point, py::arg("v0"), py::arg("v1"),
                  py::arg("p"))
      .def_static("discrete", &SiteDistribution::discrete, py::arg("atoms"))
      .def_static("beta_like", &SiteDistribution::beta_like, py::arg("alpha"), py::arg("beta"),
                  py::arg("scale"))
      .def_static("point_mass", &SiteDistribution::point_mass, py::arg("v"))
      .def("lo", &SiteDistribution::lo)
      .def("hi", &SiteDistribution::hi)
      .def("cdf", &SiteDistribution::cdf, py::arg("x"))
      .def("quantile", &SiteDistribution::quantile, py::arg("u"))
      .def("concentration", &SiteDistribution::concentration, py::arg("t"));

  py::class_<AndersonModel>(m, "AndersonModel")
      .def(py::init<>())
      .def_readwrite("d", &AndersonModel::d)
      .def_readwrite("v0", &AndersonModel::v0)
      .def_readwrite("gamma", &AndersonModel::gamma)
      .def_readwrite("lambda_", &AndersonModel::lambda)
      .def_readwrite("dist", &AndersonModel::dist)
      .def("validate", &AndersonModel::validate)
      .def("params", &AndersonModel::params, py::arg("box"));

  m.def("disorder_on_box", &disorder_on_box, py::arg("model"), py::arg("box"), py::arg("seed"),
        py::arg("sample_index"));
  m.def("sample", &sample, py::arg("model"), py::arg("box"), py::arg("seed"),
        py::arg("sample_index") = 0);

  py::class_<KappaScan>(m, "KappaScan")
      .def_readonly("kappa", &KappaScan::kappa)
      .def_readonly("s_at", &KappaScan::s_at)
      .def_readonly("table", &KappaScan::table);
  m.def("kappa_scan", &kappa_scan, py::arg("model"), py::arg("box"), py::arg("e1"),
        py::arg("n_grid") = 60, py::arg("s_lo") = 1e-2, py::arg("s_hi") = 1e3);

  py::enum_<KappaMode>(m, "KappaMode")
      .value("Analytic", KappaMode::Analytic)
      .value("Numeric", KappaMode::Numeric);

  py::class_<WegnerReport>(m, "WegnerReport")
      .def_readonly("e1", &WegnerReport::e1)
      .def_readonly("interval", &WegnerReport::interval)
      .def_readonly("n_samples", &WegnerReport::n_samples)
      .def_readonly("mean", &WegnerReport::mean)
      .def_readonly("std_error", &WegnerReport::std_error)
      .def_readonly("bound_rhs", &WegnerReport::bound_rhs)
      .def_readonly("kappa", &WegnerReport::kappa)
      .def_readonly("kappa_mode", &WegnerReport::kappa_mode)
      .def_readonly("s_value", &WegnerReport::s_value)
      .def_readonly("gamma_count", &WegnerReport::gamma_count)
      .def_readonly("e_empty_box", &WegnerReport::e_empty_box)
      .def_readonly("e_trimmed_box", &WegnerReport::e_trimmed_box)
      .def_readonly("certified_ceiling", &WegnerReport::certified_ceiling)
      .def_readonly("e1_validity", &WegnerReport::e1_validity)
      .def_readonly("running_mean", &WegnerReport::running_mean)
      .def_readonly("passed", &WegnerReport::pass);

  m.def("wegner_experiment", &wegner_experiment, py::arg("model"), py::arg("box"), py::arg("e1"),
        py::arg("interval"), py::arg("n_samples"), py::arg("seed"),
        py::arg("mode") = KappaMode::Numeric);

  py::class_<PvpSample>(m, "PvpSample")
      .def_readonly("index", &PvpSample::index)
      .def_readonly("rank", &PvpSample::rank)
      .def_readonly("min_eig", &PvpSample::min_eig)
      .def_readonly("ok", &PvpSample::ok);

  py::class_<PvpReport>(m, "PvpReport")
      .def_readonly("e1", &PvpReport::e1)
      .def_readonly("kappa_lb", &PvpReport::kappa_lb)
      .def_readonly("kappa_mode", &PvpReport::kappa_mode)
      .def_readonly("n_samples", &PvpReport::n_samples)
      .def_readonly("nonvacuous", &PvpReport::nonvacuous)
      .def_readonly("violations", &PvpReport::violations)
      .def_readonly("min_eig_overall", &PvpReport::min_eig_overall)
      .def_readonly("samples", &PvpReport::samples)
      .def_readonly("passed", &PvpReport::pass);

  m.def("pvp_check", &pvp_check, py::arg("model"), py::arg("box"), py::arg("e0_ref"),
        py::arg("e1"), py::arg("n_samples"), py::arg("seed"),
        py::arg("mode") = KappaMode::Analytic, py::arg("tol") = 1e-8);

  py::class_<SpecAvgReport>(m, "SpecAvgReport")
      .def_readonly("site", &SpecAvgReport::site)
      .def_readonly("interval", &SpecAvgReport::interval)
      .def_readonly("integral", &SpecAvgReport::integral)
      .def_readonly("bound", &SpecAvgReport::bound)
      .def_readonly("error_term", &SpecAvgReport::error_term)
      .def_readonly("tv_grid", &SpecAvgReport::tv_grid)
      .def_readonly("nodes", &SpecAvgReport::nodes)
      .def_readonly("passed", &SpecAvgReport::pass);

  m.def("spectral_averaging_check", &spectral_averaging_check, py::arg("model"), py::arg("box"),
        py::arg("zeta"), py::arg("interval"), py::arg("nodes") = 512, py::arg("seed") = 1,
        py::arg("sample_index") = 0);

  py::class_<GsmcRow>(m, "GsmcRow")
      .def_readonly("L", &GsmcRow::L)
      .def_readonly("n_sites", &GsmcRow::n_sites)
      .def_readonly("base_energy", &GsmcRow::base_energy)
      .def_readonly("min", &GsmcRow::min)
      .def_readonly("q25", &GsmcRow::q25)
      .def_readonly("median", &GsmcRow::median)
      .def_readonly("q75", &GsmcRow::q75)
      .def_readonly("max", &GsmcRow::max)
      .def_readonly("mean", &GsmcRow::mean);

  py::class_<GsmcReport>(m, "GsmcReport")
      .def_readonly("rows", &GsmcReport::rows)
      .def_readonly("n_samples", &GsmcReport::n_samples)
      .def_readonly("e0_extrapolated", &GsmcReport::e0_extrapolated)
      .def_readonly("medians_monotone", &GsmcReport::medians_monotone)
      .def_readonly("min_overall", &GsmcReport::min_overall)
      .def_readonly("min_above_base", &GsmcReport::min_above_base);

  m.def("ground_energy_mc", &ground_energy_mc, py::arg("model"), py::arg("l_list"),
        py::arg("n_samples"), py::arg("seed"));

  // verification battery
  py::enum_<VerifyLevel>(m, "VerifyLevel")
      .value("Fast", VerifyLevel::Fast)
      .value("Full", VerifyLevel::Full);

  py::class_<CriterionResult>(m, "CriterionResult")
      .def_readonly("id", &CriterionResult::id)
      .def_readonly("name", &CriterionResult::name)
      .def_readonly("passed", &CriterionResult::pass)
      .def_readonly("detail", &CriterionResult::detail)
      .def_readonly("seconds", &CriterionResult::seconds);

  m.def(
      "run_acceptance",
      [](VerifyLevel level) {
        std::ostringstream log;
        auto results = run_acceptance(level, log);
        return py::make_tuple(results, log.str());
      },
      py::arg("level") = VerifyLevel::Fast,
      "Runs the criteria battery; returns (results, progress_log)");

  m.def("fmt_real", &fmt_real, py::arg("v"), "17-significant-digit formatting");
}
