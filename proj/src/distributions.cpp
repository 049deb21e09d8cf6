#include "trimlat/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace trimlat {

namespace {

// Lentz continued fraction for the incomplete beta ratio
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction failed to converge");
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("reg_inc_beta: shape must be positive");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("reg_inc_beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                       b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

SiteDistribution SiteDistribution::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform: requires a < b");
  SiteDistribution d;
  d.kind_ = Kind::Uniform;
  d.lo_ = a;
  d.hi_ = b;
  return d;
}

SiteDistribution SiteDistribution::two_point(double v0, double v1, double p) {
  if (v0 == v1) throw std::invalid_argument("two_point: coincident values");
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("two_point: p outside (0, 1)");
  SiteDistribution d;
  d.kind_ = Kind::TwoPoint;
  d.p_ = p;
  d.atoms_ = {{v0, p}, {v1, 1.0 - p}};
  std::sort(d.atoms_.begin(), d.atoms_.end());
  d.lo_ = d.atoms_.front().first;
  d.hi_ = d.atoms_.back().first;
  return d;
}

SiteDistribution SiteDistribution::discrete(std::vector<std::pair<double, double>> atoms) {
  if (atoms.size() < 2) throw std::invalid_argument("discrete: need at least two atoms");
  double sum = 0.0;
  for (auto [v, p] : atoms) {
    (void)v;
    if (!(p > 0.0)) throw std::invalid_argument("discrete: nonpositive probability");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("discrete: weights must sum to 1");
  std::sort(atoms.begin(), atoms.end());
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].first == atoms[i - 1].first) {
      throw std::invalid_argument("discrete: repeated value");
    }
  }
  SiteDistribution d;
  d.kind_ = Kind::Discrete;
  d.atoms_ = std::move(atoms);
  d.lo_ = d.atoms_.front().first;
  d.hi_ = d.atoms_.back().first;
  return d;
}

SiteDistribution SiteDistribution::beta_like(double alpha, double beta, double scale) {
  if (!(alpha >= 1.0) || !(beta >= 1.0)) {
    throw std::invalid_argument("beta_like: shapes must be >= 1");
  }
  if (!(scale > 0.0)) throw std::invalid_argument("beta_like: scale must be positive");
  SiteDistribution d;
  d.kind_ = Kind::BetaLike;
  d.alpha_ = alpha;
  d.beta_ = beta;
  d.lo_ = 0.0;
  d.hi_ = scale;
  return d;
}

SiteDistribution SiteDistribution::point_mass(double v) {
  SiteDistribution d;
  d.kind_ = Kind::PointMass;
  d.atoms_ = {{v, 1.0}};
  d.lo_ = d.hi_ = v;
  return d;
}

bool SiteDistribution::atomic() const { return kind_ != Kind::Uniform && kind_ != Kind::BetaLike; }

double SiteDistribution::concentration(double t) const {
  if (t < 0.0) throw std::invalid_argument("concentration: negative window");
  if (t >= hi_ - lo_) return 1.0;
  switch (kind_) {
    case Kind::Uniform:
      return std::min(t / (hi_ - lo_), 1.0);
    case Kind::PointMass:
      return 1.0;
    case Kind::TwoPoint:
    case Kind::Discrete: {
      // the best window starts at an atom
      double best = 0.0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < atoms_.size(); ++j) {
          if (atoms_[j].first <= atoms_[i].first + t) sum += atoms_[j].second;
        }
        best = std::max(best, sum);
      }
      return best;
    }
    case Kind::BetaLike: {
      // unimodal density: F(a+t) - F(a) is unimodal in a, ternary search
      double lo = 0.0, hi = hi_ - t;
      auto mass = [&](double a) { return cdf(a + t) - cdf(a); };
      for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (mass(m1) < mass(m2)) {
          lo = m1;
        } else {
          hi = m2;
        }
      }
      return mass(0.5 * (lo + hi));
    }
  }
  throw std::logic_error("concentration: unknown kind");
}

double SiteDistribution::cdf(double x) const {
  switch (kind_) {
    case Kind::Uniform:
      return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
    case Kind::BetaLike:
      return reg_inc_beta(alpha_, beta_, std::clamp(x / hi_, 0.0, 1.0));
    case Kind::TwoPoint:
    case Kind::Discrete:
    case Kind::PointMass: {
      double sum = 0.0;
      for (auto [v, p] : atoms_) {
        if (v <= x) sum += p;
      }
      return sum;
    }
  }
  throw std::logic_error("cdf: unknown kind");
}

double SiteDistribution::quantile(double u) const {
  if (!(u >= 0.0) || !(u < 1.0)) throw std::invalid_argument("quantile: u outside [0, 1)");
  switch (kind_) {
    case Kind::Uniform:
      return lo_ + u * (hi_ - lo_);
    case Kind::PointMass:
      return lo_;
    case Kind::TwoPoint:
    case Kind::Discrete: {
      double acc = 0.0;
      for (auto [v, p] : atoms_) {
        acc += p;
        if (u < acc) return v;
      }
      return atoms_.back().first;
    }
    case Kind::BetaLike: {
      double lo = 0.0, hi = hi_;
      for (int i = 0; i < 100 && hi - lo > 1e-15 * hi_; ++i) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) < u ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  throw std::logic_error("quantile: unknown kind");
}

double SiteDistribution::sample(const SiteKeyedRng& rng, std::uint64_t stream,
                                const Site& site) const {
  if (kind_ == Kind::PointMass) return lo_;
  return quantile(rng.uniform(stream, site));
}

std::vector<std::pair<double, double>> SiteDistribution::quadrature(int n) const {
  if (atomic()) return atoms_;
  if (n < 1) throw std::invalid_argument("quadrature: need at least one panel");
  std::vector<std::pair<double, double>> q;
  q.reserve(static_cast<std::size_t>(n));
  double h = (hi_ - lo_) / n;
  for (int i = 0; i < n; ++i) {
    double a = lo_ + i * h, b = a + h;
    q.emplace_back(0.5 * (a + b), cdf(b) - cdf(a));  // panel mass at the midpoint node
  }
  return q;
}

double SiteDistribution::quadrature_error(int n, double tv) const {
  if (atomic()) return 0.0;
  if (n < 1) throw std::invalid_argument("quadrature_error: need at least one panel");
  if (tv < 0.0) throw std::invalid_argument("quadrature_error: negative total variation");
  return (hi_ - lo_) / n / 2.0 * tv;
}

nlohmann::json SiteDistribution::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Uniform:
      j["kind"] = "uniform";
      j["lo"] = lo_;
      j["hi"] = hi_;
      break;
    case Kind::TwoPoint:
      j["kind"] = "two_point";
      j["v0"] = atoms_[0].first;
      j["v1"] = atoms_[1].first;
      j["p"] = atoms_[0].second;
      break;
    case Kind::Discrete:
      j["kind"] = "discrete";
      j["atoms"] = atoms_;
      break;
    case Kind::BetaLike:
      j["kind"] = "beta_like";
      j["alpha"] = alpha_;
      j["beta"] = beta_;
      j["scale"] = hi_;
      break;
    case Kind::PointMass:
      j["kind"] = "point_mass";
      j["value"] = lo_;
      break;
  }
  return j;
}

SiteDistribution SiteDistribution::from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
  if (kind == "two_point") {
    return two_point(j.at("v0").get<double>(), j.at("v1").get<double>(), j.at("p").get<double>());
  }
  if (kind == "discrete") {
    return discrete(j.at("atoms").get<std::vector<std::pair<double, double>>>());
  }
  if (kind == "beta_like") {
    return beta_like(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                     j.at("scale").get<double>());
  }
  if (kind == "point_mass") return point_mass(j.at("value").get<double>());
  throw std::invalid_argument("SiteDistribution: unknown kind " + kind);
}

}  // namespace trimlat
