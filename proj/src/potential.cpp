#include "trimlat/potential.hpp"

#include <algorithm>
#include <limits>

#include <nlohmann/json.hpp>

namespace trimlat {

namespace {

std::int64_t positive_mod(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::size_t cell_count(int dim, std::int64_t period) {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) {
    if (n > (1ull << 40)) throw std::invalid_argument("Potential: period cell too large");
    n *= static_cast<std::size_t>(period);
  }
  return n;
}

}  // namespace

Potential Potential::zero(int dim) {
  if (dim < 1) throw std::invalid_argument("Potential: dimension must be positive");
  Potential p;
  p.kind_ = Kind::Zero;
  p.dim_ = dim;
  return p;
}

Potential Potential::periodic(int dim, std::int64_t period, std::vector<double> cell_values) {
  if (dim < 1) throw std::invalid_argument("Potential: dimension must be positive");
  if (period < 1) throw std::invalid_argument("Potential: period must be positive");
  if (cell_values.size() != cell_count(dim, period)) {
    throw std::invalid_argument("Potential: expected period^d cell values");
  }
  Potential p;
  p.kind_ = Kind::Periodic;
  p.dim_ = dim;
  p.period_ = period;
  p.cell_values_ = std::move(cell_values);
  return p;
}

Potential Potential::explicit_map(int dim, std::unordered_map<Site, double, SiteHash> values,
                                  BoxRegion window) {
  if (dim < 1) throw std::invalid_argument("Potential: dimension must be positive");
  if (window.dim() != dim) throw std::invalid_argument("Potential: window dimension mismatch");
  for (const auto& [s, v] : values) {
    (void)v;
    if (!window.contains(s)) {
      throw std::invalid_argument("Potential: site " + format_site(s) + " outside the window");
    }
  }
  Potential p;
  p.kind_ = Kind::Explicit;
  p.dim_ = dim;
  p.map_ = std::move(values);
  p.window_ = std::move(window);
  return p;
}

Potential Potential::callback(int dim, std::function<double(const Site&)> fn) {
  if (dim < 1) throw std::invalid_argument("Potential: dimension must be positive");
  if (!fn) throw std::invalid_argument("Potential: empty callback");
  Potential p;
  p.kind_ = Kind::Callback;
  p.dim_ = dim;
  p.fn_ = std::move(fn);
  return p;
}

double Potential::operator()(const Site& s) const {
  if (static_cast<int>(s.size()) != dim_) {
    throw std::invalid_argument("Potential: site dimension mismatch");
  }
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Periodic: {
      std::size_t idx = 0;
      for (int i = 0; i < dim_; ++i) {
        idx = idx * static_cast<std::size_t>(period_) +
              static_cast<std::size_t>(positive_mod(s[i], period_));
      }
      return cell_values_[idx];
    }
    case Kind::Explicit: {
      if (!window_->contains(s)) {
        throw std::out_of_range("Potential: site " + format_site(s) + " outside the window");
      }
      auto it = map_.find(s);
      return it == map_.end() ? 0.0 : it->second;
    }
    case Kind::Callback:
      return fn_(s);
  }
  return 0.0;
}

double Potential::sup(const BoxRegion& window) const {
  if (kind_ == Kind::Zero) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < window.size(); ++i) {
    best = std::max(best, (*this)(window.site_at(i)));
  }
  return best;
}

double Potential::inf(const BoxRegion& window) const {
  if (kind_ == Kind::Zero) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < window.size(); ++i) {
    best = std::min(best, (*this)(window.site_at(i)));
  }
  return best;
}

double Potential::spread(const BoxRegion& window) const {
  if (kind_ == Kind::Zero || kind_ == Kind::Periodic) return global_spread();
  return sup(window) - inf(window);
}

double Potential::global_spread() const {
  if (kind_ == Kind::Zero) return 0.0;
  if (kind_ != Kind::Periodic) {
    throw std::logic_error("Potential: global spread needs a periodic potential");
  }
  auto [lo, hi] = std::minmax_element(cell_values_.begin(), cell_values_.end());
  return *hi - *lo;
}

nlohmann::json Potential::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  switch (kind_) {
    case Kind::Zero:
      j["type"] = "zero";
      break;
    case Kind::Periodic:
      j["type"] = "periodic";
      j["period"] = period_;
      j["values"] = cell_values_;
      break;
    case Kind::Explicit: {
      j["type"] = "explicit";
      nlohmann::json entries = nlohmann::json::array();
      std::vector<Site> keys;
      keys.reserve(map_.size());
      for (const auto& [s, v] : map_) {
        (void)v;
        keys.push_back(s);
      }
      std::sort(keys.begin(), keys.end());
      for (const auto& s : keys) entries.push_back({{"site", s}, {"value", map_.at(s)}});
      j["entries"] = std::move(entries);
      j["window"] = {{"dim", window_->dim()},
                     {"side", window_->side()},
                     {"center", window_->center()},
                     {"open", window_->is_open()}};
      break;
    }
    case Kind::Callback:
      throw std::logic_error("Potential: callbacks are not serializable");
  }
  return j;
}

Potential Potential::from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  const int dim = j.at("dim").get<int>();
  if (type == "zero") return zero(dim);
  if (type == "periodic") {
    return periodic(dim, j.at("period").get<std::int64_t>(),
                    j.at("values").get<std::vector<double>>());
  }
  if (type == "explicit") {
    const auto& w = j.at("window");
    BoxRegion window(w.at("dim").get<int>(), w.at("side").get<double>(),
                     w.at("center").get<Site>(), w.value("open", false));
    std::unordered_map<Site, double, SiteHash> values;
    for (const auto& e : j.at("entries")) {
      values[e.at("site").get<Site>()] = e.at("value").get<double>();
    }
    return explicit_map(dim, std::move(values), std::move(window));
  }
  throw std::invalid_argument("Potential: unknown type " + type);
}

double y_const(int d, double spread_v) {
  if (d < 1) throw std::invalid_argument("y_const: dimension must be positive");
  if (spread_v < 0.0) throw std::invalid_argument("y_const: spread must be nonnegative");
  return 2.0 * d + 1.0 + spread_v;
}

}  // namespace trimlat
