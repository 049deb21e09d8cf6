#include "trimlat/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

namespace trimlat {

namespace {

std::int64_t positive_mod(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t ipow_checked(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (1ll << 40)) throw std::invalid_argument("cell count overflow");
    r *= base;
  }
  return r;
}

nlohmann::json box_to_json(const BoxRegion& b) {
  return {{"dim", b.dim()},
          {"side", b.side()},
          {"center", b.center()},
          {"open", b.is_open()}};
}

BoxRegion box_from_json(const nlohmann::json& j) {
  return BoxRegion(j.at("dim").get<int>(), j.at("side").get<double>(),
                   j.at("center").get<Site>(), j.value("open", false));
}

}  // namespace

TrimPattern TrimPattern::periodic(int dim, std::int64_t period, std::vector<Site> cell_sites) {
  if (dim < 1) throw std::invalid_argument("TrimPattern: dimension must be positive");
  if (period < 1) throw std::invalid_argument("TrimPattern: period must be positive");
  if (cell_sites.empty()) throw std::invalid_argument("TrimPattern: empty residue set");
  for (auto& s : cell_sites) {
    if (static_cast<int>(s.size()) != dim) {
      throw std::invalid_argument("TrimPattern: residue dimension mismatch");
    }
    for (auto& c : s) c = positive_mod(c, period);
  }
  std::sort(cell_sites.begin(), cell_sites.end());
  cell_sites.erase(std::unique(cell_sites.begin(), cell_sites.end()), cell_sites.end());
  TrimPattern p;
  p.kind_ = Kind::Periodic;
  p.dim_ = dim;
  p.period_ = period;
  p.sites_ = std::move(cell_sites);
  return p;
}

TrimPattern TrimPattern::explicit_set(int dim, std::vector<Site> sites, BoxRegion window) {
  if (dim < 1) throw std::invalid_argument("TrimPattern: dimension must be positive");
  if (window.dim() != dim) throw std::invalid_argument("TrimPattern: window dimension mismatch");
  for (const auto& s : sites) {
    if (static_cast<int>(s.size()) != dim) {
      throw std::invalid_argument("TrimPattern: site dimension mismatch");
    }
    if (!window.contains(s)) {
      throw std::invalid_argument("TrimPattern: site " + format_site(s) + " outside the window");
    }
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  TrimPattern p;
  p.kind_ = Kind::Explicit;
  p.dim_ = dim;
  p.sites_ = std::move(sites);
  p.window_ = std::move(window);
  return p;
}

std::int64_t TrimPattern::period() const {
  if (kind_ != Kind::Periodic) throw std::logic_error("TrimPattern: not a periodic pattern");
  return period_;
}

const BoxRegion& TrimPattern::window() const {
  if (kind_ != Kind::Explicit) throw std::logic_error("TrimPattern: periodic patterns are global");
  return *window_;
}

bool TrimPattern::contains(const Site& s) const {
  if (static_cast<int>(s.size()) != dim_) {
    throw std::invalid_argument("TrimPattern: site dimension mismatch");
  }
  if (kind_ == Kind::Periodic) {
    Site r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = positive_mod(s[i], period_);
    return std::binary_search(sites_.begin(), sites_.end(), r);
  }
  if (!window_->contains(s)) {
    throw std::out_of_range("TrimPattern: site " + format_site(s) + " outside the window");
  }
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

std::vector<Site> TrimPattern::sites_in(const BoxRegion& box) const {
  if (box.dim() != dim_) throw std::invalid_argument("TrimPattern: box dimension mismatch");
  std::vector<Site> out;
  if (kind_ == Kind::Explicit) {
    for (int i = 0; i < dim_; ++i) {
      if (box.lo(i) < window_->lo(i) || box.hi(i) > window_->hi(i)) {
        throw std::out_of_range("TrimPattern: box leaves the pattern window");
      }
    }
    for (const auto& s : sites_) {
      if (box.contains(s)) out.push_back(s);
    }
    return out;
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    auto s = box.site_at(i);
    if (contains(s)) out.push_back(std::move(s));
  }
  return out;
}

TrimPattern::DensityCheck TrimPattern::check_relatively_dense(std::int64_t K,
                                                              std::int64_t Q) const {
  if (K < 1) throw std::invalid_argument("density check: K must be positive");
  if (Q < 1 || Q > ipow_checked(K, dim_)) {
    throw std::invalid_argument("density check: Q must lie in [1, K^d]");
  }

  DensityCheck res;
  res.min_count = std::numeric_limits<std::int64_t>::max();

  auto count_cell = [&](const Site& center) {
    auto cell = BoxRegion::open(dim_, static_cast<double>(K), center);
    std::int64_t n = 0;
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (contains(cell.site_at(i))) ++n;
    }
    return n;
  };

  std::vector<Site> centers;
  if (kind_ == Kind::Periodic) {
    const std::int64_t l = std::lcm(period_, K);
    const std::int64_t reps = l / K;
    if (ipow_checked(reps, dim_) > 1000000) {
      throw std::invalid_argument("density check: lcm(period, K) grid too large");
    }
    Site c(dim_, 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == dim_) {
        centers.push_back(c);
        return;
      }
      for (std::int64_t r = 0; r < reps; ++r) {
        c[axis] = r * K;
        rec(axis + 1);
      }
    };
    rec(0);
  } else {
    // cell centers whose closed K-cell fits inside the window
    std::vector<std::vector<std::int64_t>> axis_centers(dim_);
    const std::int64_t reach = K / 2;  // closed-cell reach each way
    for (int i = 0; i < dim_; ++i) {
      for (std::int64_t z = window_->lo(i) + reach; z + reach <= window_->hi(i); ++z) {
        if (z % K == 0) axis_centers[i].push_back(z);
      }
      if (axis_centers[i].empty()) {
        throw std::invalid_argument("density check: window holds no full cell");
      }
    }
    Site c(dim_, 0);
    std::function<void(int)> rec = [&](int axis) {
      if (axis == dim_) {
        centers.push_back(c);
        return;
      }
      for (auto z : axis_centers[axis]) {
        c[axis] = z;
        rec(axis + 1);
      }
    };
    rec(0);
    res.window_local = true;
  }

  res.ok = true;
  for (const auto& center : centers) {
    auto n = count_cell(center);
    res.min_count = std::min(res.min_count, n);
    if (n < Q && !res.violating_cell) {
      res.ok = false;
      res.violating_cell = center;
    }
  }
  return res;
}

void TrimPattern::declare_density(std::int64_t K, std::int64_t Q) {
  auto c = check_relatively_dense(K, Q);
  if (!c.ok) {
    throw std::invalid_argument("declare_density: cell at " + format_site(*c.violating_cell) +
                                " holds " + std::to_string(c.min_count) + " < " +
                                std::to_string(Q) + " sites");
  }
  declared_k_ = K;
  declared_q_ = Q;
}

nlohmann::json TrimPattern::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  if (kind_ == Kind::Periodic) {
    j["type"] = "periodic";
    j["period"] = period_;
    j["base"] = sites_;
  } else {
    j["type"] = "explicit";
    j["sites"] = sites_;
    j["window"] = box_to_json(*window_);
  }
  if (declared_k_) j["K"] = *declared_k_;
  if (declared_q_) j["Q"] = *declared_q_;
  return j;
}

TrimPattern TrimPattern::from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  TrimPattern p;
  if (type == "periodic") {
    p = periodic(j.at("dim").get<int>(), j.at("period").get<std::int64_t>(),
                 j.at("base").get<std::vector<Site>>());
  } else if (type == "explicit") {
    p = explicit_set(j.at("dim").get<int>(), j.at("sites").get<std::vector<Site>>(),
                     box_from_json(j.at("window")));
  } else {
    throw std::invalid_argument("TrimPattern: unknown type " + type);
  }
  if (j.contains("K") && j.contains("Q")) {
    p.declare_density(j.at("K").get<std::int64_t>(), j.at("Q").get<std::int64_t>());
  }
  return p;
}

}  // namespace trimlat
