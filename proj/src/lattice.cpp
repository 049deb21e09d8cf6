#include "trimlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace trimlat {

std::size_t SiteHash::operator()(const Site& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.size();
  for (auto c : s) {
    std::uint64_t z = h + 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(c);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    h = z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

std::string format_site(const Site& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << " ";
    os << s[i];
  }
  os << ")";
  return os.str();
}

std::int64_t k_star(std::int64_t K) {
  if (K < 1) throw std::invalid_argument("k_star: K must be positive");
  return K % 2 == 1 ? K : K + 1;
}

BoxRegion::BoxRegion(int dim, double side, Site center, bool open)
    : dim_(dim), side_(side), open_(open), center_(std::move(center)) {
  if (dim < 1) throw std::invalid_argument("BoxRegion: dimension must be positive");
  if (!(side > 0.0)) throw std::invalid_argument("BoxRegion: side must be positive");
  if (center_.empty()) center_.assign(dim, 0);
  if (static_cast<int>(center_.size()) != dim) {
    throw std::invalid_argument("BoxRegion: center dimension mismatch");
  }
  const double h = side / 2.0;
  lo_.resize(dim);
  hi_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    double lo = center_[i] - h;
    double hi = center_[i] + h;
    if (open_) {
      lo_[i] = static_cast<std::int64_t>(std::floor(lo)) + 1;
      hi_[i] = static_cast<std::int64_t>(std::ceil(hi)) - 1;
    } else {
      lo_[i] = static_cast<std::int64_t>(std::ceil(lo));
      hi_[i] = static_cast<std::int64_t>(std::floor(hi));
    }
  }
  stride_.assign(dim, 1);
  for (int i = dim - 2; i >= 0; --i) {
    stride_[i] = stride_[i + 1] * static_cast<std::size_t>(extent(i + 1));
  }
}

BoxRegion BoxRegion::closed(int dim, double side, Site center) {
  return BoxRegion(dim, side, std::move(center), false);
}

BoxRegion BoxRegion::open(int dim, double side, Site center) {
  return BoxRegion(dim, side, std::move(center), true);
}

std::size_t BoxRegion::size() const {
  std::size_t n = 1;
  for (int i = 0; i < dim_; ++i) n *= static_cast<std::size_t>(extent(i));
  return n;
}

bool BoxRegion::contains(const Site& s) const {
  if (static_cast<int>(s.size()) != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (s[i] < lo_[i] || s[i] > hi_[i]) return false;
  }
  return true;
}

std::size_t BoxRegion::index_of(const Site& s) const {
  auto idx = find(s);
  if (!idx) throw std::out_of_range("BoxRegion::index_of: site " + format_site(s) + " not in box");
  return *idx;
}

std::optional<std::size_t> BoxRegion::find(const Site& s) const {
  if (!contains(s)) return std::nullopt;
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i) {
    idx += static_cast<std::size_t>(s[i] - lo_[i]) * stride_[i];
  }
  return idx;
}

Site BoxRegion::site_at(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("BoxRegion::site_at: index out of range");
  Site s(dim_);
  for (int i = 0; i < dim_; ++i) {
    s[i] = lo_[i] + static_cast<std::int64_t>(index / stride_[i]);
    index %= stride_[i];
  }
  return s;
}

std::vector<Site> BoxRegion::sites() const {
  std::vector<Site> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(site_at(i));
  return out;
}

bool BoxRegion::operator==(const BoxRegion& o) const {
  return dim_ == o.dim_ && lo_ == o.lo_ && hi_ == o.hi_;
}

namespace {

std::vector<Site> neighbors(const Site& s, int dim) {
  std::vector<Site> out;
  out.reserve(2 * static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int sg : {-1, +1}) {
      Site q = s;
      q[i] += sg;
      out.push_back(std::move(q));
    }
  }
  return out;
}

std::vector<Site> dedup_sorted(const std::vector<Site>& a, int dim) {
  for (const auto& s : a) {
    if (static_cast<int>(s.size()) != dim) {
      throw std::invalid_argument("site dimension mismatch");
    }
  }
  std::vector<Site> set = a;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

BoundaryData boundary(const std::vector<Site>& a, int dim) {
  BoundaryData bd;
  bd.set = dedup_sorted(a, dim);
  std::unordered_set<Site, SiteHash> in(bd.set.begin(), bd.set.end());
  bd.eta.assign(bd.set.size(), 0);
  std::unordered_set<Site, SiteHash> outer;
  for (std::size_t i = 0; i < bd.set.size(); ++i) {
    for (int ax = 0; ax < dim; ++ax) {
      for (int sg : {-1, +1}) {
        Site q = bd.set[i];
        q[ax] += sg;
        if (!in.count(q)) {
          bd.edges.emplace_back(bd.set[i], q);
          ++bd.eta[i];
          outer.insert(std::move(q));
        }
      }
    }
  }
  std::sort(bd.edges.begin(), bd.edges.end());
  for (std::size_t i = 0; i < bd.set.size(); ++i) {
    if (bd.eta[i] > 0) bd.inner.push_back(bd.set[i]);
  }
  bd.outer.assign(outer.begin(), outer.end());
  std::sort(bd.outer.begin(), bd.outer.end());
  return bd;
}

std::int64_t internal_edges(const std::vector<Site>& a, int dim) {
  auto set = dedup_sorted(a, dim);
  std::unordered_set<Site, SiteHash> in(set.begin(), set.end());
  std::int64_t count = 0;
  for (const auto& s : set) {
    for (int ax = 0; ax < dim; ++ax) {
      Site q = s;
      q[ax] += 1;  // count each edge once
      if (in.count(q)) ++count;
    }
  }
  return count;
}

namespace {

std::int64_t bfs_distance(const std::unordered_set<Site, SiteHash>& in, const Site& x,
                          const Site& y, int dim) {
  if (!in.count(x) || !in.count(y)) {
    throw std::invalid_argument("graph_distance: endpoint not in the set");
  }
  if (x == y) return 0;
  std::unordered_map<Site, std::int64_t, SiteHash> dist;
  dist[x] = 0;
  std::deque<Site> q{x};
  while (!q.empty()) {
    Site cur = q.front();
    q.pop_front();
    std::int64_t d = dist[cur];
    for (auto& nb : neighbors(cur, dim)) {
      if (!in.count(nb) || dist.count(nb)) continue;
      if (nb == y) return d + 1;
      dist[nb] = d + 1;
      q.push_back(std::move(nb));
    }
  }
  throw std::invalid_argument("graph_distance: sites not connected within the set");
}

}  // namespace

std::int64_t graph_distance(const std::vector<Site>& sites, const Site& x, const Site& y,
                            int dim) {
  auto set = dedup_sorted(sites, dim);
  std::unordered_set<Site, SiteHash> in(set.begin(), set.end());
  return bfs_distance(in, x, y, dim);
}

std::int64_t graph_distance(const BoxRegion& box, const Site& x, const Site& y) {
  // full boxes are l1-convex
  if (!box.contains(x) || !box.contains(y)) {
    throw std::invalid_argument("graph_distance: endpoint not in the box");
  }
  std::int64_t d = 0;
  for (int i = 0; i < box.dim(); ++i) d += std::llabs(x[i] - y[i]);
  return d;
}

std::int64_t graph_diameter(const std::vector<Site>& sites, int dim) {
  auto set = dedup_sorted(sites, dim);
  std::unordered_set<Site, SiteHash> in(set.begin(), set.end());
  std::int64_t best = 0;
  for (const auto& s : set) {
    for (const auto& t : set) {
      if (s < t) best = std::max(best, bfs_distance(in, s, t, dim));
    }
  }
  return best;
}

std::int64_t graph_diameter(const BoxRegion& box) {
  std::int64_t d = 0;
  for (int i = 0; i < box.dim(); ++i) d += box.hi(i) - box.lo(i);
  return d;
}

}  // namespace trimlat
