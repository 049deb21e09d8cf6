#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trimlat {

// A lattice site in Z^d.
using Site = std::vector<std::int64_t>;

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept;
};

std::string format_site(const Site& s);

// Smallest odd integer >= K: K for odd K, K+1 for even K.
std::int64_t k_star(std::int64_t K);

// Axis-aligned box {y : |y_i - c_i| <= L/2} (closed) or with strict
// inequality (open). The side L may be any positive real; centers are
// lattice sites, so a box is never empty.
class BoxRegion {
 public:
  BoxRegion(int dim, double side, Site center, bool open = false);

  static BoxRegion closed(int dim, double side, Site center = {});
  static BoxRegion open(int dim, double side, Site center = {});

  int dim() const { return dim_; }
  double side() const { return side_; }
  bool is_open() const { return open_; }
  const Site& center() const { return center_; }
  std::int64_t lo(int axis) const { return lo_.at(axis); }
  std::int64_t hi(int axis) const { return hi_.at(axis); }
  std::int64_t extent(int axis) const { return hi_.at(axis) - lo_.at(axis) + 1; }

  std::size_t size() const;
  bool contains(const Site& s) const;
  // Lexicographic position of s among the box sites; throws std::out_of_range
  // if s is outside the box.
  std::size_t index_of(const Site& s) const;
  std::optional<std::size_t> find(const Site& s) const;
  Site site_at(std::size_t index) const;
  // All sites in lexicographic order (first coordinate most significant).
  std::vector<Site> sites() const;

  bool operator==(const BoxRegion& o) const;

 private:
  int dim_;
  double side_;
  bool open_;
  Site center_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::size_t> stride_;
};

// Edge boundary of a finite set A against all of Z^d: ordered pairs (x, y)
// with x in A, y outside A, |x-y|_1 = 1.
struct BoundaryData {
  std::vector<Site> set;                         // deduplicated A, lex sorted
  std::vector<std::pair<Site, Site>> edges;      // boundary edges, lex sorted
  std::vector<int> eta;                          // per site of `set`: #boundary edges at x
  std::vector<Site> inner;                       // {x in A : eta(x) >= 1}
  std::vector<Site> outer;                       // sites outside A hit by a boundary edge
  std::size_t size() const { return edges.size(); }
};

BoundaryData boundary(const std::vector<Site>& a, int dim);

// Number of nearest-neighbor edges with both ends in A.
std::int64_t internal_edges(const std::vector<Site>& a, int dim);

// BFS distance within the subgraph induced by the given sites. Throws
// std::invalid_argument if x or y is not in the set or they are not
// connected inside it.
std::int64_t graph_distance(const std::vector<Site>& sites, const Site& x, const Site& y, int dim);
std::int64_t graph_distance(const BoxRegion& box, const Site& x, const Site& y);

std::int64_t graph_diameter(const std::vector<Site>& sites, int dim);
std::int64_t graph_diameter(const BoxRegion& box);

}  // namespace trimlat
