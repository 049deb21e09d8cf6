#include "trimlat/cheeger.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace trimlat {

namespace {

std::int64_t l1_dist(const Site& a, const Site& b) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::llabs(a[i] - b[i]);
  return d;
}

void check_sites(const std::vector<Site>& a, int dim) {
  if (a.empty()) throw std::invalid_argument("empty site set");
  for (const auto& s : a) {
    if (static_cast<int>(s.size()) != dim) throw std::invalid_argument("site dimension mismatch");
  }
}

// pairs at l1 distance 1 inside the set
std::int64_t internal_edge_count(const std::vector<Site>& a) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (l1_dist(a[i], a[j]) == 1) ++e;
    }
  }
  return e;
}

}  // namespace

double beta_of_set(const std::vector<Site>& a, int dim, const TrimPattern& gamma, BetaMode mode,
                   double t) {
  check_sites(a, dim);
  if (mode == BetaMode::Penalized && t < 0.0) {
    throw std::invalid_argument("beta_of_set: negative penalty");
  }
  std::set<Site> dedup(a.begin(), a.end());
  if (dedup.size() != a.size()) throw std::invalid_argument("beta_of_set: repeated site");

  std::int64_t in_gamma = 0;
  for (const auto& s : a) {
    if (gamma.contains(s)) {
      if (mode == BetaMode::Trimmed) {
        throw std::invalid_argument("beta_of_set: set meets the pattern in trimmed mode");
      }
      ++in_gamma;
    }
  }
  // boundary against all of Z^d
  double boundary = 2.0 * dim * static_cast<double>(a.size()) - 2.0 * internal_edge_count(a);
  double num = boundary + (mode == BetaMode::Penalized ? t * static_cast<double>(in_gamma) : 0.0);
  return num / static_cast<double>(a.size());
}

CheegerResult beta_bruteforce(const BoxRegion& window, const TrimPattern& gamma, BetaMode mode,
                              double t, std::optional<int> max_cardinality) {
  if (mode == BetaMode::Penalized && t < 0.0) {
    throw std::invalid_argument("beta_bruteforce: negative penalty");
  }
  if (max_cardinality && *max_cardinality < 1) {
    throw std::invalid_argument("beta_bruteforce: cardinality cap must be positive");
  }

  std::vector<Site> adm;
  std::vector<bool> in_gamma;
  for (const auto& s : window.sites()) {
    bool g = gamma.contains(s);
    if (mode == BetaMode::Trimmed && g) continue;
    adm.push_back(s);
    in_gamma.push_back(g);
  }
  const std::size_t n = adm.size();
  if (n == 0) throw std::invalid_argument("beta_bruteforce: no admissible site in the window");
  if (!max_cardinality && n > 24) {
    throw std::invalid_argument("beta_bruteforce: window too large for exhaustive enumeration");
  }
  if (n > 64) throw std::invalid_argument("beta_bruteforce: more than 64 admissible sites");

  std::vector<std::uint64_t> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (l1_dist(adm[i], adm[j]) == 1) {
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
      }
    }
  }

  const int d = window.dim();
  const int cap = max_cardinality ? *max_cardinality : static_cast<int>(n);
  CheegerResult res;
  res.mode = mode;
  res.t = t;
  res.exhaustive = !max_cardinality || *max_cardinality >= static_cast<int>(n);
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  std::uint64_t count = 0;

  // each connected set is reached exactly once: branch on the first added
  // candidate, then ban it for later branches at the same level
  auto visit = [&](std::uint64_t s, int card, std::int64_t edges, std::int64_t gcount) {
    ++count;
    double boundary = 2.0 * d * card - 2.0 * static_cast<double>(edges);
    double value = boundary;
    if (mode == BetaMode::Penalized) value += t * static_cast<double>(gcount);
    value /= static_cast<double>(card);
    if (value < best) {
      best = value;
      best_mask = s;
    }
  };

  struct Rec {
    const std::vector<std::uint64_t>& adj;
    const std::vector<bool>& in_gamma;
    int cap;
    decltype(visit)& visit_fn;
    void operator()(std::uint64_t s, std::uint64_t nbhd, std::uint64_t banned, int card,
                    std::int64_t edges, std::int64_t gcount) {
      visit_fn(s, card, edges, gcount);
      if (card >= cap) return;
      std::uint64_t cand = nbhd & ~s & ~banned;
      while (cand) {
        std::size_t u = static_cast<std::size_t>(std::countr_zero(cand));
        cand &= cand - 1;
        std::uint64_t bit = std::uint64_t{1} << u;
        (*this)(s | bit, nbhd | adj[u], banned, card + 1,
                edges + std::popcount(adj[u] & s), gcount + (in_gamma[u] ? 1 : 0));
        banned |= bit;
      }
    }
  } rec{adj, in_gamma, cap, visit};

  std::uint64_t banned = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t bit = std::uint64_t{1} << v;
    rec(bit, adj[v], banned, 1, 0, in_gamma[v] ? 1 : 0);
    banned |= bit;
  }

  res.beta = best;
  res.sets_enumerated = count;
  for (std::size_t i = 0; i < n; ++i) {
    if (best_mask & (std::uint64_t{1} << i)) res.minimizer.push_back(adm[i]);
  }
  return res;
}

nlohmann::json CheegerResult::to_json() const {
  nlohmann::json j;
  j["beta"] = beta;
  j["mode"] = mode == BetaMode::Trimmed ? "trimmed" : "penalized";
  j["t"] = t;
  j["sets_enumerated"] = sets_enumerated;
  j["exhaustive"] = exhaustive;
  auto sites = nlohmann::json::array();
  for (const auto& s : minimizer) sites.push_back(s);
  j["minimizer"] = sites;
  return j;
}

IsoperimetricCheck isoperimetric_check(const std::vector<Site>& a, int dim,
                                       const TrimPattern& gamma, std::int64_t K) {
  check_sites(a, dim);
  for (const auto& s : a) {
    if (gamma.contains(s)) {
      throw std::invalid_argument("isoperimetric_check: set meets the pattern");
    }
  }
  IsoperimetricCheck c;
  c.boundary_size = 2 * dim * static_cast<std::int64_t>(a.size()) - 2 * internal_edge_count(a);
  c.floor = static_cast<double>(a.size()) / std::pow(static_cast<double>(k_star(K)), dim);
  c.ok = static_cast<double>(c.boundary_size) >= c.floor;
  return c;
}

}  // namespace trimlat
