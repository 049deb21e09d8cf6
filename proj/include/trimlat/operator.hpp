#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "trimlat/lattice.hpp"
#include "trimlat/pattern.hpp"
#include "trimlat/potential.hpp"

namespace trimlat {

enum class OperatorKind { Full, Trimmed, Penalized };

// Finite-volume operator on a box. Full: the lattice Laplacian plus V
// restricted to the box (diagonal 2d + V(x), -1 on nearest-neighbor pairs
// inside the box). Trimmed: the same form restricted to the sites outside
// Gamma (the diagonal keeps the full 2d + V(x)). Penalized: full plus t on
// the diagonal at Gamma sites.
class LatticeOperator {
 public:
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  int dim() const { return dim_; }
  OperatorKind op_kind() const { return kind_; }
  double penalty() const { return t_; }
  const BoxRegion& box() const { return box_; }
  std::size_t size() const { return sites_.size(); }
  const std::vector<Site>& sites() const { return sites_; }

  const Sparse& matrix() const { return mat_; }
  Eigen::MatrixXd dense() const;  // guarded: n <= 4096
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  double quadratic_form(const Eigen::VectorXd& x) const;

  double diag_min() const;
  double diag_max() const;
  double norm_inf() const;  // max absolute row sum

  // Copy with the diagonal shifted by the given per-site values (used for
  // disorder realizations; the site order matches sites()).
  LatticeOperator with_diagonal_added(const std::vector<double>& add) const;

  // Coordinate text dump: "i j value" per stored entry, 0-based, upper and
  // lower triangles both present, preceded by a "%%n rows cols nnz" line.
  void dump_coordinate(std::ostream& os) const;

  friend LatticeOperator assemble(const BoxRegion&, const Potential&, OperatorKind,
                                  const TrimPattern*, double);

 private:
  int dim_ = 1;
  OperatorKind kind_ = OperatorKind::Full;
  double t_ = 0.0;
  BoxRegion box_{1, 1.0, {0}};
  std::vector<Site> sites_;
  Sparse mat_;
};

LatticeOperator assemble(const BoxRegion& box, const Potential& v, OperatorKind kind,
                         const TrimPattern* gamma = nullptr, double t = 0.0);

// Nonnegative companion operator T = (2d + 1 + spr)I - (H - inf V · I)
// for a full-mode operator H. T has diagonal entries >= 1, entries 1 on
// nearest-neighbor pairs, and ground states of H are top eigenvectors of T:
// E_min(H) = offset - lambda_max(T).
struct PfCompanion {
  Eigen::SparseMatrix<double, Eigen::RowMajor> t_matrix;
  double offset = 0.0;   // E_min(H) = offset - lambda_max
  double v_shift = 0.0;  // inf V over the box (subtracted before reflection)
  double spread = 0.0;
};

PfCompanion pf_companion(const LatticeOperator& op);

}  // namespace trimlat
