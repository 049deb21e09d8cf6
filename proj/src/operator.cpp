#include "trimlat/operator.hpp"

#include <algorithm>
#include <ostream>

#include "trimlat/io.hpp"

namespace trimlat {

namespace {

bool pattern_covers(const TrimPattern& g, const BoxRegion& box) {
  if (g.kind() == TrimPattern::Kind::Periodic) return true;
  const auto& w = g.window();
  for (int i = 0; i < box.dim(); ++i) {
    if (box.lo(i) < w.lo(i) || box.hi(i) > w.hi(i)) return false;
  }
  return true;
}

}  // namespace

LatticeOperator assemble(const BoxRegion& box, const Potential& v, OperatorKind kind,
                         const TrimPattern* gamma, double t) {
  const int d = box.dim();
  if (v.dim() != d) throw std::invalid_argument("assemble: potential dimension mismatch");
  if (kind != OperatorKind::Full) {
    if (!gamma) throw std::invalid_argument("assemble: trimming needs a pattern");
    if (gamma->dim() != d) throw std::invalid_argument("assemble: pattern dimension mismatch");
    if (!pattern_covers(*gamma, box)) {
      throw std::invalid_argument("assemble: pattern window does not cover the box");
    }
  }
  if (kind == OperatorKind::Penalized && t < 0.0) {
    throw std::invalid_argument("assemble: penalty must be nonnegative");
  }

  LatticeOperator op;
  op.dim_ = d;
  op.kind_ = kind;
  op.t_ = (kind == OperatorKind::Penalized) ? t : 0.0;
  op.box_ = box;

  auto all = box.sites();
  if (kind == OperatorKind::Trimmed) {
    for (auto& s : all) {
      if (!gamma->contains(s)) op.sites_.push_back(std::move(s));
    }
    if (op.sites_.empty()) {
      throw std::invalid_argument("assemble: the pattern removes every box site");
    }
  } else {
    op.sites_ = std::move(all);
  }

  const std::size_t n = op.sites_.size();
  std::unordered_map<Site, std::size_t, SiteHash> index;
  index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) index.emplace(op.sites_[i], i);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * (1 + static_cast<std::size_t>(d)));
  for (std::size_t i = 0; i < n; ++i) {
    const Site& s = op.sites_[i];
    double diag = 2.0 * d + v(s);
    if (kind == OperatorKind::Penalized && gamma->contains(s)) diag += t;
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
    for (int ax = 0; ax < d; ++ax) {
      Site q = s;
      q[ax] += 1;
      auto it = index.find(q);
      if (it != index.end()) {
        trip.emplace_back(static_cast<int>(i), static_cast<int>(it->second), -1.0);
        trip.emplace_back(static_cast<int>(it->second), static_cast<int>(i), -1.0);
      }
    }
  }
  op.mat_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  op.mat_.setFromTriplets(trip.begin(), trip.end());
  op.mat_.makeCompressed();
  return op;
}

Eigen::MatrixXd LatticeOperator::dense() const {
  if (size() > 4096) {
    throw std::invalid_argument("LatticeOperator::dense: matrix larger than 4096");
  }
  return Eigen::MatrixXd(mat_);
}

Eigen::VectorXd LatticeOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != mat_.rows()) throw std::invalid_argument("apply: size mismatch");
  return mat_ * x;
}

double LatticeOperator::quadratic_form(const Eigen::VectorXd& x) const {
  return x.dot(apply(x));
}

double LatticeOperator::diag_min() const {
  double m = mat_.coeff(0, 0);
  for (Eigen::Index i = 0; i < mat_.rows(); ++i) m = std::min(m, mat_.coeff(i, i));
  return m;
}

double LatticeOperator::diag_max() const {
  double m = mat_.coeff(0, 0);
  for (Eigen::Index i = 0; i < mat_.rows(); ++i) m = std::max(m, mat_.coeff(i, i));
  return m;
}

double LatticeOperator::norm_inf() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < mat_.rows(); ++i) {
    double row = 0.0;
    for (Sparse::InnerIterator it(mat_, i); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

LatticeOperator LatticeOperator::with_diagonal_added(const std::vector<double>& add) const {
  if (add.size() != size()) {
    throw std::invalid_argument("with_diagonal_added: size mismatch");
  }
  LatticeOperator out = *this;
  for (Eigen::Index i = 0; i < out.mat_.rows(); ++i) {
    out.mat_.coeffRef(i, i) += add[static_cast<std::size_t>(i)];
  }
  return out;
}

void LatticeOperator::dump_coordinate(std::ostream& os) const {
  os << "%% " << mat_.rows() << " " << mat_.cols() << " " << mat_.nonZeros() << "\n";
  for (Eigen::Index i = 0; i < mat_.rows(); ++i) {
    for (Sparse::InnerIterator it(mat_, i); it; ++it) {
      os << it.row() << " " << it.col() << " " << fmt_real(it.value()) << "\n";
    }
  }
}

PfCompanion pf_companion(const LatticeOperator& op) {
  if (op.op_kind() != OperatorKind::Full) {
    throw std::invalid_argument("pf_companion: needs the full box operator");
  }
  PfCompanion c;
  const double two_d = 2.0 * op.dim();
  double v_min = op.diag_min() - two_d;
  double v_max = op.diag_max() - two_d;
  c.v_shift = v_min;
  c.spread = v_max - v_min;
  c.offset = two_d + 1.0 + c.spread + v_min;

  c.t_matrix = op.matrix();
  c.t_matrix *= -1.0;
  for (Eigen::Index i = 0; i < c.t_matrix.rows(); ++i) {
    c.t_matrix.coeffRef(i, i) += c.offset;
  }
  return c;
}

}  // namespace trimlat
