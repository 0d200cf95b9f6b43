#include "subprod/fock.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "subprod/subshift.hpp"

namespace subprod::fock {

using ncpoly::word_count;

FockOperators::FockOperators(SubproductSystem x) : x_(std::move(x)) {
  const int N = x_.N();
  const int d = x_.d();
  for (int n = 0; n <= N; ++n) {
    offsets_.push_back(total_dim_);
    total_dim_ += x_.fiber(n).dim();
  }
  for (int i = 0; i < d; ++i) {
    CMatrix s = CMatrix::Zero(total_dim_, total_dim_);
    for (int n = 0; n < N; ++n) {
      const CMatrix& from = x_.fiber(n).frame();
      const CMatrix& to = x_.fiber(n + 1).frame();
      if (from.cols() == 0 || to.cols() == 0) continue;
      // Rows of e_i (x) C^(d^n) inside C^(d^(n+1)) are i*d^n .. (i+1)*d^n - 1.
      const Index rows = word_count(d, n);
      s.block(offsets_[n + 1], offsets_[n], to.cols(), from.cols()) =
          to.middleRows(i * rows, rows).adjoint() * from;
    }
    shifts_.push_back(std::move(s));
  }
}

const CMatrix& FockOperators::shift(int letter) const {
  if (letter < 1 || letter > d()) throw InputError("shift: letter out of range");
  return shifts_[static_cast<std::size_t>(letter - 1)];
}

CMatrix FockOperators::word_operator(const ncpoly::Word& w) const {
  CMatrix out = CMatrix::Identity(total_dim_, total_dim_);
  for (int letter : w.letters()) out = out * shift(letter);
  return out;
}

CMatrix FockOperators::apply_shift(int letter, const CMatrix& m) const {
  const CMatrix& s = shift(letter);
  if (m.rows() != total_dim_) throw InputError("apply_shift: wrong row count");
  CMatrix out = CMatrix::Zero(total_dim_, m.cols());
  for (int n = 0; n < N(); ++n) {
    out.middleRows(offset(n + 1), block_dim(n + 1)).noalias() =
        s.block(offset(n + 1), offset(n), block_dim(n + 1), block_dim(n)) *
        m.middleRows(offset(n), block_dim(n));
  }
  return out;
}

CMatrix FockOperators::apply_shift_adjoint(int letter, const CMatrix& m) const {
  const CMatrix& s = shift(letter);
  if (m.rows() != total_dim_) throw InputError("apply_shift_adjoint: wrong row count");
  CMatrix out = CMatrix::Zero(total_dim_, m.cols());
  for (int n = 0; n < N(); ++n) {
    out.middleRows(offset(n), block_dim(n)).noalias() =
        s.block(offset(n + 1), offset(n), block_dim(n + 1), block_dim(n)).adjoint() *
        m.middleRows(offset(n + 1), block_dim(n + 1));
  }
  return out;
}

CMatrix FockOperators::poly_operator(const ncpoly::NCPolynomial& p) const {
  if (p.d() != d()) throw InputError("poly_operator: alphabet mismatch");
  CMatrix out = CMatrix::Zero(total_dim_, total_dim_);
  for (const auto& [letters, c] : p.terms()) {
    out += c * word_operator(ncpoly::Word(letters, d()));
  }
  return out;
}

CVector FockOperators::apply_to_vacuum(const ncpoly::NCPolynomial& p) const {
  if (p.d() != d()) throw InputError("apply_to_vacuum: alphabet mismatch");
  CVector out = CVector::Zero(total_dim_);
  for (const auto& [letters, c] : p.terms()) {
    CVector v = CVector::Zero(total_dim_);
    v(vacuum_index()) = 1.0;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = apply_shift(*it, v);
    out += c * v;
  }
  return out;
}

CMatrix FockOperators::window(const CMatrix& a, int lo, int hi) const {
  if (a.rows() != total_dim_ || a.cols() != total_dim_) {
    throw InputError("window: operator is not on this Fock space");
  }
  lo = std::max(lo, 0);
  hi = std::min(hi, N());
  if (lo > hi) return CMatrix(0, 0);
  const Index start = offset(lo);
  const Index len = offset(hi) + block_dim(hi) - start;
  return a.block(start, start, len, len);
}

CMatrix FockOperators::degree_projector(int lo, int hi) const {
  CMatrix p = CMatrix::Zero(total_dim_, total_dim_);
  for (int n = std::max(lo, 0); n <= std::min(hi, N()); ++n) {
    p.block(offset(n), offset(n), block_dim(n), block_dim(n)).setIdentity();
  }
  return p;
}

CMatrix FockOperators::gauge_action(const CMatrix& a, double t) const {
  CVector phase(total_dim_);
  for (int n = 0; n <= N(); ++n) {
    phase.segment(offset(n), block_dim(n)).setConstant(std::polar(1.0, n * t));
  }
  return phase.asDiagonal() * a * phase.conjugate().asDiagonal();
}

double FockOperators::row_norm() const {
  CMatrix gram = CMatrix::Zero(total_dim_, total_dim_);
  for (const auto& s : shifts_) gram += s * s.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

RelationReport check_cuntz_defect(const FockOperators& f, int k, double tol) {
  if (k < 1 || k > f.N()) throw InputError("check_cuntz_defect: k must lie in 1..N");
  // sum_{|a|=k} S^a S^a* built one letter at a time.
  CMatrix range = CMatrix::Identity(f.total_dim(), f.total_dim());
  for (int step = 0; step < k; ++step) {
    CMatrix next = CMatrix::Zero(f.total_dim(), f.total_dim());
    for (const auto& s : f.shifts()) next += s * range * s.adjoint();
    range = std::move(next);
  }
  const CMatrix defect = CMatrix::Identity(f.total_dim(), f.total_dim()) - range -
                         f.degree_projector(0, k - 1);
  RelationReport r{"cuntz", 0, f.N() - k, 0.0, false};
  r.residual = kernel::op_norm(f.window(defect, r.window_lo, r.window_hi));
  r.pass = r.residual <= tol;
  return r;
}

ShiftMembership membership_via_shift(const FockOperators& f, const ncpoly::NCPolynomial& p,
                                     double tol) {
  if (!p.is_homogeneous()) throw InputError("membership_via_shift: polynomial is not homogeneous");
  if (p.degree() > f.N()) {
    throw InputError("membership_via_shift: degree " + std::to_string(p.degree()) +
                     " exceeds truncation " + std::to_string(f.N()));
  }
  if (p.is_zero()) return {true, 0.0};
  const double residual = f.apply_to_vacuum(p).norm();
  const double scale = ncpoly::embed_coeff(p, p.degree()).norm();
  return {residual <= tol * scale, residual};
}

CMatrix graded_component_extract(const FockOperators& f, const CMatrix& t, int n) {
  if (t.rows() != f.total_dim() || t.cols() != f.total_dim()) {
    throw InputError("graded_component_extract: operator is not on this Fock space");
  }
  CMatrix out = CMatrix::Zero(t.rows(), t.cols());
  for (int m = 0; m <= f.N(); ++m) {
    const int target = m + n;
    if (target < 0 || target > f.N()) continue;
    out.block(f.offset(target), f.offset(m), f.block_dim(target), f.block_dim(m)) =
        t.block(f.offset(target), f.offset(m), f.block_dim(target), f.block_dim(m));
  }
  return out;
}

std::vector<RelationReport> subshift_relations_check(const FockOperators& f,
                                                     const std::vector<ncpoly::Word>& forbidden,
                                                     int k, double tol) {
  if (k < 0) throw InputError("subshift_relations_check: negative step");
  for (const auto& w : forbidden) {
    if (w.length() > k + 1) {
      throw InputError("forbidden word \"" + w.str() + "\" is longer than k + 1 = " +
                       std::to_string(k + 1) + "; the shift is not " + std::to_string(k) + "-step");
    }
  }
  subshift::Language lang(f.d(), forbidden, true);
  const Index dim = f.total_dim();
  const CMatrix id = CMatrix::Identity(dim, dim);
  std::vector<RelationReport> out;

  RelationReport ortho{"orthogonal_ranges", 0, f.N(), 0.0, false};
  for (int i = 1; i <= f.d(); ++i) {
    for (int j = 1; j <= f.d(); ++j) {
      if (i == j) continue;
      ortho.residual = std::max(ortho.residual,
                                kernel::op_norm(f.shift(i).adjoint() * f.shift(j)));
    }
  }
  ortho.pass = ortho.residual <= tol;
  out.push_back(ortho);

  CMatrix row_sum = CMatrix::Zero(dim, dim);
  for (const auto& s : f.shifts()) row_sum += s * s.adjoint();
  RelationReport rows{"row_sum", 1, f.N() - 1, 0.0, false};
  rows.residual = kernel::op_norm(f.window(row_sum - id, rows.window_lo, rows.window_hi));
  rows.pass = rows.residual <= tol;
  out.push_back(rows);

  RelationReport follower{"follower", k, f.N() - 1, 0.0, false};
  for (int i = 1; i <= f.d(); ++i) {
    CMatrix rhs = CMatrix::Zero(dim, dim);
    for (const auto& alpha : lang.follower_set(i, k)) {
      const CMatrix sa = f.word_operator(alpha);
      rhs += sa * sa.adjoint();
    }
    const CMatrix lhs = f.shift(i).adjoint() * f.shift(i);
    follower.residual = std::max(
        follower.residual,
        kernel::op_norm(f.window(lhs - rhs, follower.window_lo, follower.window_hi)));
  }
  follower.pass = follower.residual <= tol;
  out.push_back(follower);
  return out;
}

}  // namespace subprod::fock
