#pragma once

// Dense complex linear algebra used by every other module.
//
// Conventions fixed here and relied on everywhere else:
//  * kron(A, B) places A's index first: (i, j) -> i * cols(B) + j. Under the
//    lexicographic word order this is concatenation of words, so the basis
//    vector e_alpha (x) e_beta of kron_space(X(m), X(n)) is e_{alpha beta}.
//  * Subspaces are orthonormal column frames, never projections.

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "subprod/errors.hpp"

namespace subprod {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Relative cutoff on singular values for rank decisions.
inline constexpr double kRankTol = 1e-9;
// Absolute tolerance for relation checks (residual norms).
inline constexpr double kCheckTol = 1e-7;

}  // namespace subprod

namespace subprod::kernel {

// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const CMatrix& m, std::string_view what);

class Subspace {
 public:
  // The zero subspace of C^0.
  Subspace() = default;

  static Subspace zero(Index ambient_dim, double tol = kRankTol);
  static Subspace full(Index ambient_dim, double tol = kRankTol);
  // Adopts `frame` as is. Its columns must be orthonormal within 10*tol.
  static Subspace from_frame(CMatrix frame, double tol = kRankTol);

  Index ambient_dim() const { return frame_.rows(); }
  Index dim() const { return frame_.cols(); }
  const CMatrix& frame() const { return frame_; }
  double tol() const { return tol_; }

  CMatrix projector() const { return frame_ * frame_.adjoint(); }
  // P v and (I - P) v, column by column, without forming P.
  CMatrix project(const CMatrix& v) const;
  CMatrix reject(const CMatrix& v) const;

 private:
  Subspace(CMatrix frame, double tol) : frame_(std::move(frame)), tol_(tol) {}

  CMatrix frame_ = CMatrix(0, 0);
  double tol_ = kRankTol;
};

Subspace orthonormalize(const CMatrix& vectors, double tol = kRankTol);
Subspace complement(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
// {F_s c : map c = 0}, where `map` has s.dim() columns and singular values
// <= cut count as zero. With map = (I - P_b) F_s this is s cap b.
Subspace restrict_to_null(const Subspace& s, const CMatrix& map, double cut);
// {x in s : <v, x> = 0 for every column v of `directions`}.
Subspace annihilate(const Subspace& s, const CMatrix& directions);
// Span of the union of the two frames.
Subspace sum(const Subspace& a, const Subspace& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
Subspace kron_space(const Subspace& a, const Subspace& b);

// Largest singular value.
double op_norm(const CMatrix& a);
CMatrix psd_sqrt(const CMatrix& a, double tol = kCheckTol);

// Orthonormal basis of ker(m); singular values <= tol * sigma_max count as 0.
CMatrix null_space(const CMatrix& m, double tol = kRankTol);
Index numerical_rank(const CMatrix& m, double tol = kRankTol);

// ||(I - P_big) F_small||: zero iff `small` lies inside `big`.
double containment_residual(const Subspace& big, const Subspace& small);
bool contains(const Subspace& big, const Subspace& small, double tol = kCheckTol);
// Mutual containment with equal dimensions.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = kCheckTol);

// (P_S (x) I_m) v and (I_m (x) P_S) v applied column-wise, where v has
// S.ambient_dim() * m rows.
CMatrix project_left(const Subspace& s, Index m, const CMatrix& v);
CMatrix project_right(Index m, const Subspace& s, const CMatrix& v);

}  // namespace subprod::kernel
