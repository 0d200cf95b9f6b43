#pragma once

// Truncated Fock space F_X = X(0) + X(1) + ... + X(N) and the X-shift.
//
// The basis of F_X is the concatenation of the fiber frames, degree 0
// first, so the vacuum is basis vector 0. S_i maps the degree-n block to the
// degree-(n+1) block by x -> P_{X(n+1)}(e_i (x) x) and kills degree N.
// Identities that hold on the untruncated space are therefore only checked
// on explicit degree windows.

#include <string>
#include <vector>

#include "subprod/kernel.hpp"
#include "subprod/ncpoly.hpp"
#include "subprod/sps.hpp"

namespace subprod::fock {

using sps::SubproductSystem;

class FockOperators {
 public:
  explicit FockOperators(SubproductSystem x);

  const SubproductSystem& system() const { return x_; }
  int d() const { return x_.d(); }
  int N() const { return x_.N(); }
  Index total_dim() const { return total_dim_; }
  Index offset(int n) const { return offsets_.at(static_cast<std::size_t>(n)); }
  Index block_dim(int n) const { return x_.fiber(n).dim(); }
  Index vacuum_index() const { return 0; }

  // 1-based letter.
  const CMatrix& shift(int letter) const;
  const std::vector<CMatrix>& shifts() const { return shifts_; }

  CMatrix word_operator(const ncpoly::Word& w) const;  // S^w
  // S_i m and S_i* m using only the nonzero degree blocks of S_i.
  CMatrix apply_shift(int letter, const CMatrix& m) const;
  CMatrix apply_shift_adjoint(int letter, const CMatrix& m) const;
  CMatrix poly_operator(const ncpoly::NCPolynomial& p) const;
  // p(S) Omega without forming p(S).
  CVector apply_to_vacuum(const ncpoly::NCPolynomial& p) const;

  // Sub-block of `a` on degrees lo..hi (rows and columns).
  CMatrix window(const CMatrix& a, int lo, int hi) const;
  // Projection onto degrees lo..hi.
  CMatrix degree_projector(int lo, int hi) const;
  // U_t a U_t^* with U_t = exp(i n t) on degree n.
  CMatrix gauge_action(const CMatrix& a, double t) const;

  // || [S_1 ... S_d] ||
  double row_norm() const;

 private:
  SubproductSystem x_;
  std::vector<Index> offsets_;
  Index total_dim_ = 0;
  std::vector<CMatrix> shifts_;
};

inline FockOperators build(const SubproductSystem& x) { return FockOperators(x); }

// Residual of a relation measured on the degree window [window_lo, window_hi].
struct RelationReport {
  std::string check;
  int window_lo = 0;
  int window_hi = 0;
  double residual = 0.0;
  bool pass = false;
};

// ||(I - sum_{|a|=k} S^a S^a*) - P_{degrees < k}|| on degrees 0..N-k.
RelationReport check_cuntz_defect(const FockOperators& f, int k, double tol = kCheckTol);

struct ShiftMembership {
  bool member = false;
  double residual = 0.0;  // ||p(S) Omega||
};

// p(S) = 0 on F_X iff p(S) Omega = 0; valid for homogeneous p, deg p <= N.
ShiftMembership membership_via_shift(const FockOperators& f, const ncpoly::NCPolynomial& p,
                                     double tol = kCheckTol);

// Phi_n(T): keep blocks from degree m to degree m + n, zero the rest.
CMatrix graded_component_extract(const FockOperators& f, const CMatrix& t, int n);

// Relations of a k-step subshift system built with prune = true:
//   "orthogonal_ranges": max_{i != j} ||S_i* S_j|| on all degrees,
//   "row_sum": ||sum_i S_i S_i* - I|| on degrees [1, N-1],
//   "follower": max_i ||S_i* S_i - sum_{a in E_i^k} S^a S^a*|| on [k, N-1].
std::vector<RelationReport> subshift_relations_check(const FockOperators& f,
                                                     const std::vector<ncpoly::Word>& forbidden,
                                                     int k, double tol = kCheckTol);

}  // namespace subprod::fock
