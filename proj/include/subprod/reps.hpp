#pragma once

// Representations of a subproduct system on C^k, given by the tuple
// T_i = T(e_i), together with the Poisson transform, the von Neumann
// inequality and maximal X-pieces.

#include <vector>

#include "subprod/fock.hpp"
#include "subprod/kernel.hpp"
#include "subprod/ncpoly.hpp"
#include "subprod/sps.hpp"

namespace subprod::reps {

using kernel::Subspace;
using ncpoly::NCPolynomial;
using ncpoly::Word;
using sps::SubproductSystem;

class RepTuple {
 public:
  explicit RepTuple(std::vector<CMatrix> matrices);

  int d() const { return static_cast<int>(matrices_.size()); }
  Index k() const { return matrices_.front().rows(); }
  const std::vector<CMatrix>& matrices() const { return matrices_; }
  const CMatrix& operator[](int letter) const;  // 1-based
  // || [T_1 ... T_d] ||
  double row_norm() const { return row_norm_; }

  CMatrix word(const Word& w) const;  // T^w = T_{w_1} ... T_{w_n}
  CMatrix eval(const NCPolynomial& p) const;
  // T^alpha for every word of length n, in word order.
  std::vector<CMatrix> all_words(int n) const;

 private:
  std::vector<CMatrix> matrices_;
  double row_norm_ = 0.0;
};

// k x (d^n k) matrix whose block alpha is T^alpha.
CMatrix tilde(const RepTuple& t, int n);

struct RepresentationReport {
  // residuals[n] = ||T~^n (P_X(n)^perp (x) I_k)||, n = 1..N (entry 0 unused).
  std::vector<double> residuals;
  double max_residual = 0.0;
  int worst_degree = 0;
  double row_norm = 0.0;
  bool contractive = true;  // row_norm <= 1 + tol
  bool pass = false;
};

RepresentationReport is_representation(const SubproductSystem& x, const RepTuple& t,
                                       double tol = kCheckTol);

// K_r(T)^* (S^alpha S^beta* (x) I) K_r(T), with the Poisson kernel
// K_r(T) h = sum_{|gamma| <= n_trunc} e_gamma (x) r^|gamma| Delta(rT)^(1/2) T^gamma* h
// compressed to F_X (x) C^k. The kernel is built once; evaluate() is cheap.
class PoissonTransform {
 public:
  PoissonTransform(const RepTuple& t, const SubproductSystem& x, double r, int n_trunc);

  CMatrix evaluate(const Word& alpha, const Word& beta) const;
  // ||K_r^* K_r - I||: the mass lost to truncation.
  double isometry_defect() const;
  int n_trunc() const { return n_trunc_; }

 private:
  CMatrix adjoint_word_apply(const Word& w) const;  // (S^w* (x) I) K

  fock::FockOperators fock_;
  Index k_;
  int n_trunc_;
  // Row f of the Fock basis, column h * k + r: coordinate r of K_r(T) e_h.
  CMatrix kernel_;
};

CMatrix poisson_transform(const RepTuple& t, const SubproductSystem& x, const Word& alpha,
                          const Word& beta, int n_trunc, double r);

struct VonNeumannReport {
  double lhs = 0.0;  // ||p(T) q(T)*||
  double rhs = 0.0;  // ||p(S) q(S)*|| on the truncated Fock space
  bool pass = false;
};

inline constexpr double kVonNeumannSlack = 1e-6;

// The Fock space of `f` must have N >= deg p + deg q + 4.
VonNeumannReport vn_inequality_check(const fock::FockOperators& f, const RepTuple& t,
                                     const NCPolynomial& p, const NCPolynomial& q);
VonNeumannReport vn_inequality_check(const SubproductSystem& x, const RepTuple& t,
                                     const NCPolynomial& p, const NCPolynomial& q, int N);

struct PieceResult {
  Subspace piece;
  int iterations = 0;
};

// Largest H with T~_n* H inside X(n) (x) H for all 1 <= n <= N (the
// N-truncated maximal X-piece). X must sit inside Y fiberwise and T must be
// a representation of Y.
PieceResult maximal_piece(const SubproductSystem& x, const SubproductSystem& y,
                          const RepTuple& t, double tol = kCheckTol);

// max_n ||(I - P_X(n) (x) P_H) T~_n* P_H||.
double piece_residual(const SubproductSystem& x, const RepTuple& t, const Subspace& h);

// P_H T_i |_H in the frame of H.
RepTuple compress(const RepTuple& t, const Subspace& h);

}  // namespace subprod::reps
