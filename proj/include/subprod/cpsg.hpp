#pragma once

// Completely positive maps on M_k, their Choi/Kraus data, the fibers E(n)
// of the semigroup {Theta^n} and the reconstruction of a CP semigroup from a
// subproduct system representation.
//
// Choi convention: C = sum_ij Theta(E_ij) (x) E_ij, so C(a k + i, b k + j) =
// Theta(E_ij)(a, b). A Kraus operator K contributes v v* with v[a k + i] =
// K(a, i), i.e. the row-major flattening of K.

#include <vector>

#include "subprod/kernel.hpp"
#include "subprod/reps.hpp"
#include "subprod/sps.hpp"

namespace subprod::cpsg {

// Row-major flattening and its inverse.
CVector vec(const CMatrix& k);
CMatrix unvec(const CVector& v, Index k);

class CPMap {
 public:
  static CPMap from_kraus(const std::vector<CMatrix>& kraus);
  // Throws InputError when choi is not Hermitian PSD within tol.
  static CPMap from_choi(const CMatrix& choi, double tol = kCheckTol);
  static CPMap identity(Index k);

  Index k() const { return k_; }
  const CMatrix& choi() const { return choi_; }
  // Minimal Kraus family, largest weight first.
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  CMatrix apply(const CMatrix& a) const;
  // Theta(I).
  CMatrix unit_image() const { return apply(CMatrix::Identity(k_, k_)); }
  bool is_unital(double tol = kCheckTol) const;
  // Theta(I) <= I + tol.
  bool is_contractive(double tol = kCheckTol) const;

 private:
  CPMap(Index k, CMatrix choi);

  Index k_ = 0;
  CMatrix choi_;
  std::vector<CMatrix> kraus_;
};

// this o inner: Choi of the composition, built block by block from the
// Choi matrix of `inner`.
CPMap compose(const CPMap& outer, const CPMap& inner);
CPMap power(const CPMap& theta, int n);

// Largest entry modulus of Theta(E_ij) - Phi(E_ij) over all matrix units.
double max_entry_distance(const CPMap& theta, const CPMap& phi);

// K_l = sqrt(lambda_l) unvec(v_l) over Choi eigenpairs with
// lambda_l > kRankTol * lambda_max.
std::vector<CMatrix> kraus_minimal(const CPMap& theta);

struct ArvesonFiber {
  Index dim = 0;
  std::vector<CMatrix> kraus;  // orthonormal basis of E(n)
};

ArvesonFiber arveson_fiber(const CPMap& theta, int n);

// max(expansion residual, ||mu mu* - I||) for mu: E(m) (x) E(n) -> E(m+n),
// A_i (x) B_j -> A_i B_j written in the basis of E(m+n).
double coisometry_check(const CPMap& theta, int m, int n);

struct ArvesonSystem {
  sps::SubproductSystem system;  // X(n) = (ker of e_alpha -> K^alpha)^perp
  reps::RepTuple identity_rep;   // T_i = K_i, the basis of E(1)
};

// Realizes E(n) inside E(1)^(x)n. Requires Theta != 0.
ArvesonSystem arveson_system(const CPMap& theta, int N);

struct SigmaSemigroup {
  std::vector<CPMap> maps;  // maps[n] = Theta_n, n = 0..N (Theta_0 = id)
  // max over matrix units a and m + n <= N of ||Theta_m(Theta_n(a)) - Theta_{m+n}(a)||.
  double semigroup_residual = 0.0;
};

// Theta_n(a) = R~_n (I_X(n) (x) a) R~_n*, Kraus C_j = sum_alpha V(alpha, j) R^alpha
// with V a frame of X(n).
SigmaSemigroup sigma_semigroup(const sps::SubproductSystem& x, const reps::RepTuple& r,
                               double tol = kCheckTol);

}  // namespace subprod::cpsg
