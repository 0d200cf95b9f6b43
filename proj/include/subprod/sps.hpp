#pragma once

// Standard subproduct systems over N, truncated at degree N.
//
// A system is a list of fibers X(0..N), X(n) a subspace of C^(d^n) in word
// order, with X(m+n) inside X(m) (x) X(n) whenever m+n <= N. Products are
// the orthogonal projections onto X(m+n).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "subprod/kernel.hpp"
#include "subprod/ncpoly.hpp"

namespace subprod::sps {

using kernel::Subspace;

class SubproductSystem {
 public:
  // fibers[0] must be C^1 and fibers[n] a subspace of C^(d^n).
  SubproductSystem(int d, std::vector<Subspace> fibers, std::vector<std::string> notes = {});

  int d() const { return d_; }
  int N() const { return static_cast<int>(fibers_.size()) - 1; }
  const Subspace& fiber(int n) const;
  const std::vector<Subspace>& fibers() const { return fibers_; }
  std::vector<Index> dims() const;
  // Free-form remarks attached during construction (e.g. degenerate input).
  const std::vector<std::string>& notes() const { return notes_; }

  // The same system with fibers above `n` dropped.
  SubproductSystem truncated(int n) const;

 private:
  int d_;
  std::vector<Subspace> fibers_;
  std::vector<std::string> notes_;
};

SubproductSystem full(int d, int N);
SubproductSystem symmetric(int d, int N);
SubproductSystem from_ideal(const ncpoly::HomogeneousIdeal& ideal, int N);
// prescribed[j] is X(j+1), j = 0..k-1. Fibers above k are maximal.
SubproductSystem maximal_from_fibers(int d, const std::vector<Subspace>& prescribed, int N);
SubproductSystem from_forbidden_words(int d, const std::vector<ncpoly::Word>& forbidden,
                                      int N, bool prune);
// q must be admissible: q_ii = 0 and q_ij = 1 / q_ji != 0.
SubproductSystem q_commuting(const CMatrix& q, int N);
SubproductSystem from_matrix_A(const CMatrix& a, int N);

// Rebuilds a system from the graded components of an ideal, X(n) = I(n)^perp.
// components[0] is ignored (X(0) = C).
SubproductSystem from_components(int d, const std::vector<Subspace>& components);

struct StandardReport {
  double max_residual = 0.0;
  // Location of the largest residual; (0, 0) when N < 2.
  int worst_m = 0;
  int worst_n = 0;
  bool pass = true;
};

// max over m, n >= 1, m + n <= N of ||(P_m (x) P_n) P_{m+n} - P_{m+n}||.
StandardReport validate_standard(const SubproductSystem& x, double tol = kCheckTol);

// Degree-n component of the ideal of X is X(n)^perp; entry 0 is {0} in C^1.
std::vector<Subspace> ideal_of(const SubproductSystem& x);

// Largest mutual-containment residual over all fibers, +inf on a dimension
// mismatch or different (d, N).
double fiber_distance(const SubproductSystem& a, const SubproductSystem& b);
bool same_fibers(const SubproductSystem& a, const SubproductSystem& b, double tol = kCheckTol);

// Checks that the unitary U on C^d induces fiber bijections U^(x)n X(n) = Y(n)
// for all n <= N. Returns the largest residual (+inf on a dimension mismatch).
double verify_change_of_variables(const SubproductSystem& x, const SubproductSystem& y,
                                  const CMatrix& u);

// Permutation matrix sending e_i to e_{sigma(i)}; sigma is 0-based.
CMatrix permutation_unitary(const std::vector<int>& sigma);

struct QIsomorphism {
  std::vector<int> sigma;  // 0-based, r_{sigma(i) sigma(j)} = q_ij
  CMatrix unitary;         // U_sigma on C^d
  // Largest residual of U^(x)n X_q(n) = X_r(n) over n <= N.
  double fiber_residual = 0.0;
  // Largest residual of V_{m+n} p^q_{m+n} = p^r_{m+n} (V_m (x) V_n) on
  // X_q(m) (x) X_q(n), m + n <= N.
  double product_residual = 0.0;
};

void require_admissible(const CMatrix& q, double tol = kCheckTol);

// Searches S_d for sigma with r = U_sigma q U_sigma^-1. Requires q_ij, r_ij != 1
// for i != j. On success the permutation unitaries are checked against the
// fibers of X_q and X_r up to degree N.
std::optional<QIsomorphism> iso_q(const CMatrix& q, const CMatrix& r, int N = 4,
                                  double tol = kCheckTol);

// Invariants of A in M_2 under A -> lambda U^t A U.
struct AInvariants {
  int rank_sym = 0;
  int rank_antisym = 0;
  // (s1, s2, |c|) / ||(s1, s2, |c|)||, where s1 >= s2 are the singular values
  // of the symmetric part and the antisymmetric part is c [[0,1],[-1,0]].
  std::array<double, 3> ratio{};
  // c^2 / det(A^s) when rank_sym = 2 and c != 0, otherwise nullopt. The
  // ratio triple alone does not separate this stratum.
  std::optional<Complex> cross_ratio;
};

AInvariants classify_A(const CMatrix& a, double tol = kRankTol);
bool same_invariants(const AInvariants& a, const AInvariants& b, double tol = 1e-7);

// || I_2 (x) F - F (x) I_2 || on C^8 with F the flip of C^2 (x) C^2. A
// positive value rules out dilating the N^3 example to a product system.
double n3_obstruction_check();

}  // namespace subprod::sps
