#include "subprod/sampling.hpp"

#include <vector>

namespace subprod::sampling {

CMatrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      m(i, j) = Complex(re, n(rng));
    }
  }
  return m;
}

CMatrix random_unitary(Index k, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(k, k, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(k, k);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Haar measure: strip the phases of diag(R).
  for (Index j = 0; j < k; ++j) {
    const Complex z = r(j, j);
    if (std::abs(z) > 0) q.col(j) *= z / std::abs(z);
  }
  return q;
}

ncpoly::NCPolynomial random_poly(int d, int max_degree, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_int_distribution<int> letter(1, d);
  std::normal_distribution<double> coeff(0.0, 1.0);
  ncpoly::NCPolynomial p(d);
  while (p.is_zero()) {
    const int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
      ncpoly::Letters w(static_cast<std::size_t>(degree(rng)));
      for (auto& l : w) l = letter(rng);
      const double re = coeff(rng);
      p.add_term(w, Complex(re, coeff(rng)));
    }
  }
  return p;
}

ncpoly::NCPolynomial random_homogeneous(int d, int degree, int terms, Rng& rng) {
  std::uniform_int_distribution<int> count(1, std::max(terms, 1));
  std::uniform_int_distribution<int> letter(1, d);
  std::normal_distribution<double> coeff(0.0, 1.0);
  ncpoly::NCPolynomial p(d);
  while (p.is_zero()) {
    const int n = count(rng);
    for (int t = 0; t < n; ++t) {
      ncpoly::Letters w(static_cast<std::size_t>(degree));
      for (auto& l : w) l = letter(rng);
      const double re = coeff(rng);
      p.add_term(w, Complex(re, coeff(rng)));
    }
  }
  return p;
}

reps::RepTuple with_row_norm(const reps::RepTuple& t, double target) {
  if (t.row_norm() == 0.0) return t;
  std::vector<CMatrix> out;
  for (const auto& m : t.matrices()) out.push_back(m * (target / t.row_norm()));
  return reps::RepTuple(std::move(out));
}

reps::RepTuple random_commuting_pair(Index k, double row_norm, Rng& rng) {
  const CMatrix m = gaussian(k, k, rng);
  const CMatrix c = gaussian(1, 3, rng);
  const CMatrix b = c(0, 0) * CMatrix::Identity(k, k) + c(0, 1) * m + c(0, 2) * m * m;
  return with_row_norm(reps::RepTuple({m, b}), row_norm);
}

reps::RepTuple random_square_zero_pair(Index k, double row_norm, Rng& rng) {
  const CMatrix m = gaussian(k, k, rng);
  const CVector u = gaussian(k, 1, rng);
  CVector v = gaussian(k, 1, rng);
  v -= u * (u.dot(v) / u.squaredNorm());  // v* u = 0
  return with_row_norm(reps::RepTuple({m, u * v.adjoint()}), row_norm);
}

cpsg::CPMap random_unital_cp(Index k, int kraus_count, Rng& rng) {
  std::vector<CMatrix> g;
  CMatrix s = CMatrix::Zero(k, k);
  for (int l = 0; l < kraus_count; ++l) {
    g.push_back(gaussian(k, k, rng));
    s += g.back() * g.back().adjoint();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(s);
  const CMatrix inv_root = eig.operatorInverseSqrt();
  for (auto& m : g) m = inv_root * m;
  return cpsg::CPMap::from_kraus(g);
}

}  // namespace subprod::sampling
