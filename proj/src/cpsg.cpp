#include "subprod/cpsg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace subprod::cpsg {

using kernel::op_norm;

namespace {

Index side_of(Index n) {
  const auto k = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (k * k != n) throw InputError("CPMap: Choi matrix size is not a square");
  return k;
}

CMatrix unit(Index k, Index i, Index j) {
  CMatrix e = CMatrix::Zero(k, k);
  e(i, j) = 1.0;
  return e;
}

std::vector<CMatrix> minimal_kraus_of(const CMatrix& choi, Index k) {
  std::vector<CMatrix> out;
  if (choi.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(choi);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double top = lambda.maxCoeff();
  if (top <= 0.0) return out;
  for (Index l = lambda.size() - 1; l >= 0; --l) {
    if (lambda(l) <= kRankTol * top) break;
    CVector v = eig.eigenvectors().col(l);
    // Fix the phase on the first entry of maximal modulus.
    Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    v *= std::conj(v(pivot)) / std::abs(v(pivot));
    out.push_back(std::sqrt(lambda(l)) * unvec(v, k));
  }
  return out;
}

}  // namespace

CVector vec(const CMatrix& k) {
  CVector v(k.size());
  for (Index a = 0; a < k.rows(); ++a) {
    for (Index i = 0; i < k.cols(); ++i) v(a * k.cols() + i) = k(a, i);
  }
  return v;
}

CMatrix unvec(const CVector& v, Index k) {
  if (v.size() != k * k) throw InputError("unvec: length is not k^2");
  CMatrix m(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index i = 0; i < k; ++i) m(a, i) = v(a * k + i);
  }
  return m;
}

CPMap::CPMap(Index k, CMatrix choi)
    : k_(k), choi_((choi + choi.adjoint()) / 2.0), kraus_(minimal_kraus_of(choi_, k)) {}

CPMap CPMap::from_kraus(const std::vector<CMatrix>& kraus) {
  if (kraus.empty()) throw InputError("CPMap::from_kraus: empty Kraus family");
  const Index k = kraus.front().rows();
  CMatrix choi = CMatrix::Zero(k * k, k * k);
  for (const auto& m : kraus) {
    if (m.rows() != k || m.cols() != k) {
      throw InputError("CPMap::from_kraus: Kraus operators must be square of equal size");
    }
    kernel::require_finite(m, "CPMap::from_kraus");
    const CVector v = vec(m);
    choi += v * v.adjoint();
  }
  return CPMap(k, std::move(choi));
}

CPMap CPMap::from_choi(const CMatrix& choi, double tol) {
  kernel::require_finite(choi, "CPMap::from_choi");
  if (choi.rows() != choi.cols()) throw InputError("CPMap::from_choi: Choi matrix not square");
  const Index k = side_of(choi.rows());
  const double scale = std::max(1.0, choi.cwiseAbs().maxCoeff());
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
    throw InputError("CPMap::from_choi: Choi matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig((choi + choi.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
  const double low = eig.eigenvalues().minCoeff();
  if (low < -tol * scale) {
    throw InputError("CPMap::from_choi: Choi matrix has eigenvalue " + std::to_string(low) +
                     ", the map is not completely positive");
  }
  return CPMap(k, choi);
}

CPMap CPMap::identity(Index k) { return from_kraus({CMatrix::Identity(k, k)}); }

CMatrix CPMap::apply(const CMatrix& a) const {
  if (a.rows() != k_ || a.cols() != k_) throw InputError("CPMap::apply: size mismatch");
  CMatrix out = CMatrix::Zero(k_, k_);
  for (const auto& m : kraus_) out += m * a * m.adjoint();
  return out;
}

bool CPMap::is_unital(double tol) const {
  return op_norm(unit_image() - CMatrix::Identity(k_, k_)) <= tol;
}

bool CPMap::is_contractive(double tol) const {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(unit_image(), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff() <= 1.0 + tol;
}

CPMap compose(const CPMap& outer, const CPMap& inner) {
  const Index k = inner.k();
  if (outer.k() != k) throw InputError("compose: maps act on different algebras");
  const CMatrix& c = inner.choi();
  CMatrix out(k * k, k * k);
  CMatrix block(k, k);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < k; ++j) {
      // inner(E_ij)(x, y) = C(x k + i, y k + j).
      for (Index x = 0; x < k; ++x) {
        for (Index y = 0; y < k; ++y) block(x, y) = c(x * k + i, y * k + j);
      }
      const CMatrix image = outer.apply(block);
      for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) out(a * k + i, b * k + j) = image(a, b);
      }
    }
  }
  return CPMap::from_choi(out);
}

CPMap power(const CPMap& theta, int n) {
  if (n < 0) throw InputError("power: negative exponent");
  CPMap out = CPMap::identity(theta.k());
  for (int step = 0; step < n; ++step) out = compose(theta, out);
  return out;
}

double max_entry_distance(const CPMap& theta, const CPMap& phi) {
  if (theta.k() != phi.k()) return std::numeric_limits<double>::infinity();
  return (theta.choi() - phi.choi()).cwiseAbs().maxCoeff();
}

std::vector<CMatrix> kraus_minimal(const CPMap& theta) { return theta.kraus(); }

ArvesonFiber arveson_fiber(const CPMap& theta, int n) {
  if (n < 1) throw InputError("arveson_fiber: degree must be at least 1");
  ArvesonFiber out;
  out.kraus = kraus_minimal(power(theta, n));
  out.dim = static_cast<Index>(out.kraus.size());
  return out;
}

double coisometry_check(const CPMap& theta, int m, int n) {
  if (m < 1 || n < 1) throw InputError("coisometry_check: degrees must be at least 1");
  const auto a = arveson_fiber(theta, m).kraus;
  const auto b = arveson_fiber(theta, n).kraus;
  const auto c = arveson_fiber(theta, m + n).kraus;
  const Index k = theta.k();
  CMatrix products(k * k, static_cast<Index>(a.size() * b.size()));
  Index col = 0;
  for (const auto& ai : a) {
    for (const auto& bj : b) products.col(col++) = vec(ai * bj);
  }
  if (c.empty()) return products.size() == 0 ? 0.0 : op_norm(products);
  CMatrix basis(k * k, static_cast<Index>(c.size()));
  for (std::size_t l = 0; l < c.size(); ++l) basis.col(static_cast<Index>(l)) = vec(c[l]);
  const CMatrix mu = basis.colPivHouseholderQr().solve(products);
  const double expansion = op_norm(products - basis * mu);
  const double defect =
      op_norm(mu * mu.adjoint() - CMatrix::Identity(basis.cols(), basis.cols()));
  return std::max(expansion, defect);
}

ArvesonSystem arveson_system(const CPMap& theta, int N) {
  if (N < 1) throw InputError("arveson_system: N must be at least 1");
  const auto& k1 = theta.kraus();
  if (k1.empty()) throw InputError("arveson_system: the zero map has E(1) = 0");
  reps::RepTuple rep(k1);
  const int d = rep.d();
  const Index k = theta.k();
  std::vector<kernel::Subspace> fibers{kernel::Subspace::full(1)};
  for (int n = 1; n <= N; ++n) {
    const auto words = rep.all_words(n);
    CMatrix m(k * k, static_cast<Index>(words.size()));
    for (std::size_t a = 0; a < words.size(); ++a) m.col(static_cast<Index>(a)) = vec(words[a]);
    fibers.push_back(kernel::orthonormalize(m.adjoint()));
  }
  return {sps::SubproductSystem(d, std::move(fibers), {"Arveson-Stinespring realization"}),
          std::move(rep)};
}

SigmaSemigroup sigma_semigroup(const sps::SubproductSystem& x, const reps::RepTuple& r,
                               double tol) {
  const auto rep = reps::is_representation(x, r, tol);
  if (!rep.pass) {
    throw InputError("sigma_semigroup: R is not a representation (residual " +
                     std::to_string(rep.max_residual) + " at degree " +
                     std::to_string(rep.worst_degree) + ")");
  }
  const Index k = r.k();
  SigmaSemigroup out;
  out.maps.push_back(CPMap::identity(k));
  for (int n = 1; n <= x.N(); ++n) {
    const CMatrix& v = x.fiber(n).frame();
    const auto words = r.all_words(n);
    std::vector<CMatrix> kraus;
    for (Index j = 0; j < v.cols(); ++j) {
      CMatrix cj = CMatrix::Zero(k, k);
      for (std::size_t a = 0; a < words.size(); ++a) cj += v(static_cast<Index>(a), j) * words[a];
      kraus.push_back(std::move(cj));
    }
    if (kraus.empty()) kraus.push_back(CMatrix::Zero(k, k));
    out.maps.push_back(CPMap::from_kraus(kraus));
  }
  for (int m = 1; m <= x.N(); ++m) {
    for (int n = 1; m + n <= x.N(); ++n) {
      for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
          const CMatrix e = unit(k, i, j);
          const double res = op_norm(out.maps[static_cast<std::size_t>(m)].apply(
                                         out.maps[static_cast<std::size_t>(n)].apply(e)) -
                                     out.maps[static_cast<std::size_t>(m + n)].apply(e));
          out.semigroup_residual = std::max(out.semigroup_residual, res);
        }
      }
    }
  }
  return out;
}

}  // namespace subprod::cpsg
