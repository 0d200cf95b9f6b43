#include "subprod/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace subprod::kernel {

namespace {

// Thin left factor and singular values of a (possibly tall) matrix. Tall
// inputs go through a Householder QR first so the SVD runs on a square
// triangular factor.
struct ThinSvd {
  CMatrix u;
  Eigen::VectorXd sigma;
  CMatrix v;
};

template <class Svd>
void take(const Svd& svd, bool want_v, ThinSvd& out) {
  out.u = svd.matrixU();
  out.sigma = svd.singularValues();
  if (want_v) out.v = svd.matrixV();
}

bool finite(const ThinSvd& s) { return s.u.allFinite() && s.sigma.allFinite() && s.v.allFinite(); }

// Eigen 3.4's divide-and-conquer SVD occasionally returns NaN on
// rank-deficient complex input; Jacobi is slower but does not.
ThinSvd svd_of(const CMatrix& m, bool want_v) {
  const int opts = Eigen::ComputeThinU | (want_v ? Eigen::ComputeThinV : 0);
  ThinSvd out;
  take(Eigen::BDCSVD<CMatrix>(m, opts), want_v, out);
  if (!finite(out)) take(Eigen::JacobiSVD<CMatrix>(m, opts), want_v, out);
  return out;
}

ThinSvd thin_svd(const CMatrix& m, bool want_v) {
  if (m.rows() > 2 * m.cols() && m.cols() > 0) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    ThinSvd out = svd_of(r, want_v);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
    out.u = q * out.u;
    return out;
  }
  return svd_of(m, want_v);
}

Index count_above(const Eigen::VectorXd& sigma, double tol) {
  if (sigma.size() == 0) return 0;
  const double cut = tol * sigma(0);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut && sigma(r) > 0.0) ++r;
  return r;
}

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw InputError(std::string(op) + ": ambient dimensions differ (" +
                     std::to_string(a.ambient_dim()) + " vs " +
                     std::to_string(b.ambient_dim()) + ")");
  }
}

}  // namespace

void require_finite(const CMatrix& m, std::string_view what) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NumericalError(std::string(what) + ": non-finite entry at (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

Subspace Subspace::zero(Index ambient_dim, double tol) {
  return Subspace(CMatrix(ambient_dim, 0), tol);
}

Subspace Subspace::full(Index ambient_dim, double tol) {
  return Subspace(CMatrix::Identity(ambient_dim, ambient_dim), tol);
}

Subspace Subspace::from_frame(CMatrix frame, double tol) {
  require_finite(frame, "Subspace::from_frame");
  if (frame.cols() > frame.rows()) {
    throw InputError("Subspace::from_frame: more columns than ambient dimension");
  }
  const CMatrix gram = frame.adjoint() * frame;
  const double defect =
      frame.cols() == 0
          ? 0.0
          : (gram - CMatrix::Identity(frame.cols(), frame.cols())).cwiseAbs().maxCoeff();
  if (defect > 10 * tol) {
    throw InputError("Subspace::from_frame: columns are not orthonormal (defect " +
                     std::to_string(defect) + ")");
  }
  return Subspace(std::move(frame), tol);
}

CMatrix Subspace::project(const CMatrix& v) const {
  return frame_ * (frame_.adjoint() * v);
}

CMatrix Subspace::reject(const CMatrix& v) const { return v - project(v); }

Subspace orthonormalize(const CMatrix& vectors, double tol) {
  require_finite(vectors, "orthonormalize");
  if (vectors.cols() == 0 || vectors.rows() == 0) {
    return Subspace::zero(vectors.rows(), tol);
  }
  // The span is scale-free; normalizing keeps huge entries from overflowing.
  const double top = vectors.cwiseAbs().maxCoeff();
  if (top == 0.0) return Subspace::zero(vectors.rows(), tol);
  ThinSvd svd = thin_svd(vectors / top, false);
  const Index r = count_above(svd.sigma, tol);
  return Subspace::from_frame(svd.u.leftCols(r), tol);
}

Subspace complement(const Subspace& s) {
  const Index m = s.ambient_dim();
  const Index k = s.dim();
  if (k == 0) return Subspace::full(m, s.tol());
  if (k == m) return Subspace::zero(m, s.tol());
  Eigen::HouseholderQR<CMatrix> qr(s.frame());
  CMatrix tail = CMatrix::Zero(m, m - k);
  tail.bottomRows(m - k).setIdentity();
  CMatrix frame = qr.householderQ() * tail;
  return Subspace::from_frame(std::move(frame), s.tol());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "intersect");
  const double tol = std::max(a.tol(), b.tol());
  const Subspace& small = a.dim() <= b.dim() ? a : b;
  const Subspace& big = a.dim() <= b.dim() ? b : a;
  if (small.dim() == 0) return Subspace::zero(a.ambient_dim(), tol);
  if (big.dim() == big.ambient_dim()) return Subspace::from_frame(small.frame(), tol);

  // x = F_small c lies in `big` iff (I - P_big) F_small c = 0. The singular
  // values of the rejected frame are the sines of the principal angles.
  return restrict_to_null(small, big.reject(small.frame()), 10 * tol);
}

Subspace restrict_to_null(const Subspace& s, const CMatrix& map, double cut) {
  if (map.cols() != s.dim()) throw InputError("restrict_to_null: column count mismatch");
  const Index cols = map.cols();
  if (cols == 0) return s;
  CMatrix tri;
  if (map.rows() >= cols) {
    Eigen::HouseholderQR<CMatrix> qr(map);
    tri = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  } else {
    tri = map;
  }
  Eigen::JacobiSVD<CMatrix> svd(tri, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Index nonzero = 0;
  while (nonzero < sigma.size() && sigma(nonzero) > cut) ++nonzero;
  const CMatrix coeffs = svd.matrixV().rightCols(cols - nonzero);
  return Subspace::from_frame(s.frame() * coeffs, s.tol());
}

Subspace annihilate(const Subspace& s, const CMatrix& directions) {
  if (directions.rows() != s.ambient_dim()) {
    throw InputError("annihilate: direction vectors have the wrong length");
  }
  if (directions.cols() == 0 || s.dim() == 0) return s;
  const Subspace dirs = orthonormalize(directions, s.tol());
  return restrict_to_null(s, dirs.frame().adjoint() * s.frame(), 10 * s.tol());
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "sum");
  CMatrix both(a.ambient_dim(), a.dim() + b.dim());
  both << a.frame(), b.frame();
  return orthonormalize(both, std::max(a.tol(), b.tol()));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Subspace kron_space(const Subspace& a, const Subspace& b) {
  return Subspace::from_frame(kron(a.frame(), b.frame()), std::max(a.tol(), b.tol()));
}

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  require_finite(a, "op_norm");
  // Largest eigenvalue of the smaller Gram matrix; accurate to eps * ||a||.
  const CMatrix gram = a.rows() <= a.cols() ? CMatrix(a * a.adjoint())
                                            : CMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

CMatrix psd_sqrt(const CMatrix& a, double tol) {
  require_finite(a, "psd_sqrt");
  if (a.rows() != a.cols()) throw InputError("psd_sqrt: matrix is not square");
  if (a.size() == 0) return a;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
    throw InputError("psd_sqrt: matrix is not Hermitian");
  }
  const CMatrix herm = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
  Eigen::VectorXd lambda = eig.eigenvalues();
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -tol * scale) {
      throw NumericalError("psd_sqrt: eigenvalue " + std::to_string(lambda(i)) +
                           " below tolerance");
    }
    lambda(i) = std::sqrt(std::max(0.0, lambda(i)));
  }
  const CMatrix& v = eig.eigenvectors();
  return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

CMatrix null_space(const CMatrix& m, double tol) {
  require_finite(m, "null_space");
  const Index n = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  CMatrix square = m;
  if (m.rows() > n) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    square = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<CMatrix> svd(square, Eigen::ComputeFullV);
  const Index r = count_above(svd.singularValues(), tol);
  return svd.matrixV().rightCols(n - r);
}

Index numerical_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  return count_above(thin_svd(m, false).sigma, tol);
}

double containment_residual(const Subspace& big, const Subspace& small) {
  require_same_ambient(big, small, "containment_residual");
  if (small.dim() == 0) return 0.0;
  return op_norm(big.reject(small.frame()));
}

bool contains(const Subspace& big, const Subspace& small, double tol) {
  return containment_residual(big, small) <= tol;
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

CMatrix project_left(const Subspace& s, Index m, const CMatrix& v) {
  const Index n = s.ambient_dim();
  if (v.rows() != n * m) throw InputError("project_left: row count mismatch");
  const CMatrix& f = s.frame();
  const CMatrix fc = f.conjugate();
  const CMatrix ft = f.transpose();
  CMatrix out(v.rows(), v.cols());
  for (Index c = 0; c < v.cols(); ++c) {
    // Column-major view: entry (b, a) is v[a*m + b], the transpose of the
    // natural n x m reshape, so P acts from the right as conj(F) F^T.
    Eigen::Map<const CMatrix> mt(v.col(c).data(), m, n);
    Eigen::Map<CMatrix> ot(out.col(c).data(), m, n);
    ot = (mt * fc) * ft;
  }
  return out;
}

CMatrix project_right(Index m, const Subspace& s, const CMatrix& v) {
  const Index n = s.ambient_dim();
  if (v.rows() != n * m) throw InputError("project_right: row count mismatch");
  CMatrix out(v.rows(), v.cols());
  Eigen::Map<const CMatrix> blocks(v.data(), n, m * v.cols());
  Eigen::Map<CMatrix> oblocks(out.data(), n, m * v.cols());
  oblocks = s.frame() * (s.frame().adjoint() * blocks);
  return out;
}

}  // namespace subprod::kernel
