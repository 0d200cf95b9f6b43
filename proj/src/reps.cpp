#include "subprod/reps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace subprod::reps {

using kernel::op_norm;
using ncpoly::word_count;

namespace {

// T^{alpha*} F for |alpha| = n from the same list at n - 1.
// (alpha i)* = T_i* T^{alpha*} and alpha i sits at index(alpha) * d + i - 1.
void extend_adjoint(std::vector<CMatrix>& level, const RepTuple& t) {
  std::vector<CMatrix> next;
  next.reserve(level.size() * static_cast<std::size_t>(t.d()));
  for (const auto& block : level) {
    for (const auto& ti : t.matrices()) next.push_back(ti.adjoint() * block);
  }
  level = std::move(next);
}

CMatrix stack_rows(const std::vector<CMatrix>& blocks) {
  const Index rows = blocks.front().rows();
  CMatrix out(static_cast<Index>(blocks.size()) * rows, blocks.front().cols());
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    out.middleRows(static_cast<Index>(a) * rows, rows) = blocks[a];
  }
  return out;
}

void require_alphabet(const SubproductSystem& x, const RepTuple& t, const char* op) {
  if (x.d() != t.d()) {
    throw InputError(std::string(op) + ": system has d = " + std::to_string(x.d()) +
                     " but the tuple has " + std::to_string(t.d()) + " operators");
  }
}

int effective_degree(const NCPolynomial& p) { return std::max(p.degree(), 0); }

}  // namespace

RepTuple::RepTuple(std::vector<CMatrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InputError("RepTuple: no operators");
  const Index k = matrices_.front().rows();
  if (k == 0) throw InputError("RepTuple: zero-dimensional operators");
  for (const auto& m : matrices_) {
    if (m.rows() != k || m.cols() != k) {
      throw InputError("RepTuple: operators must be square of equal size");
    }
    kernel::require_finite(m, "RepTuple");
  }
  CMatrix row(k, k * static_cast<Index>(matrices_.size()));
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    row.middleCols(static_cast<Index>(i) * k, k) = matrices_[i];
  }
  row_norm_ = kernel::op_norm(row);
}

const CMatrix& RepTuple::operator[](int letter) const {
  if (letter < 1 || letter > d()) throw InputError("RepTuple: letter out of range");
  return matrices_[static_cast<std::size_t>(letter - 1)];
}

CMatrix RepTuple::word(const Word& w) const {
  if (w.d() != d()) throw InputError("RepTuple::word: alphabet mismatch");
  CMatrix out = CMatrix::Identity(k(), k());
  for (int letter : w.letters()) out = out * (*this)[letter];
  return out;
}

CMatrix RepTuple::eval(const NCPolynomial& p) const {
  if (p.d() != d()) throw InputError("RepTuple::eval: alphabet mismatch");
  CMatrix out = CMatrix::Zero(k(), k());
  for (const auto& [letters, c] : p.terms()) out += c * word(Word(letters, d()));
  return out;
}

std::vector<CMatrix> RepTuple::all_words(int n) const {
  std::vector<CMatrix> level{CMatrix::Identity(k(), k())};
  for (int step = 0; step < n; ++step) {
    std::vector<CMatrix> next;
    next.reserve(level.size() * matrices_.size());
    for (const auto& block : level) {
      for (const auto& ti : matrices_) next.push_back(block * ti);
    }
    level = std::move(next);
  }
  return level;
}

CMatrix tilde(const RepTuple& t, int n) {
  const auto words = t.all_words(n);
  CMatrix out(t.k(), static_cast<Index>(words.size()) * t.k());
  for (std::size_t a = 0; a < words.size(); ++a) {
    out.middleCols(static_cast<Index>(a) * t.k(), t.k()) = words[a];
  }
  return out;
}

RepresentationReport is_representation(const SubproductSystem& x, const RepTuple& t,
                                       double tol) {
  require_alphabet(x, t, "is_representation");
  RepresentationReport report;
  report.row_norm = t.row_norm();
  report.contractive = t.row_norm() <= 1.0 + tol;
  report.residuals.assign(static_cast<std::size_t>(x.N()) + 1, 0.0);
  const CMatrix id = CMatrix::Identity(t.k(), t.k());
  std::vector<CMatrix> level{id};
  for (int n = 1; n <= x.N(); ++n) {
    extend_adjoint(level, t);
    const CMatrix stacked = stack_rows(level);
    // ||T~ (P^perp (x) I)|| = ||(P^perp (x) I) T~*||.
    const CMatrix rejected = stacked - kernel::project_left(x.fiber(n), t.k(), stacked);
    const double r = op_norm(rejected);
    report.residuals[static_cast<std::size_t>(n)] = r;
    if (report.worst_degree == 0 || r > report.max_residual) {
      report.max_residual = r;
      report.worst_degree = n;
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

PoissonTransform::PoissonTransform(const RepTuple& t, const SubproductSystem& x, double r,
                                   int n_trunc)
    : fock_(x.N() >= n_trunc && n_trunc >= 0 ? x.truncated(n_trunc) : x),
      k_(t.k()),
      n_trunc_(n_trunc) {
  require_alphabet(x, t, "poisson_transform");
  if (!(r > 0.0 && r < 1.0)) throw InputError("poisson_transform: r must lie in (0, 1)");
  if (n_trunc < 0) throw InputError("poisson_transform: negative truncation");
  if (x.N() < n_trunc) {
    throw InputError("poisson_transform: system truncated at " + std::to_string(x.N()) +
                     " but N_trunc = " + std::to_string(n_trunc));
  }
  // Delta(rT) = I - r^2 sum T_i T_i*.
  CMatrix delta = CMatrix::Identity(k_, k_);
  for (const auto& ti : t.matrices()) delta -= r * r * ti * ti.adjoint();
  const CMatrix root = kernel::psd_sqrt(delta);

  kernel_ = CMatrix::Zero(fock_.total_dim(), k_ * k_);
  std::vector<CMatrix> level{root};  // D T^{gamma*}
  double scale = 1.0;
  for (int n = 0; n <= n_trunc; ++n) {
    if (n > 0) {
      std::vector<CMatrix> next;
      next.reserve(level.size() * static_cast<std::size_t>(t.d()));
      // (i gamma)* = T^{gamma*} T_i*, and i gamma sits at (i-1) d^(n-1) + index(gamma).
      for (int i = 1; i <= t.d(); ++i) {
        for (const auto& block : level) next.push_back(block * t[i].adjoint());
      }
      level = std::move(next);
      scale *= r;
    }
    const Subspace& fiber = fock_.system().fiber(n);
    if (fiber.dim() == 0) continue;
    // Row gamma: column-major flattening of r^n D T^{gamma*}, entry (row, h) at h*k + row.
    CMatrix g(static_cast<Index>(level.size()), k_ * k_);
    for (std::size_t a = 0; a < level.size(); ++a) {
      g.row(static_cast<Index>(a)) =
          Eigen::Map<const Eigen::RowVectorXcd>(level[a].data(), k_ * k_) * scale;
    }
    kernel_.middleRows(fock_.offset(n), fiber.dim()) = fiber.frame().adjoint() * g;
  }
}

CMatrix PoissonTransform::adjoint_word_apply(const Word& w) const {
  CMatrix out = kernel_;
  for (int letter : w.letters()) out = fock_.apply_shift_adjoint(letter, out);
  return out;
}

CMatrix PoissonTransform::evaluate(const Word& alpha, const Word& beta) const {
  if (alpha.d() != fock_.d() || beta.d() != fock_.d()) {
    throw InputError("poisson_transform: alphabet mismatch");
  }
  if (alpha.length() + beta.length() > n_trunc_) {
    throw InputError("poisson_transform: N_trunc = " + std::to_string(n_trunc_) +
                     " is smaller than |alpha| + |beta| = " +
                     std::to_string(alpha.length() + beta.length()));
  }
  const CMatrix a = adjoint_word_apply(alpha);
  const CMatrix b = adjoint_word_apply(beta);
  // <K e_h', (S^a S^b* (x) I) K e_h> = sum_row <S^a* K e_h', S^b* K e_h> per coordinate.
  CMatrix out = CMatrix::Zero(k_, k_);
  const Index rows = a.rows();
  for (Index row = 0; row < k_; ++row) {
    CMatrix ar(rows, k_), br(rows, k_);
    for (Index h = 0; h < k_; ++h) {
      ar.col(h) = a.col(h * k_ + row);
      br.col(h) = b.col(h * k_ + row);
    }
    out += ar.adjoint() * br;
  }
  return out;
}

double PoissonTransform::isometry_defect() const {
  const Word empty({}, fock_.d());
  return op_norm(evaluate(empty, empty) - CMatrix::Identity(k_, k_));
}

CMatrix poisson_transform(const RepTuple& t, const SubproductSystem& x, const Word& alpha,
                          const Word& beta, int n_trunc, double r) {
  return PoissonTransform(t, x, r, n_trunc).evaluate(alpha, beta);
}

VonNeumannReport vn_inequality_check(const fock::FockOperators& f, const RepTuple& t,
                                     const NCPolynomial& p, const NCPolynomial& q) {
  require_alphabet(f.system(), t, "vn_inequality_check");
  const int need = effective_degree(p) + effective_degree(q) + 4;
  if (f.N() < need) {
    throw InputError("vn_inequality_check: N = " + std::to_string(f.N()) +
                     " is below deg p + deg q + 4 = " + std::to_string(need));
  }
  const auto rep = is_representation(f.system(), t);
  if (!rep.pass || !rep.contractive) {
    throw InputError("vn_inequality_check: tuple is not a representation (residual " +
                     std::to_string(rep.max_residual) + ", row norm " +
                     std::to_string(rep.row_norm) + ")");
  }
  VonNeumannReport out;
  out.lhs = op_norm(t.eval(p) * t.eval(q).adjoint());
  out.rhs = op_norm(f.poly_operator(p) * f.poly_operator(q).adjoint());
  out.pass = out.lhs <= out.rhs + kVonNeumannSlack;
  return out;
}

VonNeumannReport vn_inequality_check(const SubproductSystem& x, const RepTuple& t,
                                     const NCPolynomial& p, const NCPolynomial& q, int N) {
  if (x.N() < N) {
    throw InputError("vn_inequality_check: system truncated below N = " + std::to_string(N));
  }
  return vn_inequality_check(fock::FockOperators(x.truncated(N)), t, p, q);
}

namespace {

// (I - P_X(n) (x) P_H) T~_n* F_H for n = 1..N, stacked.
CMatrix piece_defect(const SubproductSystem& x, const RepTuple& t, const Subspace& h) {
  std::vector<CMatrix> parts;
  Index rows = 0;
  std::vector<CMatrix> level{h.frame()};
  for (int n = 1; n <= x.N(); ++n) {
    extend_adjoint(level, t);
    const CMatrix stacked = stack_rows(level);
    const CMatrix q = kernel::kron(x.fiber(n).frame(), h.frame());
    parts.push_back(stacked - q * (q.adjoint() * stacked));
    rows += parts.back().rows();
  }
  CMatrix out(rows, h.dim());
  Index at = 0;
  for (const auto& p : parts) {
    out.middleRows(at, p.rows()) = p;
    at += p.rows();
  }
  return out;
}

}  // namespace

PieceResult maximal_piece(const SubproductSystem& x, const SubproductSystem& y,
                          const RepTuple& t, double tol) {
  require_alphabet(x, t, "maximal_piece");
  if (x.d() != y.d() || x.N() != y.N()) {
    throw InputError("maximal_piece: X and Y must share d and N");
  }
  for (int n = 0; n <= x.N(); ++n) {
    const double r = kernel::containment_residual(y.fiber(n), x.fiber(n));
    if (r > tol) {
      throw InputError("maximal_piece: X(" + std::to_string(n) + ") is not inside Y(" +
                       std::to_string(n) + ") (residual " + std::to_string(r) + ")");
    }
  }
  const auto rep = is_representation(y, t, tol);
  if (!rep.pass) {
    throw InputError("maximal_piece: T is not a representation of Y (residual " +
                     std::to_string(rep.max_residual) + " at degree " +
                     std::to_string(rep.worst_degree) + ")");
  }
  PieceResult out{Subspace::full(t.k()), 0};
  while (out.piece.dim() > 0) {
    ++out.iterations;
    const Subspace next =
        kernel::restrict_to_null(out.piece, piece_defect(x, t, out.piece), tol);
    const bool stable = next.dim() == out.piece.dim();
    out.piece = next;
    if (stable) break;
  }
  return out;
}

double piece_residual(const SubproductSystem& x, const RepTuple& t, const Subspace& h) {
  require_alphabet(x, t, "piece_residual");
  if (h.ambient_dim() != t.k()) throw InputError("piece_residual: subspace has wrong ambient");
  if (h.dim() == 0) return 0.0;
  return op_norm(piece_defect(x, t, h));
}

RepTuple compress(const RepTuple& t, const Subspace& h) {
  if (h.ambient_dim() != t.k()) throw InputError("compress: subspace has wrong ambient");
  if (h.dim() == 0) throw InputError("compress: zero subspace");
  std::vector<CMatrix> out;
  for (const auto& ti : t.matrices()) out.push_back(h.frame().adjoint() * ti * h.frame());
  return RepTuple(std::move(out));
}

}  // namespace subprod::reps
