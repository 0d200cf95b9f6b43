#include "subprod/sps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "subprod/subshift.hpp"

namespace subprod::sps {

using kernel::annihilate;
using kernel::complement;
using kernel::kron;
using kernel::orthonormalize;
using kernel::project_left;
using kernel::project_right;
using kernel::restrict_to_null;
using ncpoly::word_count;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Subspace vacuum_fiber() { return Subspace::full(1); }

void check_truncation(int N) {
  if (N < 0) throw InputError("truncation degree must be non-negative");
}

// X(n) = (X(n-1) (x) E) cap (E (x) X(n-1)). For a standard system built up
// to n - 1 this is the intersection of all X(i) (x) X(j), i + j = n.
Subspace extend_maximally(int d, const Subspace& prev) {
  const Subspace left = kernel::kron_space(prev, Subspace::full(d));
  const CMatrix rejected = left.frame() - project_right(d, prev, left.frame());
  return restrict_to_null(left, rejected, 10 * left.tol());
}

// (P_a (x) P_b) v
CMatrix project_pair(const Subspace& a, const Subspace& b, const CMatrix& v) {
  return project_left(a, b.ambient_dim(), project_right(a.ambient_dim(), b, v));
}

CMatrix tensor_power(const CMatrix& u, int n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, u);
  return out;
}

}  // namespace

SubproductSystem::SubproductSystem(int d, std::vector<Subspace> fibers,
                                   std::vector<std::string> notes)
    : d_(d), fibers_(std::move(fibers)), notes_(std::move(notes)) {
  if (d < 1) throw InputError("alphabet size must be at least 1");
  if (fibers_.empty()) throw InputError("a subproduct system needs at least X(0)");
  if (fibers_[0].ambient_dim() != 1 || fibers_[0].dim() != 1) {
    throw InputError("X(0) must be C");
  }
  for (std::size_t n = 1; n < fibers_.size(); ++n) {
    if (fibers_[n].ambient_dim() != word_count(d, static_cast<int>(n))) {
      throw InputError("fiber X(" + std::to_string(n) + ") is not a subspace of C^(d^" +
                       std::to_string(n) + ")");
    }
  }
}

const Subspace& SubproductSystem::fiber(int n) const {
  if (n < 0 || n > N()) {
    throw InputError("fiber X(" + std::to_string(n) + ") beyond truncation " +
                     std::to_string(N()));
  }
  return fibers_[static_cast<std::size_t>(n)];
}

std::vector<Index> SubproductSystem::dims() const {
  std::vector<Index> out;
  for (const auto& f : fibers_) out.push_back(f.dim());
  return out;
}

SubproductSystem SubproductSystem::truncated(int n) const {
  if (n < 0 || n > N()) throw InputError("truncated: degree out of range");
  return SubproductSystem(
      d_, std::vector<Subspace>(fibers_.begin(), fibers_.begin() + n + 1), notes_);
}

SubproductSystem full(int d, int N) {
  check_truncation(N);
  std::vector<Subspace> fibers{vacuum_fiber()};
  for (int n = 1; n <= N; ++n) fibers.push_back(Subspace::full(word_count(d, n)));
  return SubproductSystem(d, std::move(fibers));
}

SubproductSystem symmetric(int d, int N) {
  check_truncation(N);
  std::vector<Subspace> fibers{vacuum_fiber()};
  for (int n = 1; n <= N; ++n) {
    // One unit vector per multiset of letters: the normalised sum of e_alpha
    // over all words alpha with that multiset. Multisets are ordered by their
    // sorted word, which keeps the frame deterministic.
    std::map<ncpoly::Letters, std::vector<Index>> orbits;
    const Index count = word_count(d, n);
    for (Index i = 0; i < count; ++i) {
      ncpoly::Letters key = ncpoly::Word::from_index(i, n, d).letters();
      std::sort(key.begin(), key.end());
      orbits[key].push_back(i);
    }
    CMatrix frame = CMatrix::Zero(count, static_cast<Index>(orbits.size()));
    Index col = 0;
    for (const auto& [key, members] : orbits) {
      const double w = 1.0 / std::sqrt(static_cast<double>(members.size()));
      for (Index i : members) frame(i, col) = w;
      ++col;
    }
    fibers.push_back(Subspace::from_frame(std::move(frame)));
  }
  return SubproductSystem(d, std::move(fibers));
}

SubproductSystem from_ideal(const ncpoly::HomogeneousIdeal& ideal, int N) {
  check_truncation(N);
  const int d = ideal.d();
  std::vector<Subspace> fibers{vacuum_fiber()};
  // I(n) = E.I(n-1) + I(n-1).E + span{generators of degree n}, so
  // X(n) = (E (x) X(n-1)) cap (X(n-1) (x) E) cap {degree-n generators}^perp.
  for (int n = 1; n <= N; ++n) {
    Subspace x = n == 1 ? Subspace::full(d) : extend_maximally(d, fibers.back());
    std::vector<CVector> gens;
    for (const auto& g : ideal.generators()) {
      if (g.degree() == n) gens.push_back(ncpoly::embed_coeff(g, n));
    }
    if (!gens.empty()) {
      CMatrix dirs(word_count(d, n), static_cast<Index>(gens.size()));
      for (std::size_t j = 0; j < gens.size(); ++j) dirs.col(static_cast<Index>(j)) = gens[j];
      x = annihilate(x, dirs);
    }
    fibers.push_back(std::move(x));
  }
  return SubproductSystem(d, std::move(fibers));
}

SubproductSystem maximal_from_fibers(int d, const std::vector<Subspace>& prescribed, int N) {
  check_truncation(N);
  const int k = static_cast<int>(prescribed.size());
  std::vector<Subspace> fibers{vacuum_fiber()};
  for (int n = 1; n <= std::min(k, N); ++n) {
    const Subspace& x = prescribed[static_cast<std::size_t>(n - 1)];
    if (x.ambient_dim() != word_count(d, n)) {
      throw InputError("prescribed fiber " + std::to_string(n) + " has the wrong ambient dimension");
    }
    fibers.push_back(x);
  }
  // p_n <= p_i (x) I and p_n <= I (x) p_j for i + j = n <= k.
  for (int n = 2; n < static_cast<int>(fibers.size()); ++n) {
    const CMatrix& f = fibers[static_cast<std::size_t>(n)].frame();
    for (int i = 1; i < n; ++i) {
      const int j = n - i;
      const double left = kernel::op_norm(
          f - project_left(fibers[static_cast<std::size_t>(i)], word_count(d, j), f));
      const double right = kernel::op_norm(
          f - project_right(word_count(d, i), fibers[static_cast<std::size_t>(j)], f));
      if (std::max(left, right) > kCheckTol) {
        throw InputError("prescribed fibers are inconsistent: X(" + std::to_string(n) +
                         ") is not inside the product of X(" + std::to_string(i) + ") and X(" +
                         std::to_string(j) + ")");
      }
    }
  }
  for (int n = k + 1; n <= N; ++n) {
    Subspace x = n == 1 ? Subspace::full(d) : extend_maximally(d, fibers.back());
    for (int i = 1; i < n && x.dim() > 0; ++i) {
      const Subspace& a = fibers[static_cast<std::size_t>(i)];
      const Subspace& b = fibers[static_cast<std::size_t>(n - i)];
      x = restrict_to_null(x, x.frame() - project_pair(a, b, x.frame()), 10 * x.tol());
    }
    fibers.push_back(std::move(x));
  }
  return SubproductSystem(d, std::move(fibers));
}

SubproductSystem from_forbidden_words(int d, const std::vector<ncpoly::Word>& forbidden,
                                      int N, bool prune) {
  check_truncation(N);
  subshift::Language lang(d, forbidden, prune);
  std::vector<Subspace> fibers{vacuum_fiber()};
  for (int n = 1; n <= N; ++n) {
    const auto& words = lang.words(n);
    if (words.empty() && prune) {
      throw InputError("the forbidden words admit no bi-infinite sequence: no allowed word of length " +
                       std::to_string(n));
    }
    CMatrix frame = CMatrix::Zero(word_count(d, n), static_cast<Index>(words.size()));
    for (std::size_t j = 0; j < words.size(); ++j) frame(words[j].index(), static_cast<Index>(j)) = 1.0;
    fibers.push_back(Subspace::from_frame(std::move(frame)));
  }
  return SubproductSystem(d, std::move(fibers));
}

void require_admissible(const CMatrix& q, double tol) {
  kernel::require_finite(q, "q");
  if (q.rows() != q.cols() || q.rows() < 1) throw InputError("q must be a square matrix");
  for (Index i = 0; i < q.rows(); ++i) {
    if (std::abs(q(i, i)) > tol) throw InputError("q is not admissible: q_ii must be 0");
    for (Index j = 0; j < q.cols(); ++j) {
      if (i == j) continue;
      if (std::abs(q(i, j)) <= tol) throw InputError("q is not admissible: q_ij must be nonzero");
      if (std::abs(q(i, j) * q(j, i) - 1.0) > tol) {
        throw InputError("q is not admissible: q_ij q_ji must equal 1");
      }
    }
  }
}

SubproductSystem q_commuting(const CMatrix& q, int N) {
  require_admissible(q);
  const int d = static_cast<int>(q.rows());
  CMatrix relations = CMatrix::Zero(d * d, d * (d - 1) / 2);
  Index col = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      // e_j (x) e_i - q_ji e_i (x) e_j is a multiple of this one.
      relations(i * d + j, col) += 1.0;
      relations(j * d + i, col) -= q(i, j);
      ++col;
    }
  }
  const Subspace x2 = annihilate(Subspace::full(d * d), relations);
  return maximal_from_fibers(d, {Subspace::full(d), x2}, N);
}

SubproductSystem from_matrix_A(const CMatrix& a, int N) {
  kernel::require_finite(a, "A");
  if (a.rows() != a.cols() || a.rows() < 1) throw InputError("A must be a square matrix");
  const int d = static_cast<int>(a.rows());
  CVector removed(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) removed(i * d + j) = a(i, j);
  }
  if (removed.norm() == 0.0) {
    SubproductSystem x = maximal_from_fibers(d, {Subspace::full(d), Subspace::full(d * d)}, N);
    return SubproductSystem(d, x.fibers(), {"A = 0: no relation removed, X_A(2) is the full square"});
  }
  const Subspace x2 = annihilate(Subspace::full(d * d), removed);
  return maximal_from_fibers(d, {Subspace::full(d), x2}, N);
}

SubproductSystem from_components(int d, const std::vector<Subspace>& components) {
  std::vector<Subspace> fibers{vacuum_fiber()};
  for (std::size_t n = 1; n < components.size(); ++n) fibers.push_back(complement(components[n]));
  return SubproductSystem(d, std::move(fibers));
}

StandardReport validate_standard(const SubproductSystem& x, double tol) {
  StandardReport report;
  for (int total = 2; total <= x.N(); ++total) {
    const CMatrix& f = x.fiber(total).frame();
    if (f.cols() == 0) continue;
    for (int m = 1; m < total; ++m) {
      const int n = total - m;
      const double r = kernel::op_norm(f - project_pair(x.fiber(m), x.fiber(n), f));
      if (report.worst_m == 0 || r > report.max_residual) {
        report.max_residual = r;
        report.worst_m = m;
        report.worst_n = n;
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

std::vector<Subspace> ideal_of(const SubproductSystem& x) {
  std::vector<Subspace> out{Subspace::zero(1)};
  for (int n = 1; n <= x.N(); ++n) out.push_back(complement(x.fiber(n)));
  return out;
}

double fiber_distance(const SubproductSystem& a, const SubproductSystem& b) {
  if (a.d() != b.d() || a.N() != b.N()) return kInf;
  double worst = 0.0;
  for (int n = 0; n <= a.N(); ++n) {
    const Subspace& fa = a.fiber(n);
    const Subspace& fb = b.fiber(n);
    if (fa.dim() != fb.dim()) return kInf;
    worst = std::max({worst, kernel::containment_residual(fa, fb),
                      kernel::containment_residual(fb, fa)});
  }
  return worst;
}

bool same_fibers(const SubproductSystem& a, const SubproductSystem& b, double tol) {
  return fiber_distance(a, b) <= tol;
}

double verify_change_of_variables(const SubproductSystem& x, const SubproductSystem& y,
                                  const CMatrix& u) {
  if (x.d() != y.d() || u.rows() != x.d() || u.cols() != x.d()) {
    throw InputError("change of variables: dimension mismatch");
  }
  const double unitarity =
      kernel::op_norm(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
  if (unitarity > kCheckTol) throw InputError("change of variables: U is not unitary");
  const int top = std::min(x.N(), y.N());
  double worst = 0.0;
  CMatrix power = CMatrix::Identity(1, 1);
  for (int n = 1; n <= top; ++n) {
    power = kron(power, u);
    if (x.fiber(n).dim() != y.fiber(n).dim()) return kInf;
    const CMatrix image = power * x.fiber(n).frame();
    worst = std::max(worst, image.cols() ? kernel::op_norm(y.fiber(n).reject(image)) : 0.0);
  }
  return worst;
}

CMatrix permutation_unitary(const std::vector<int>& sigma) {
  const Index d = static_cast<Index>(sigma.size());
  CMatrix u = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) u(sigma[static_cast<std::size_t>(i)], i) = 1.0;
  return u;
}

std::optional<QIsomorphism> iso_q(const CMatrix& q, const CMatrix& r, int N, double tol) {
  require_admissible(q);
  require_admissible(r);
  if (q.rows() != r.rows()) throw InputError("iso_q: q and r have different sizes");
  const int d = static_cast<int>(q.rows());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j && (std::abs(q(i, j) - 1.0) <= tol || std::abs(r(i, j) - 1.0) <= tol)) {
        throw InputError("iso_q: the criterion requires q_ij != 1 and r_ij != 1 for all i != j");
      }
    }
  }
  std::vector<int> sigma(static_cast<std::size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    bool match = true;
    for (int i = 0; i < d && match; ++i) {
      for (int j = 0; j < d && match; ++j) {
        if (i != j && std::abs(r(sigma[i], sigma[j]) - q(i, j)) > tol) match = false;
      }
    }
    if (!match) continue;

    QIsomorphism iso;
    iso.sigma = sigma;
    iso.unitary = permutation_unitary(sigma);
    const SubproductSystem xq = q_commuting(q, N);
    const SubproductSystem xr = q_commuting(r, N);
    iso.fiber_residual = verify_change_of_variables(xq, xr, iso.unitary);
    for (int total = 2; total <= N; ++total) {
      const CMatrix v_total = tensor_power(iso.unitary, total);
      for (int m = 1; m < total; ++m) {
        const CMatrix domain = kron(xq.fiber(m).frame(), xq.fiber(total - m).frame());
        const CMatrix lhs = v_total * xq.fiber(total).project(domain);
        const CMatrix rhs = xr.fiber(total).project(v_total * domain);
        iso.product_residual = std::max(iso.product_residual, kernel::op_norm(lhs - rhs));
      }
    }
    return iso;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

AInvariants classify_A(const CMatrix& a_in, double tol) {
  kernel::require_finite(a_in, "A");
  if (a_in.rows() != 2 || a_in.cols() != 2) throw InputError("classify_A: A must be 2x2");
  const double top = a_in.cwiseAbs().maxCoeff();
  if (top == 0.0) throw InputError("classify_A: A must be nonzero");
  // Every invariant is scale-free; rescaling keeps huge entries from overflowing.
  const CMatrix a = a_in / top;
  const double scale = a.norm();
  const CMatrix sym = (a + a.transpose()) / 2.0;
  const Complex c = (a(0, 1) - a(1, 0)) / 2.0;
  Eigen::JacobiSVD<CMatrix> svd(sym);
  const double s1 = svd.singularValues()(0);
  const double s2 = svd.singularValues()(1);

  AInvariants inv;
  inv.rank_sym = (s1 > tol * scale) + (s2 > tol * scale);
  inv.rank_antisym = std::abs(c) > tol * scale ? 2 : 0;
  const double norm = std::sqrt(s1 * s1 + s2 * s2 + std::norm(c));
  inv.ratio = {s1 / norm, s2 / norm, std::abs(c) / norm};
  if (inv.rank_sym == 2 && inv.rank_antisym == 2) {
    // Under A -> lambda U^t A U both c^2 and det(A^s) pick up lambda^2 det(U)^2.
    inv.cross_ratio = c * c / sym.determinant();
  }
  return inv;
}

bool same_invariants(const AInvariants& a, const AInvariants& b, double tol) {
  if (a.rank_sym != b.rank_sym || a.rank_antisym != b.rank_antisym) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(a.ratio[i] - b.ratio[i]) > tol) return false;
  }
  if (a.cross_ratio.has_value() != b.cross_ratio.has_value()) return false;
  if (a.cross_ratio) {
    const double mag = std::max(1.0, std::abs(*a.cross_ratio));
    if (std::abs(*a.cross_ratio - *b.cross_ratio) > tol * mag) return false;
  }
  return true;
}

double n3_obstruction_check() {
  CMatrix flip = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) flip(j * 2 + i, i * 2 + j) = 1.0;
  }
  const CMatrix id = CMatrix::Identity(2, 2);
  return kernel::op_norm(kron(id, flip) - kron(flip, id));
}

}  // namespace subprod::sps
