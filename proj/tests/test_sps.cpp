#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subprod/sampling.hpp"
#include "subprod/sps.hpp"

using namespace subprod;
using namespace subprod::sps;
using kernel::Subspace;
using ncpoly::HomogeneousIdeal;
using ncpoly::Word;

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CMatrix qmatrix(Complex q12) {
  CMatrix q = CMatrix::Zero(2, 2);
  q(0, 1) = q12;
  q(1, 0) = 1.0 / q12;
  return q;
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<Word> words(const std::vector<std::string>& w) {
  std::vector<Word> out;
  for (const auto& s : w) out.push_back(Word::parse(s, 2));
  return out;
}

std::vector<Index> as_dims(std::initializer_list<Index> v) { return v; }

}  // namespace

TEST_CASE("symmetric fibers have binomial dimensions") {
  for (int d = 1; d <= 3; ++d) {
    const auto x = symmetric(d, 5);
    for (int n = 0; n <= 5; ++n) CHECK(x.fiber(n).dim() == binom(n + d - 1, n));
  }
  CHECK(symmetric(2, 3).fiber(3).dim() == 4);
  CHECK(symmetric(3, 2).fiber(2).dim() == 6);
}

TEST_CASE("symmetric fibers are the range of the permutation average") {
  for (int d = 2; d <= 3; ++d) {
    const int top = d == 2 ? 4 : 3;
    const auto x = symmetric(d, top);
    for (int n = 1; n <= top; ++n) {
      CHECK((x.fiber(n).projector() - oracle::symmetrizer(d, n)).norm() < 1e-10);
    }
  }
}

TEST_CASE("from_ideal examples") {
  CHECK(from_ideal(HomogeneousIdeal::parse(2, {"x1 x2 - x2 x1"}), 5).dims() ==
        as_dims({1, 2, 3, 4, 5, 6}));
  CHECK(from_ideal(HomogeneousIdeal::parse(2, {"x2 x2"}), 6).dims() ==
        as_dims({1, 2, 3, 5, 8, 13, 21}));
  CHECK(from_ideal(HomogeneousIdeal::parse(2, {"x1 x2", "x2 x2"}), 5).dims() ==
        as_dims({1, 2, 2, 2, 2, 2}));
}

TEST_CASE("from_ideal recursion equals the complement of the graded component") {
  sampling::Rng rng(2);
  for (int t = 0; t < 12; ++t) {
    const int d = 2 + t % 2;
    std::vector<ncpoly::NCPolynomial> gens{sampling::random_homogeneous(d, 2, 2, rng)};
    if (t % 3 == 0) gens.push_back(sampling::random_homogeneous(d, 3, 2, rng));
    const HomogeneousIdeal j(d, gens);
    const auto x = from_ideal(j, d == 2 ? 5 : 4);
    for (int n = 1; n <= x.N(); ++n) {
      const Subspace literal = kernel::complement(ncpoly::graded_component(j, n));
      CHECK(kernel::same_subspace(x.fiber(n), literal));
    }
    CHECK(validate_standard(x).pass);
  }
}

TEST_CASE("maximal_from_fibers examples") {
  const auto full1 = maximal_from_fibers(2, {Subspace::full(2)}, 5);
  CHECK(full1.dims() == as_dims({1, 2, 4, 8, 16, 32}));
  const auto sym = maximal_from_fibers(2, {Subspace::full(2), symmetric(2, 2).fiber(2)}, 5);
  CHECK(same_fibers(sym, from_ideal(HomogeneousIdeal::parse(2, {"x1 x2 - x2 x1"}), 5)));
  CMatrix e22 = CMatrix::Zero(4, 1);
  e22(3, 0) = 1;
  const auto gm = maximal_from_fibers(
      2, {Subspace::full(2), kernel::complement(kernel::orthonormalize(e22))}, 6);
  CHECK(same_fibers(gm, from_ideal(HomogeneousIdeal::parse(2, {"x2 x2"}), 6)));
}

TEST_CASE("maximal_from_fibers rejects inconsistent prescriptions") {
  CMatrix e1 = CMatrix::Zero(2, 1);
  e1(0, 0) = 1;
  CHECK_THROWS_AS(maximal_from_fibers(2, {kernel::orthonormalize(e1), Subspace::full(4)}, 3),
                  InputError);
}

TEST_CASE("maximal_from_fibers reproduces from_ideal for generators of degree <= k") {
  sampling::Rng rng(44);
  for (int t = 0; t < 8; ++t) {
    const HomogeneousIdeal j(2, {sampling::random_homogeneous(2, 2, 3, rng),
                                 sampling::random_homogeneous(2, 3, 2, rng)});
    const auto x = from_ideal(j, 5);
    const auto m = maximal_from_fibers(2, {x.fiber(1), x.fiber(2), x.fiber(3)}, 5);
    CHECK(same_fibers(x, m));
  }
}

TEST_CASE("from_forbidden_words examples") {
  CHECK(from_forbidden_words(2, words({"22"}), 5, true).dims() == as_dims({1, 2, 3, 5, 8, 13}));
  CHECK(from_forbidden_words(2, words({"22", "212", "2112", "21112"}), 5, false).dims() ==
        as_dims({1, 2, 3, 4, 5, 6}));
  CHECK(from_forbidden_words(2, words({"12", "21"}), 5, true).dims() ==
        as_dims({1, 2, 2, 2, 2, 2}));
  CHECK_THROWS_AS(from_forbidden_words(2, words({"11", "12", "21", "22"}), 3, true), InputError);
}

TEST_CASE("forbidden-word fibers are spanned by allowed basis words") {
  const auto x = from_forbidden_words(2, words({"22"}), 5, true);
  for (int n = 1; n <= 5; ++n) {
    const CMatrix p = x.fiber(n).projector();
    for (Index i = 0; i < p.rows(); ++i) {
      const auto w = Word::from_index(i, n, 2).str();
      const bool allowed = w.find("22") == std::string::npos;
      CHECK(std::abs(p(i, i) - Complex(allowed ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("q_commuting examples") {
  CMatrix ones = CMatrix::Ones(3, 3);
  ones.diagonal().setZero();
  CHECK(same_fibers(q_commuting(ones, 4), symmetric(3, 4)));
  CHECK(q_commuting(qmatrix(-1.0), 3).fiber(2).dim() == 3);
  CHECK(q_commuting(qmatrix(2.0), 5).dims() == q_commuting(qmatrix(0.5), 5).dims());
  CMatrix bad = qmatrix(2.0);
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(q_commuting(bad, 3), InputError);
}

TEST_CASE("from_matrix_A examples") {
  CHECK(same_fibers(from_matrix_A(mat2(0, 1, -1, 0), 5), symmetric(2, 5)));
  CHECK(same_fibers(from_matrix_A(mat2(1, 0, 0, 0), 5),
                    from_ideal(HomogeneousIdeal::parse(2, {"x1 x1"}), 5)));
  CHECK(from_matrix_A(mat2(1, 0.7, -0.7, 0), 4).fiber(2).dim() == 3);
  const auto zero = from_matrix_A(CMatrix::Zero(2, 2), 3);
  CHECK(zero.dims() == as_dims({1, 2, 4, 8}));
  CHECK_FALSE(zero.notes().empty());
}

TEST_CASE("validate_standard examples") {
  CHECK(validate_standard(from_ideal(HomogeneousIdeal::parse(2, {"x2 x1"}), 5)).pass);
  const auto f = validate_standard(full(2, 5));
  CHECK(f.pass);
  CHECK(f.max_residual == 0.0);
  CMatrix e1 = CMatrix::Zero(2, 1);
  e1(0, 0) = 1;
  CMatrix e22 = CMatrix::Zero(4, 1);
  e22(3, 0) = 1;
  const SubproductSystem bad(2, {Subspace::full(1), kernel::orthonormalize(e1),
                                 kernel::orthonormalize(e22)});
  const auto r = validate_standard(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_m == 1);
  CHECK(r.worst_n == 1);
  CHECK(r.max_residual == doctest::Approx(1.0));
}

TEST_CASE("ideal_of examples and round trip") {
  const auto comp = ideal_of(symmetric(2, 4));
  REQUIRE(comp[2].dim() == 1);
  CMatrix anti = CMatrix::Zero(4, 1);
  anti(1, 0) = 1;
  anti(2, 0) = -1;
  CHECK(kernel::same_subspace(comp[2], kernel::orthonormalize(anti)));
  for (const auto& c : ideal_of(full(2, 4))) CHECK(c.dim() == 0);

  sampling::Rng rng(91);
  for (int t = 0; t < 8; ++t) {
    const HomogeneousIdeal j(2, {sampling::random_homogeneous(2, 2, 3, rng)});
    const auto x = from_ideal(j, 5);
    const auto c = ideal_of(x);
    for (int n = 1; n <= 5; ++n) {
      CHECK(kernel::contains(c[static_cast<std::size_t>(n)], ncpoly::graded_component(j, n)));
      CHECK(c[static_cast<std::size_t>(n)].dim() == ncpoly::graded_component(j, n).dim());
    }
    CHECK(same_fibers(from_components(2, c), x));
  }
}

TEST_CASE("fiber dimensions are submultiplicative") {
  std::vector<SubproductSystem> systems{
      symmetric(2, 6), symmetric(3, 4), from_forbidden_words(2, words({"22"}), 6, true),
      q_commuting(qmatrix(Complex(0.3, 0.4)), 5), from_matrix_A(mat2(1, 2, 0, 1), 5)};
  for (const auto& x : systems) {
    for (int m = 1; m <= x.N(); ++m)
      for (int n = 1; m + n <= x.N(); ++n)
        CHECK(x.fiber(m + n).dim() <= x.fiber(m).dim() * x.fiber(n).dim());
  }
}

TEST_CASE("larger ideals give smaller fibers") {
  sampling::Rng rng(6);
  for (int t = 0; t < 8; ++t) {
    const auto g1 = sampling::random_homogeneous(2, 2, 2, rng);
    const auto g2 = sampling::random_homogeneous(2, 2, 2, rng);
    const auto small = from_ideal(HomogeneousIdeal(2, {g1}), 5);
    const auto big = from_ideal(HomogeneousIdeal(2, {g1, g2}), 5);
    for (int n = 0; n <= 5; ++n) CHECK(kernel::contains(small.fiber(n), big.fiber(n)));
  }
}

TEST_CASE("iso_q examples") {
  const auto swap = iso_q(qmatrix(2.0), qmatrix(0.5));
  REQUIRE(swap.has_value());
  CHECK(swap->sigma == std::vector<int>{1, 0});
  CHECK(swap->fiber_residual <= 1e-9);
  CHECK(swap->product_residual <= 1e-9);
  CHECK_FALSE(iso_q(qmatrix(2.0), qmatrix(3.0)).has_value());
  const auto same = iso_q(qmatrix(Complex(0, 2)), qmatrix(Complex(0, 2)));
  REQUIRE(same.has_value());
  CHECK(same->sigma == std::vector<int>{0, 1});
  CHECK_THROWS_AS(iso_q(qmatrix(1.0), qmatrix(2.0)), InputError);
}

TEST_CASE("change of variables verifier") {
  const CMatrix swap = permutation_unitary({1, 0});
  CHECK(verify_change_of_variables(q_commuting(qmatrix(2.0), 4), q_commuting(qmatrix(0.5), 4),
                                   swap) < 1e-10);
  CHECK(verify_change_of_variables(q_commuting(qmatrix(2.0), 4), q_commuting(qmatrix(3.0), 4),
                                   swap) > 0.1);
  // Any unitary preserves the symmetric system.
  sampling::Rng rng(12);
  CHECK(verify_change_of_variables(symmetric(2, 4), symmetric(2, 4),
                                   sampling::random_unitary(2, rng)) < 1e-10);
}

TEST_CASE("classify_A examples") {
  const auto r1 = classify_A(mat2(1, 2, 2, 4));
  const auto r2 = classify_A(mat2(Complex(0, 3), 0, 0, 0));
  CHECK(r1.rank_sym == 1);
  CHECK(same_invariants(r1, r2));
  const auto aq = classify_A(mat2(1, 0.5, -0.5, 0));
  const auto ar = classify_A(mat2(1, 0.8, -0.8, 0));
  CHECK_FALSE(same_invariants(aq, ar));
  const auto anti = classify_A(mat2(0, 1, -1, 0));
  CHECK(anti.rank_sym == 0);
  CHECK(anti.rank_antisym == 2);
}

TEST_CASE("classify_A invariants are constant on congruence orbits") {
  sampling::Rng rng(100);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  for (int t = 0; t < 100; ++t) {
    const CMatrix a = sampling::gaussian(2, 2, rng);
    const CMatrix u = sampling::random_unitary(2, rng);
    const Complex lambda = std::polar(1.0, phase(rng));
    const CMatrix b = lambda * u.transpose() * a * u;
    CHECK(same_invariants(classify_A(a), classify_A(b)));
  }
}

TEST_CASE("the ratio triple needs the cross ratio when both parts are nondegenerate") {
  const auto a = classify_A(mat2(2, 1, -1, 1));
  const auto b = classify_A(mat2(2, Complex(0, 1), Complex(0, -1), 1));
  CHECK(std::abs(a.ratio[0] - b.ratio[0]) < 1e-12);
  CHECK(std::abs(a.ratio[2] - b.ratio[2]) < 1e-12);
  REQUIRE(a.cross_ratio.has_value());
  CHECK_FALSE(same_invariants(a, b));
}

TEST_CASE("classify_A verdicts agree with a unitary search oracle") {
  sampling::Rng rng(7);
  std::mt19937_64 search(8);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::vector<CMatrix> samples{mat2(2, 1, -1, 1), mat2(2, Complex(0, 1), Complex(0, -1), 1),
                               mat2(1, 0.5, -0.5, 0), mat2(1, 0.8, -0.8, 0),
                               mat2(1, 2, 2, 4), mat2(1, 0, 0, 1), mat2(1, 1, -1, 1)};
  for (int t = 0; t < 3; ++t) samples.push_back(sampling::gaussian(2, 2, rng));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    // An equivalent copy must be found by the oracle too.
    const CMatrix u = sampling::random_unitary(2, rng);
    const CMatrix copy = std::polar(1.0, phase(rng)) * u.transpose() * samples[i] * u;
    CHECK(oracle::congruence_distance(samples[i], copy, search) < 1e-5);
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const bool same = same_invariants(classify_A(samples[i]), classify_A(samples[j]));
      const double dist = oracle::congruence_distance(samples[i], samples[j], search);
      CHECK_MESSAGE(same == (dist < 1e-5), "pair ", i, ", ", j, " distance ", dist);
    }
  }
}

TEST_CASE("n3 obstruction value") {
  const double v = n3_obstruction_check();
  CHECK(v > 0.0);
  CHECK(v <= 2.0);
  oracle::Mat flip = oracle::Mat::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) flip(b * 2 + a, a * 2 + b) = 1.0;
  const oracle::Mat id = oracle::Mat::Identity(2, 2);
  const double ref = oracle::norm2(oracle::kron(id, flip) - oracle::kron(flip, id));
  CHECK(std::abs(v - ref) < 1e-12);
  CHECK(std::abs(v - std::sqrt(3.0)) < 1e-12);
}
