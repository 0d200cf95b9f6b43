#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "subprod/fock.hpp"
#include "subprod/sampling.hpp"

using namespace subprod;
using namespace subprod::fock;
using ncpoly::HomogeneousIdeal;
using ncpoly::Word;
using sps::SubproductSystem;

namespace {

std::vector<Word> words(const std::vector<std::string>& w, int d = 2) {
  std::vector<Word> out;
  for (const auto& s : w) out.push_back(Word::parse(s, d));
  return out;
}

// Isometric embedding of F_X into the full Fock space.
CMatrix embedding(const SubproductSystem& x) {
  const FockOperators f(x);
  Index full = 0;
  for (int n = 0; n <= x.N(); ++n) full += ncpoly::word_count(x.d(), n);
  CMatrix v = CMatrix::Zero(full, f.total_dim());
  Index row = 0;
  for (int n = 0; n <= x.N(); ++n) {
    v.block(row, f.offset(n), x.fiber(n).ambient_dim(), x.fiber(n).dim()) = x.fiber(n).frame();
    row += x.fiber(n).ambient_dim();
  }
  return v;
}

std::vector<SubproductSystem> sample_systems() {
  return {sps::symmetric(2, 5), sps::full(2, 4), sps::symmetric(3, 3),
          sps::from_forbidden_words(2, words({"22"}), 6, true),
          sps::from_ideal(HomogeneousIdeal::parse(2, {"x1 x2", "x2 x2"}), 5),
          sps::from_matrix_A([] {
            CMatrix a(2, 2);
            a << 1, 0.5, -0.5, 0;
            return a;
          }(), 4)};
}

}  // namespace

TEST_CASE("shifts agree with dense projected creation operators") {
  for (const auto& x : sample_systems()) {
    const FockOperators f(x);
    std::vector<oracle::Mat> proj;
    for (int n = 0; n <= x.N(); ++n) proj.push_back(x.fiber(n).projector());
    const CMatrix v = embedding(x);
    for (int i = 1; i <= x.d(); ++i) {
      const oracle::Mat dense = oracle::dense_shift(x.d(), proj, i - 1);
      CHECK((v.adjoint() * dense * v - f.shift(i)).norm() < 1e-10);
      // The dense shift leaves the embedded Fock space invariant.
      CHECK((dense * v - v * f.shift(i)).norm() < 1e-10);
    }
  }
}

TEST_CASE("layout and vacuum") {
  const FockOperators f(sps::symmetric(2, 4));
  CHECK(f.total_dim() == 15);
  CHECK(f.offset(3) == 6);
  CHECK(f.vacuum_index() == 0);
  const auto p = ncpoly::parse_poly("x1 x2 + 2 x2 x2 - x1", 2);
  CVector omega = CVector::Zero(f.total_dim());
  omega(0) = 1;
  CHECK((f.apply_to_vacuum(p) - f.poly_operator(p) * omega).norm() < 1e-12);
  CHECK_THROWS_AS(f.shift(3), InputError);
}

TEST_CASE("shift tuples are row contractions") {
  for (const auto& x : sample_systems()) {
    CHECK(FockOperators(x).row_norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("Cuntz defect vanishes below the truncation") {
  for (const auto& x : {sps::symmetric(2, 8), sps::full(2, 6),
                        sps::from_forbidden_words(2, words({"22"}), 8, true)}) {
    const FockOperators f(x);
    for (int k = 1; k <= 3; ++k) {
      const auto r = check_cuntz_defect(f, k);
      CHECK(r.window_hi == x.N() - k);
      CHECK(r.residual <= 1e-7);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(check_cuntz_defect(FockOperators(sps::full(2, 2)), 3), InputError);
}

TEST_CASE("graded components match the Fourier average of the gauge action") {
  const FockOperators f(sps::symmetric(2, 4));
  sampling::Rng rng(3);
  const CMatrix t = sampling::gaussian(f.total_dim(), f.total_dim(), rng);
  const int m = 11;  // more sample points than distinct degrees differences
  for (int n = -4; n <= 4; ++n) {
    CMatrix avg = CMatrix::Zero(t.rows(), t.cols());
    for (int j = 0; j < m; ++j) {
      const double s = 2.0 * 3.141592653589793 * j / m;
      avg += std::polar(1.0, -n * s) * f.gauge_action(t, s);
    }
    avg /= static_cast<double>(m);
    CHECK((avg - graded_component_extract(f, t, n)).norm() < 1e-10);
  }
}

TEST_CASE("membership through the shift agrees with linear membership") {
  const auto j = HomogeneousIdeal::parse(2, {"x1 x2 - x2 x1"});
  const FockOperators f(sps::from_ideal(j, 4));
  const auto out = membership_via_shift(f, ncpoly::parse_poly("x1 x2", 2));
  CHECK_FALSE(out.member);
  CHECK(out.residual == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(membership_via_shift(f, ncpoly::parse_poly("x2 x1 x2 - x2 x2 x1", 2)).member);
  CHECK_THROWS_AS(membership_via_shift(f, ncpoly::parse_poly("x1 x1 x1 x1 x1", 2)), InputError);
  CHECK_THROWS_AS(membership_via_shift(f, ncpoly::parse_poly("x1 + x1 x2", 2)), InputError);

  sampling::Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const HomogeneousIdeal jr(2, {sampling::random_homogeneous(2, 2, 2, rng)});
    const FockOperators fr(sps::from_ideal(jr, 4));
    for (int deg = 1; deg <= 4; ++deg) {
      const auto p = sampling::random_homogeneous(2, deg, 3, rng);
      const auto a = membership_via_shift(fr, p);
      const auto b = ncpoly::membership(jr, p);
      CHECK(a.member == b.member);
      CHECK(std::abs(a.residual - b.residual) <= 1e-7);
    }
  }
}

TEST_CASE("subshift relations hold for pruned shifts") {
  struct Case {
    std::vector<std::string> w;
    int k;
  };
  for (const auto& c : {Case{{"22"}, 1}, Case{{"12", "21"}, 1}, Case{{"111", "22"}, 2},
                        Case{{"212"}, 2}}) {
    const auto forb = words(c.w);
    const FockOperators f(sps::from_forbidden_words(2, forb, 7, true));
    const auto reports = subshift_relations_check(f, forb, c.k);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].residual <= 1e-12);
    for (const auto& r : reports) CHECK_MESSAGE(r.pass, r.check, " ", r.residual);
  }
}

TEST_CASE("subshift relations refuse a step that is too small") {
  const auto forb = words({"111"});
  const FockOperators f(sps::from_forbidden_words(2, forb, 4, true));
  CHECK_THROWS_AS(subshift_relations_check(f, forb, 1), InputError);
}

TEST_CASE("distinct shifts have orthogonal ranges only for word systems") {
  const FockOperators gm(sps::from_forbidden_words(2, words({"22"}), 5, true));
  CHECK(kernel::op_norm(gm.shift(1).adjoint() * gm.shift(2)) <= 1e-12);
  const FockOperators sym(sps::symmetric(2, 3));
  CHECK(kernel::op_norm(sym.shift(1).adjoint() * sym.shift(2)) > 0.1);
}

TEST_CASE("window bounds") {
  const FockOperators f(sps::full(2, 3));
  const CMatrix id = CMatrix::Identity(f.total_dim(), f.total_dim());
  CHECK(f.window(id, 1, 2).rows() == 6);
  CHECK(f.window(id, 3, 1).rows() == 0);
  CHECK_THROWS_AS(f.window(CMatrix::Identity(2, 2), 0, 1), InputError);
}

TEST_CASE("block-wise shift application matches the dense operators") {
  const fock::FockOperators f(sps::from_forbidden_words(2, {ncpoly::Word::parse("22", 2)}, 6, true));
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  CMatrix m(f.total_dim(), 3);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  for (int i = 1; i <= 2; ++i) {
    CHECK((f.apply_shift(i, m) - f.shift(i) * m).norm() < 1e-12);
    CHECK((f.apply_shift_adjoint(i, m) - f.shift(i).adjoint() * m).norm() < 1e-12);
  }
  CHECK_THROWS_AS(f.apply_shift(1, CMatrix::Zero(2, 1)), InputError);
}
