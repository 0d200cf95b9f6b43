#pragma once

// Words and homogeneous polynomials in noncommuting variables x1..xd.
//
// Word order is lexicographic with letter 1 smallest, so a word alpha of
// length n sits at index sum_j (alpha_j - 1) d^(n-j) of C^(d^n). This is the
// same ordering kernel::kron produces for tensor products.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "subprod/kernel.hpp"

namespace subprod::ncpoly {

using Letters = std::vector<int>;

class Word {
 public:
  Word(Letters letters, int d);

  static Word from_index(Index index, int length, int d);
  // "x1 x2" style or a bare digit string such as "212" (only when d <= 9).
  static Word parse(std::string_view text, int d);

  const Letters& letters() const { return letters_; }
  int d() const { return d_; }
  int length() const { return static_cast<int>(letters_.size()); }
  Index index() const;
  std::string str() const;  // digit string; "" for the empty word

  Word operator+(const Word& rhs) const;  // concatenation

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Letters letters_;
  int d_;
};

// Number of words of length n over d letters.
Index word_count(int d, int n);
// All words of length n in lexicographic order.
std::vector<Word> all_words(int d, int n);

class NCPolynomial {
 public:
  explicit NCPolynomial(int d);
  static NCPolynomial monomial(const Word& w, Complex coeff = 1.0);

  int d() const { return d_; }
  const std::map<Letters, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Length of the longest stored word; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  void add_term(const Letters& w, Complex c);

  NCPolynomial operator+(const NCPolynomial& rhs) const;
  NCPolynomial operator-(const NCPolynomial& rhs) const;
  NCPolynomial operator*(const NCPolynomial& rhs) const;
  NCPolynomial operator*(Complex c) const;
  // x^left * p * x^right
  NCPolynomial sandwich(const Word& left, const Word& right) const;

  std::string render() const;

  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;

 private:
  int d_;
  std::map<Letters, Complex> terms_;
};

// Grammar: terms joined by + or -. A term is an optional coefficient (a
// real literal or a parenthesised complex "(a+bi)"), optionally followed by
// '*', then a monomial "x3 x1". "1" on its own is the empty monomial.
NCPolynomial parse_poly(std::string_view text, int d);

// Coefficient vector p(e) in C^(d^n). p must be homogeneous of degree n
// (the zero polynomial is accepted for every n).
CVector embed_coeff(const NCPolynomial& p, int n);

class HomogeneousIdeal {
 public:
  HomogeneousIdeal(int d, std::vector<NCPolynomial> generators);
  static HomogeneousIdeal parse(int d, const std::vector<std::string>& generators);

  int d() const { return d_; }
  const std::vector<NCPolynomial>& generators() const { return generators_; }
  int max_generator_degree() const;

 private:
  int d_;
  std::vector<NCPolynomial> generators_;
};

// I^(n): span of x^a g x^b over generators g and words with |a|+|b| = n - deg g.
kernel::Subspace graded_component(const HomogeneousIdeal& ideal, int n,
                                  double tol = kRankTol);

struct Membership {
  bool member = false;
  // Distance from p(e) to I^(deg p).
  double residual = 0.0;
};

Membership membership(const HomogeneousIdeal& ideal, const NCPolynomial& p,
                      double tol = kCheckTol);
bool contains(const HomogeneousIdeal& ideal, const NCPolynomial& p,
              double tol = kCheckTol);

}  // namespace subprod::ncpoly
