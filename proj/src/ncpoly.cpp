#include "subprod/ncpoly.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <utility>

namespace subprod::ncpoly {

namespace {

void check_d(int d) {
  if (d < 1) throw InputError("alphabet size must be at least 1");
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class PolyParser {
 public:
  PolyParser(std::string_view text, int d) : text_(text), d_(d) {}

  NCPolynomial parse() {
    NCPolynomial p(d_);
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = take() == '-';
    }
    parse_term(p, negative);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
      take();
      parse_term(p, c == '-');
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_number() const {
    return !at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.');
  }

  double parse_number() {
    const std::size_t start = pos_;
    while (!at_end() &&
           (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      ++pos_;
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ParseError("malformed number", start);
    }
    return value;
  }

  // Inside "( ... )": one or two signed parts, each real or imaginary.
  Complex parse_complex() {
    const std::size_t open = pos_;
    take();  // '('
    Complex value = 0.0;
    bool any = false;
    bool seen_real = false;
    bool seen_imag = false;
    for (;;) {
      skip_ws();
      if (at_end()) throw ParseError("unterminated complex coefficient", open);
      if (peek() == ')') {
        take();
        break;
      }
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = take() == '-' ? -1.0 : 1.0;
        skip_ws();
      } else if (any) {
        throw ParseError("expected '+' or '-' inside coefficient", pos_);
      }
      double magnitude = 1.0;
      bool has_number = false;
      if (at_number()) {
        magnitude = parse_number();
        has_number = true;
      }
      if (!at_end() && peek() == 'i') {
        take();
        if (seen_imag) throw ParseError("duplicate imaginary part", pos_);
        seen_imag = true;
        value += Complex(0.0, sign * magnitude);
      } else {
        if (!has_number) throw ParseError("expected number", pos_);
        if (seen_real) throw ParseError("duplicate real part", pos_);
        seen_real = true;
        value += Complex(sign * magnitude, 0.0);
      }
      any = true;
    }
    if (!any) throw ParseError("empty complex coefficient", open);
    return value;
  }

  std::optional<int> try_variable() {
    skip_ws();
    if (at_end() || peek() != 'x') return std::nullopt;
    const std::size_t start = pos_;
    take();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw ParseError("expected variable index after 'x'", pos_);
    }
    int index = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      index = index * 10 + (take() - '0');
      if (index > 1'000'000) throw ParseError("variable index too large", start);
    }
    if (index < 1 || index > d_) {
      throw ParseError("variable x" + std::to_string(index) + " outside x1..x" +
                           std::to_string(d_),
                       start);
    }
    return index;
  }

  void parse_term(NCPolynomial& p, bool negative) {
    skip_ws();
    if (at_end()) throw ParseError("expected term", pos_);
    Complex coeff = 1.0;
    bool has_coeff = false;
    if (peek() == '(') {
      coeff = parse_complex();
      has_coeff = true;
    } else if (at_number()) {
      coeff = parse_number();
      has_coeff = true;
    }
    skip_ws();
    if (has_coeff && !at_end() && peek() == '*') {
      take();
      skip_ws();
      if (at_end() || peek() != 'x') throw ParseError("expected monomial after '*'", pos_);
    }
    Letters word;
    while (auto v = try_variable()) word.push_back(*v);
    if (!has_coeff && word.empty()) throw ParseError("expected term", pos_);
    if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag())) {
      throw ParseError("non-finite coefficient", pos_);
    }
    p.add_term(word, negative ? -coeff : coeff);
  }

  std::string_view text_;
  int d_;
  std::size_t pos_ = 0;
};

}  // namespace

Word::Word(Letters letters, int d) : letters_(std::move(letters)), d_(d) {
  check_d(d);
  for (int c : letters_) {
    if (c < 1 || c > d) {
      throw InputError("letter " + std::to_string(c) + " outside 1.." + std::to_string(d));
    }
  }
}

Word Word::from_index(Index index, int length, int d) {
  check_d(d);
  Letters letters(static_cast<std::size_t>(length));
  for (int j = length - 1; j >= 0; --j) {
    letters[static_cast<std::size_t>(j)] = static_cast<int>(index % d) + 1;
    index /= d;
  }
  if (index != 0) throw InputError("Word::from_index: index out of range");
  return Word(std::move(letters), d);
}

Word Word::parse(std::string_view text, int d) {
  check_d(d);
  const bool digits_only =
      !text.empty() && text.find_first_not_of("0123456789") == std::string_view::npos;
  if (digits_only) {
    if (d > 9) throw InputError("digit-string words need d <= 9; use \"x10 x2\" form");
    Letters letters;
    for (char c : text) letters.push_back(c - '0');
    return Word(std::move(letters), d);
  }
  const NCPolynomial p = parse_poly(text, d);
  if (p.terms().size() != 1 || p.terms().begin()->second != Complex(1.0)) {
    throw InputError("not a word: " + std::string(text));
  }
  return Word(p.terms().begin()->first, d);
}

Index Word::index() const {
  Index idx = 0;
  for (int c : letters_) idx = idx * d_ + (c - 1);
  return idx;
}

std::string Word::str() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (d_ <= 9) {
      s += static_cast<char>('0' + letters_[i]);
    } else {
      if (i) s += ' ';
      s += 'x' + std::to_string(letters_[i]);
    }
  }
  return s;
}

Word Word::operator+(const Word& rhs) const {
  if (rhs.d_ != d_) throw InputError("word concatenation across alphabets");
  Letters l = letters_;
  l.insert(l.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(l), d_);
}

Index word_count(int d, int n) {
  Index c = 1;
  for (int i = 0; i < n; ++i) c *= d;
  return c;
}

std::vector<Word> all_words(int d, int n) {
  std::vector<Word> out;
  const Index count = word_count(d, n);
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) out.push_back(Word::from_index(i, n, d));
  return out;
}

NCPolynomial::NCPolynomial(int d) : d_(d) { check_d(d); }

NCPolynomial NCPolynomial::monomial(const Word& w, Complex coeff) {
  NCPolynomial p(w.d());
  p.add_term(w.letters(), coeff);
  return p;
}

int NCPolynomial::degree() const {
  int deg = -1;
  for (const auto& [w, c] : terms_) deg = std::max(deg, static_cast<int>(w.size()));
  return deg;
}

bool NCPolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const auto len = terms_.begin()->first.size();
  for (const auto& [w, c] : terms_) {
    if (w.size() != len) return false;
  }
  return true;
}

void NCPolynomial::add_term(const Letters& w, Complex c) {
  for (int letter : w) {
    if (letter < 1 || letter > d_) throw InputError("letter outside alphabet");
  }
  if (c == Complex(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& rhs) const {
  if (rhs.d_ != d_) throw InputError("polynomials over different alphabets");
  NCPolynomial out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add_term(w, c);
  return out;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial& rhs) const {
  return *this + rhs * Complex(-1.0);
}

NCPolynomial NCPolynomial::operator*(const NCPolynomial& rhs) const {
  if (rhs.d_ != d_) throw InputError("polynomials over different alphabets");
  NCPolynomial out(d_);
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : rhs.terms_) {
      Letters w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add_term(w, c1 * c2);
    }
  }
  return out;
}

NCPolynomial NCPolynomial::operator*(Complex c) const {
  NCPolynomial out(d_);
  for (const auto& [w, coeff] : terms_) out.add_term(w, coeff * c);
  return out;
}

NCPolynomial NCPolynomial::sandwich(const Word& left, const Word& right) const {
  return monomial(left) * *this * monomial(right);
}

std::string NCPolynomial::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    const bool real = c.imag() == 0.0;
    bool negative = real && std::signbit(c.real());
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string coeff;
    if (real) {
      const double mag = std::abs(c.real());
      if (mag != 1.0 || w.empty()) coeff = format_double(mag);
    } else {
      coeff = "(" + format_double(c.real()) + (std::signbit(c.imag()) ? "-" : "+") +
              format_double(std::abs(c.imag())) + "i)";
    }
    out += coeff;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!coeff.empty() || i > 0) out += ' ';
      out += 'x' + std::to_string(w[i]);
    }
  }
  return out;
}

NCPolynomial parse_poly(std::string_view text, int d) {
  check_d(d);
  return PolyParser(text, d).parse();
}

CVector embed_coeff(const NCPolynomial& p, int n) {
  if (n < 0) throw InputError("embed_coeff: negative degree");
  if (!p.is_homogeneous()) throw InputError("embed_coeff: polynomial is not homogeneous");
  if (!p.is_zero() && p.degree() != n) {
    throw InputError("embed_coeff: polynomial has degree " + std::to_string(p.degree()) +
                     ", expected " + std::to_string(n));
  }
  CVector v = CVector::Zero(word_count(p.d(), n));
  for (const auto& [w, c] : p.terms()) v(Word(w, p.d()).index()) = c;
  return v;
}

HomogeneousIdeal::HomogeneousIdeal(int d, std::vector<NCPolynomial> generators)
    : d_(d), generators_(std::move(generators)) {
  check_d(d);
  for (const auto& g : generators_) {
    if (g.d() != d) throw InputError("generator over a different alphabet");
    if (g.is_zero()) throw InputError("zero generator");
    if (!g.is_homogeneous()) throw InputError("generator is not homogeneous: " + g.render());
    if (g.degree() < 1) throw InputError("degree-0 generator would make the ideal improper");
  }
}

HomogeneousIdeal HomogeneousIdeal::parse(int d, const std::vector<std::string>& generators) {
  std::vector<NCPolynomial> gens;
  gens.reserve(generators.size());
  for (const auto& text : generators) gens.push_back(parse_poly(text, d));
  return HomogeneousIdeal(d, std::move(gens));
}

int HomogeneousIdeal::max_generator_degree() const {
  int m = 0;
  for (const auto& g : generators_) m = std::max(m, g.degree());
  return m;
}

kernel::Subspace graded_component(const HomogeneousIdeal& ideal, int n, double tol) {
  if (n < 0) throw InputError("graded_component: negative degree");
  const int d = ideal.d();
  const Index ambient = word_count(d, n);
  Index columns = 0;
  for (const auto& g : ideal.generators()) {
    const int free = n - g.degree();
    if (free >= 0) columns += (free + 1) * word_count(d, free);
  }
  CMatrix vectors = CMatrix::Zero(ambient, columns);
  Index col = 0;
  for (const auto& g : ideal.generators()) {
    const int deg = g.degree();
    const int free = n - deg;
    if (free < 0) continue;
    const CVector ge = embed_coeff(g, deg);
    for (int left = 0; left <= free; ++left) {
      const int right = free - left;
      const Index right_count = word_count(d, right);
      const Index stride = word_count(d, deg) * right_count;
      for (Index a = 0; a < word_count(d, left); ++a) {
        for (Index b = 0; b < right_count; ++b) {
          for (Index gi = 0; gi < ge.size(); ++gi) {
            if (ge(gi) != Complex(0.0)) {
              vectors(a * stride + gi * right_count + b, col) = ge(gi);
            }
          }
          ++col;
        }
      }
    }
  }
  return kernel::orthonormalize(vectors, tol);
}

Membership membership(const HomogeneousIdeal& ideal, const NCPolynomial& p, double tol) {
  if (p.d() != ideal.d()) throw InputError("membership: alphabet mismatch");
  if (!p.is_homogeneous()) {
    throw InputError("membership: polynomial is not homogeneous; split it into homogeneous parts");
  }
  if (p.is_zero()) return {true, 0.0};
  const int n = p.degree();
  const CVector v = embed_coeff(p, n);
  const kernel::Subspace component = graded_component(ideal, n);
  const double residual = component.reject(v).norm();
  return {residual <= tol * v.norm(), residual};
}

bool contains(const HomogeneousIdeal& ideal, const NCPolynomial& p, double tol) {
  return membership(ideal, p, tol).member;
}

}  // namespace subprod::ncpoly
