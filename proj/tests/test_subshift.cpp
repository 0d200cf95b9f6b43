#include "doctest.h"
#include "oracles.hpp"
#include "subprod/subshift.hpp"

using namespace subprod;
using subprod::ncpoly::Word;
using subprod::subshift::Language;

namespace {

std::vector<std::vector<int>> zero_based(const std::vector<std::string>& words) {
  std::vector<std::vector<int>> out;
  for (const auto& w : words) {
    std::vector<int> v;
    for (char c : w) v.push_back(c - '1');
    out.push_back(v);
  }
  return out;
}

std::vector<Word> parse_all(const std::vector<std::string>& words, int d) {
  std::vector<Word> out;
  for (const auto& w : words) out.push_back(Word::parse(w, d));
  return out;
}

std::vector<std::vector<int>> to_digits(const std::vector<Word>& words) {
  std::vector<std::vector<int>> out;
  for (const auto& w : words) {
    std::vector<int> v;
    for (int l : w.letters()) v.push_back(l - 1);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("unpruned languages are exactly the avoiding words") {
  const std::vector<std::vector<std::string>> cases{
      {"22"}, {"22", "212", "2112", "21112"}, {"12", "21"}, {"111", "22"}, {"13", "31", "22"}};
  for (const auto& w : cases) {
    const int d = w.size() == 3 && w[0] == "13" ? 3 : 2;
    Language lang(d, parse_all(w, d), false);
    for (int n = 0; n <= 6; ++n) {
      CHECK(to_digits(lang.words(n)) == oracle::avoiding_words(d, n, zero_based(w)));
    }
  }
}

TEST_CASE("pruned languages keep only bi-extendable words") {
  const std::vector<std::vector<std::string>> cases{
      {"22"}, {"12", "21"}, {"11", "122"}, {"212", "22"}, {"112", "211"}};
  for (const auto& w : cases) {
    const auto bad = zero_based(w);
    Language lang(2, parse_all(w, 2), true);
    for (int n = 1; n <= 5; ++n) {
      std::vector<std::vector<int>> expect;
      for (const auto& v : oracle::avoiding_words(2, n, bad)) {
        if (oracle::extends_both_ways(v, 2, bad, 10)) expect.push_back(v);
      }
      CHECK(to_digits(lang.words(n)) == expect);
    }
  }
}

TEST_CASE("golden mean counts are Fibonacci") {
  Language lang(2, parse_all({"22"}, 2), true);
  std::vector<std::size_t> expect{1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (int n = 0; n < 9; ++n) CHECK(lang.words(n).size() == expect[static_cast<std::size_t>(n)]);
  CHECK(lang.step() == 1);
}

TEST_CASE("constant sequences only") {
  Language lang(2, parse_all({"12", "21"}, 2), true);
  for (int n = 1; n <= 6; ++n) CHECK(lang.words(n).size() == 2);
}

TEST_CASE("pruning removes words that cannot extend to the left") {
  // With 12 and 22 forbidden a 2 can only start a sequence.
  Language pruned(2, parse_all({"12", "22"}, 2), true);
  Language raw(2, parse_all({"12", "22"}, 2), false);
  for (int n = 1; n <= 5; ++n) CHECK(pruned.words(n).size() == 1);
  CHECK(raw.allowed(Word::parse("211", 2)));
  CHECK_FALSE(pruned.allowed(Word::parse("211", 2)));
  CHECK(pruned.allowed(Word::parse("111", 2)));
}

TEST_CASE("follower sets") {
  Language lang(2, parse_all({"22"}, 2), true);
  const auto f1 = lang.follower_set(1, 1);
  const auto f2 = lang.follower_set(2, 1);
  REQUIRE(f1.size() == 2);
  REQUIRE(f2.size() == 1);
  CHECK(f2[0].str() == "1");
  CHECK(lang.follower_set(2, 2).size() == 2);  // 11, 12
}

TEST_CASE("bad forbidden words are rejected") {
  CHECK_THROWS_AS(Language(2, parse_all({"2"}, 2), false), InputError);
}

TEST_CASE("an empty pruned language is reported as empty") {
  Language lang(2, parse_all({"11", "12", "21", "22"}, 2), true);
  CHECK(lang.words(1).empty());
}
