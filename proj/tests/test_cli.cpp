#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "subprod/cli.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "subprod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = subprod::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "subprod_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("dims examples") {
  const auto sym = write("sym.json", R"({"kind":"symmetric","d":2,"N":5})");
  CHECK(run({"dims", "--spec", sym}).report()["dims"] == json::array({1, 2, 3, 4, 5, 6}));
  const auto gm = write("gm.json", R"({"kind":"forbidden","d":2,"words":["22"],"prune":true,"N":5})");
  CHECK(run({"dims", "--spec", gm}).report()["dims"] == json::array({1, 2, 3, 5, 8, 13}));
  const auto id = write("id.json", R"({"kind":"ideal","d":2,"generators":["x1 x2","x2 x2"],"N":5})");
  CHECK(run({"dims", "--spec", id}).report()["dims"] == json::array({1, 2, 2, 2, 2, 2}));
  // --N overrides the spec.
  CHECK(run({"dims", "--spec", sym, "--N", "2"}).report()["dims"] == json::array({1, 2, 3}));
  const auto framed = run({"dims", "--spec", sym, "--frames"}).report();
  CHECK(framed["frames"].size() == 6);
  CHECK(framed["frames"][2]["rows"] == 4);
}

TEST_CASE("check examples") {
  const auto id = write("comm.json", R"({"kind":"ideal","d":2,"generators":["x1 x2 - x2 x1"],"N":5})");
  auto r = run({"check", "--spec", id, "--check", "standard"});
  CHECK(r.code == 0);
  CHECK(r.report()["pass"] == true);
  const auto sym = write("sym.json", R"({"kind":"symmetric","d":2,"N":6})");
  r = run({"check", "--spec", sym, "--check", "cuntz", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.report()["residual"].get<double>() <= 1e-7);
  const auto gm = write("gm.json", R"({"kind":"forbidden","d":2,"words":["22"],"N":6})");
  r = run({"check", "--spec", gm, "--check", "subshift", "--k", "1"});
  CHECK(r.code == 0);
  REQUIRE(r.report()["reports"].size() == 3);
  const json rep = r.report();
  for (const auto& line : rep["reports"]) CHECK(line["pass"] == true);
}

TEST_CASE("membership examples") {
  const auto id = write("comm.json", R"({"kind":"ideal","d":2,"generators":["x1 x2 - x2 x1"],"N":5})");
  auto r = run({"membership", "--spec", id, "--poly", "x1 x2 - x2 x1"});
  CHECK(r.code == 0);
  CHECK(r.report()["via_shift"] == true);
  CHECK(r.report()["via_linear"] == true);
  r = run({"membership", "--spec", id, "--poly", "x1 x2"});
  CHECK(r.report()["in_ideal"] == false);
  CHECK(r.report()["residuals"]["shift"].get<double>() == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.report()["residuals"]["linear"].get<double>() == doctest::Approx(std::sqrt(0.5)));
  r = run({"membership", "--spec", id, "--poly", "x1 x1 x2 - x1 x2 x1"});
  CHECK(r.report()["in_ideal"] == true);
  CHECK(run({"membership", "--spec", id, "--poly", "x1 x2 +"}).code == 2);
  CHECK(run({"membership", "--spec", id, "--poly", "x1 + x1 x2"}).code == 2);
}

TEST_CASE("input errors exit with 2") {
  const auto sym = write("sym.json", R"({"kind":"symmetric","d":2,"N":4})");
  auto r = run({"check", "--spec", sym, "--check", "nonsense"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err).contains("error"));
  CHECK(run({"dims", "--spec", write("bad.json", R"({"kind":"cubic","N":3})")}).code == 2);
  CHECK(run({"dims", "--spec", write("bad2.json", R"({"kind":"symmetric","d":2})")}).code == 2);
  CHECK(run({"dims", "--spec", write("bad3.json", "{not json")}).code == 2);
  CHECK(run({"dims", "--spec", "/nonexistent/spec.json"}).code == 2);
  CHECK(run({"dims"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto q = write("badq.json",
                       R"({"kind":"q","q":{"rows":2,"cols":2,"data":[0,2,2,0]},"N":3})");
  CHECK(run({"dims", "--spec", q}).code == 2);
}

TEST_CASE("overflowing literals are input errors, overflowing arithmetic is numerical") {
  const auto a = write("inf.json",
                       R"({"kind":"matrixA","A":{"rows":2,"cols":2,"data":[1e999,0,0,1]},"N":3})");
  CHECK(run({"dims", "--spec", a}).code == 2);
  const auto b = write("big.json",
                       R"({"kind":"matrixA","A":{"rows":2,"cols":2,"data":[1e200,0,0,1]},"N":3})");
  CHECK(run({"dims", "--spec", b}).report()["dims"] == json::array({1, 2, 3, 5}));
  // Ranks are relative: diag(1e200, 1) is numerically rank one.
  CHECK(run({"classify-a", "--spec", b}).report()["rank_sym"] == 1);
  const auto c = write("big2.json",
                       R"({"kind":"matrixA","A":{"rows":2,"cols":2,"data":[1e200,0,0,3e199]},"N":3})");
  const auto r = run({"classify-a", "--spec", c});
  CHECK(r.code == 0);
  CHECK(r.report()["rank_sym"] == 2);
  const auto sym = write("sym4.json", R"({"kind":"symmetric","d":2,"N":4})");
  const auto rep = write("huge.json", R"({"d":2,"k":2,"matrices":[
      {"rows":2,"cols":2,"data":[1e200,0,0,1]},{"rows":2,"cols":2,"data":[0,0,1,0]}]})");
  const auto bad = run({"check", "--spec", sym, "--check", "rep", "--rep", rep});
  CHECK(bad.code == 3);
  CHECK(json::parse(bad.err).contains("error"));
}

TEST_CASE("failed checks exit with 1") {
  const auto sym = write("sym3.json", R"({"kind":"symmetric","d":2,"N":4})");
  const auto rep = write("free.json", R"({"d":2,"k":2,"matrices":[
      {"rows":2,"cols":2,"data":[0,0.5,0,0]},{"rows":2,"cols":2,"data":[0,0,0.5,0]}]})");
  const auto r = run({"check", "--spec", sym, "--check", "rep", "--rep", rep});
  CHECK(r.code == 1);
  CHECK(r.report()["residuals"][1].get<double>() == doctest::Approx(0.25 / std::sqrt(2.0)));
}

TEST_CASE("representation, vn and piece commands") {
  const auto sym = write("sym8.json", R"({"kind":"symmetric","d":2,"N":8})");
  const auto full = write("full8.json", R"({"kind":"ideal","d":2,"generators":[],"N":8})");
  const auto rep = write("diag.json", R"({"d":2,"k":2,"matrices":[
      {"rows":2,"cols":2,"data":[0.5,0,0,0.1]},{"rows":2,"cols":2,"data":[0.2,0,0,[0,0.6]]}]})");
  CHECK(run({"check", "--spec", sym, "--check", "rep", "--rep", rep}).code == 0);
  auto r = run({"check", "--spec", sym, "--check", "vn", "--rep", rep, "--p", "x1 x2", "--q", "x1"});
  CHECK(r.code == 0);
  CHECK(r.report()["trials"].size() == 1);
  r = run({"check", "--spec", sym, "--check", "vn", "--rep", rep, "--seed", "3", "--trials", "5"});
  CHECK(r.code == 0);
  CHECK(r.report()["trials"].size() == 5);
  r = run({"piece", "--spec", sym, "--other", full, "--rep", rep});
  CHECK(r.code == 0);
  CHECK(r.report()["dim"] == 2);
  r = run({"check", "--spec", sym, "--check", "piece", "--other", full, "--rep", rep});
  CHECK(r.report()["dim"] == 2);
}

TEST_CASE("iso-q, classify-a, cp and shift commands") {
  const auto q = write("q2.json", R"({"kind":"q","q":{"rows":2,"cols":2,"data":[0,2,0.5,0]},"N":4})");
  const auto r = write("qh.json", R"({"kind":"q","q":{"rows":2,"cols":2,"data":[0,0.5,2,0]},"N":4})");
  const auto s = write("q3.json", R"({"kind":"q","q":{"rows":2,"cols":2,"data":[0,3,[0.3333333333333333,0],0]},"N":4})");
  auto out = run({"iso-q", "--spec", q, "--other", r});
  CHECK(out.report()["isomorphic"] == true);
  CHECK(out.report()["sigma"] == json::array({1, 0}));
  CHECK(run({"iso-q", "--spec", q, "--other", s}).report()["isomorphic"] == false);

  const auto a = write("a1.json", R"({"kind":"matrixA","A":{"rows":2,"cols":2,"data":[1,2,2,4]},"N":3})");
  const auto b = write("a2.json", R"({"kind":"matrixA","A":{"rows":2,"cols":2,"data":[0,0,0,3]},"N":3})");
  out = run({"classify-a", "--spec", a, "--other", b});
  CHECK(out.report()["rank_sym"] == 1);
  CHECK(out.report()["equivalent"] == true);

  const auto cp = write("cp.json", R"({"k":2,"kraus":[
      {"rows":2,"cols":2,"data":[0.6,0,0,0.6]},{"rows":2,"cols":2,"data":[0,0.8,0.8,0]}]})");
  out = run({"cp", "--cp", cp, "--N", "3"});
  CHECK(out.code == 0);
  CHECK(out.report()["unital"] == true);
  CHECK(out.report()["dims"] == json::array({2, 2, 2}));

  const auto sym = write("sym2.json", R"({"kind":"symmetric","d":2,"N":2})");
  out = run({"shift", "--spec", sym});
  CHECK(out.report()["total_dim"] == 6);
  CHECK(out.report()["shifts"].size() == 2);
}

TEST_CASE("identical invocations give identical bytes") {
  const auto gm = write("gm7.json", R"({"kind":"forbidden","d":2,"words":["22"],"N":7})");
  const auto a = run({"shift", "--spec", gm, "--frames"});
  const auto b = run({"shift", "--spec", gm, "--frames"});
  CHECK(a.out == b.out);
  const auto sym = write("sym8.json", R"({"kind":"symmetric","d":2,"N":8})");
  const auto rep = write("diag.json", R"({"d":2,"k":2,"matrices":[
      {"rows":2,"cols":2,"data":[0.5,0,0,0.1]},{"rows":2,"cols":2,"data":[0.2,0,0,[0,0.6]]}]})");
  const auto c = run({"check", "--spec", sym, "--check", "vn", "--rep", rep});
  const auto d = run({"check", "--spec", sym, "--check", "vn", "--rep", rep});
  CHECK(c.out == d.out);
}
