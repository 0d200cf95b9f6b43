#include "subprod/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subprod/cpsg.hpp"
#include "subprod/fock.hpp"
#include "subprod/io.hpp"
#include "subprod/reps.hpp"
#include "subprod/sampling.hpp"
#include "subprod/sps.hpp"

namespace subprod::cli {

namespace {

using io::json;

struct Options {
  std::string spec_path;
  std::string other_path;
  std::string rep_path;
  std::string cp_path;
  std::optional<int> N;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool frames = false;
  std::string check;
  int k = -1;
  std::string p;
  std::string q;
  std::string poly;
  int trials = 20;
};

struct Outcome {
  json report;
  int code = kPass;
};

io::SystemSpec load_spec(const std::string& path, const Options& o) {
  if (path.empty()) throw InputError("--spec is required");
  io::SystemSpec s = io::spec_from_json(io::read_json_file(path));
  if (o.N) {
    if (*o.N < 0) throw InputError("--N must be non-negative");
    s.N = *o.N;
  }
  if (o.tol) {
    if (*o.tol <= 0.0) throw InputError("--tol must be positive");
    s.tol = *o.tol;
  }
  return s;
}

reps::RepTuple load_rep(const Options& o) {
  if (o.rep_path.empty()) throw InputError("--rep is required for this command");
  return io::rep_from_json(io::read_json_file(o.rep_path));
}

json frames_json(const sps::SubproductSystem& x) {
  json out = json::array();
  for (const auto& f : x.fibers()) out.push_back(io::matrix_to_json(f.frame()));
  return out;
}

json window(int lo, int hi) { return json::array({lo, hi}); }

json relation_json(const fock::RelationReport& r) {
  return {{"check", r.check}, {"window", window(r.window_lo, r.window_hi)},
          {"residual", r.residual}, {"pass", r.pass}};
}

Outcome cmd_dims(const Options& o) {
  const auto spec = load_spec(o.spec_path, o);
  const auto x = io::build_system(spec);
  json r{{"kind", spec.kind}, {"d", x.d()}, {"N", x.N()}, {"dims", x.dims()}};
  if (!x.notes().empty()) r["notes"] = x.notes();
  if (o.frames) r["frames"] = frames_json(x);
  return {r, kPass};
}

Outcome check_vn(const Options& o, const sps::SubproductSystem& x) {
  const auto t = load_rep(o);
  const fock::FockOperators f(x);
  json trials = json::array();
  bool pass = true;
  auto run_one = [&](const ncpoly::NCPolynomial& p, const ncpoly::NCPolynomial& q) {
    const auto v = reps::vn_inequality_check(f, t, p, q);
    pass = pass && v.pass;
    trials.push_back(
        {{"p", p.render()}, {"q", q.render()}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"pass", v.pass}});
  };
  if (!o.p.empty() || !o.q.empty()) {
    if (o.p.empty() || o.q.empty()) throw InputError("check vn: give both --p and --q");
    run_one(ncpoly::parse_poly(o.p, x.d()), ncpoly::parse_poly(o.q, x.d()));
  } else {
    // Random p, q of degree <= 2 drawn from --seed.
    if (o.trials < 1) throw InputError("--trials must be positive");
    sampling::Rng rng(o.seed);
    for (int i = 0; i < o.trials; ++i) {
      const auto p = sampling::random_poly(x.d(), 2, rng);
      run_one(p, sampling::random_poly(x.d(), 2, rng));
    }
  }
  json r{{"check", "vn"}, {"window", window(0, x.N())}, {"trials", trials}, {"pass", pass}};
  return {r, pass ? kPass : kCheckFailed};
}

Outcome piece_report(const Options& o, const io::SystemSpec& spec, const char* name) {
  if (o.other_path.empty()) throw InputError("--other (the ambient system Y) is required");
  const auto x = io::build_system(spec);
  io::SystemSpec yspec = load_spec(o.other_path, o);
  yspec.N = spec.N;
  const auto y = io::build_system(yspec);
  const auto t = load_rep(o);
  const auto piece = reps::maximal_piece(x, y, t, spec.tol);
  const double residual = reps::piece_residual(x, t, piece.piece);
  const bool pass = residual <= spec.tol;
  json r{{"check", name},
         {"window", window(1, x.N())},
         {"dim", piece.piece.dim()},
         {"iterations", piece.iterations},
         {"residual", residual},
         {"pass", pass}};
  if (o.frames) r["frame"] = io::matrix_to_json(piece.piece.frame());
  return {r, pass ? kPass : kCheckFailed};
}

Outcome cmd_check(const Options& o) {
  const auto spec = load_spec(o.spec_path, o);
  const std::string& c = o.check;
  if (c != "standard" && c != "cuntz" && c != "subshift" && c != "rep" && c != "vn" &&
      c != "piece") {
    throw InputError("unknown check \"" + c +
                     "\" (expected standard, cuntz, subshift, rep, vn or piece)");
  }
  if (c == "piece") return piece_report(o, spec, "piece");
  const auto x = io::build_system(spec);
  if (c == "standard") {
    const auto s = sps::validate_standard(x, spec.tol);
    json r{{"check", "standard"},
           {"window", window(1, x.N())},
           {"residual", s.max_residual},
           {"worst", json::array({s.worst_m, s.worst_n})},
           {"pass", s.pass}};
    return {r, s.pass ? kPass : kCheckFailed};
  }
  if (c == "cuntz") {
    const int k = o.k < 0 ? 1 : o.k;
    const auto rr = fock::check_cuntz_defect(fock::FockOperators(x), k, spec.tol);
    json r = relation_json(rr);
    r["k"] = k;
    return {r, rr.pass ? kPass : kCheckFailed};
  }
  if (c == "subshift") {
    if (spec.kind != "forbidden") throw InputError("check subshift needs a forbidden-words spec");
    const auto words = io::spec_words(spec);
    int k = o.k;
    if (k < 0) {
      k = 0;
      for (const auto& w : words) k = std::max(k, w.length() - 1);
    }
    const auto reports =
        fock::subshift_relations_check(fock::FockOperators(x), words, k, spec.tol);
    json lines = json::array();
    bool pass = true;
    for (const auto& rr : reports) {
      lines.push_back(relation_json(rr));
      pass = pass && rr.pass;
    }
    json r{{"check", "subshift"}, {"k", k}, {"reports", lines}, {"pass", pass}};
    return {r, pass ? kPass : kCheckFailed};
  }
  if (c == "rep") {
    const auto t = load_rep(o);
    const auto rep = reps::is_representation(x, t, spec.tol);
    json r{{"check", "rep"},
           {"window", window(1, x.N())},
           {"residuals", std::vector<double>(rep.residuals.begin() + 1, rep.residuals.end())},
           {"residual", rep.max_residual},
           {"worst_degree", rep.worst_degree},
           {"row_norm", rep.row_norm},
           {"contractive", rep.contractive},
           {"pass", rep.pass}};
    return {r, rep.pass ? kPass : kCheckFailed};
  }
  return check_vn(o, x);
}

Outcome cmd_membership(const Options& o) {
  const auto spec = load_spec(o.spec_path, o);
  if (spec.kind != "ideal") throw InputError("membership needs an ideal spec");
  if (o.poly.empty()) throw InputError("--poly is required");
  const auto ideal = io::spec_ideal(spec);
  const auto p = ncpoly::parse_poly(o.poly, spec.d);
  if (!p.is_homogeneous()) throw InputError("membership: polynomial is not homogeneous");
  if (p.degree() > spec.N) {
    throw InputError("membership: degree " + std::to_string(p.degree()) + " exceeds N = " +
                     std::to_string(spec.N));
  }
  const auto linear = ncpoly::membership(ideal, p, spec.tol);
  const fock::FockOperators f(sps::from_ideal(ideal, spec.N));
  const auto shift = fock::membership_via_shift(f, p, spec.tol);
  const bool agree = linear.member == shift.member;
  json r{{"poly", p.render()},
         {"in_ideal", linear.member},
         {"via_shift", shift.member},
         {"via_linear", linear.member},
         {"residuals", {{"shift", shift.residual}, {"linear", linear.residual}}}};
  if (!agree) r["in_ideal"] = nullptr;
  return {r, agree ? kPass : kDisagreement};
}

Outcome cmd_shift(const Options& o) {
  const auto spec = load_spec(o.spec_path, o);
  const fock::FockOperators f(io::build_system(spec));
  std::vector<Index> offsets;
  for (int n = 0; n <= f.N(); ++n) offsets.push_back(f.offset(n));
  json shifts = json::array();
  for (const auto& s : f.shifts()) shifts.push_back(io::matrix_to_json(s));
  json r{{"d", f.d()},
         {"N", f.N()},
         {"total_dim", f.total_dim()},
         {"offsets", offsets},
         {"dims", f.system().dims()},
         {"shifts", shifts}};
  if (o.frames) r["frames"] = frames_json(f.system());
  return {r, kPass};
}

Outcome cmd_iso_q(const Options& o) {
  const auto a = load_spec(o.spec_path, o);
  if (o.other_path.empty()) throw InputError("--other is required");
  const auto b = load_spec(o.other_path, o);
  if (a.kind != "q" || b.kind != "q") throw InputError("iso-q needs two q specs");
  const auto iso = sps::iso_q(a.matrix, b.matrix, std::max(a.N, 2), a.tol);
  json r{{"isomorphic", iso.has_value()}};
  if (iso) {
    r["sigma"] = iso->sigma;
    r["fiber_residual"] = iso->fiber_residual;
    r["product_residual"] = iso->product_residual;
    if (o.frames) r["unitary"] = io::matrix_to_json(iso->unitary);
  } else {
    r["sigma"] = nullptr;
  }
  return {r, kPass};
}

json invariants_json(const sps::AInvariants& inv) {
  json r{{"rank_sym", inv.rank_sym},
         {"rank_antisym", inv.rank_antisym},
         {"ratio", json::array({inv.ratio[0], inv.ratio[1], inv.ratio[2]})}};
  if (inv.cross_ratio) {
    r["cross_ratio"] = json::array({inv.cross_ratio->real(), inv.cross_ratio->imag()});
  } else {
    r["cross_ratio"] = nullptr;
  }
  return r;
}

Outcome cmd_classify_a(const Options& o) {
  const auto a = load_spec(o.spec_path, o);
  if (a.kind != "matrixA") throw InputError("classify-a needs a matrixA spec");
  const auto inv = sps::classify_A(a.matrix);
  json r = invariants_json(inv);
  if (!o.other_path.empty()) {
    const auto b = load_spec(o.other_path, o);
    if (b.kind != "matrixA") throw InputError("classify-a: --other must be a matrixA spec");
    const auto other = sps::classify_A(b.matrix);
    r["other"] = invariants_json(other);
    r["equivalent"] = sps::same_invariants(inv, other);
  }
  return {r, kPass};
}

Outcome cmd_cp(const Options& o) {
  if (o.cp_path.empty()) throw InputError("--cp is required");
  const auto theta = io::cpmap_from_json(io::read_json_file(o.cp_path));
  const int N = o.N.value_or(3);
  if (N < 1) throw InputError("cp: N must be at least 1");
  const double tol = o.tol.value_or(kCheckTol);
  std::vector<Index> dims;
  for (int n = 1; n <= N; ++n) dims.push_back(cpsg::arveson_fiber(theta, n).dim);
  json checks = json::array();
  double worst = 0.0;
  for (int m = 1; m < N; ++m) {
    for (int n = 1; m + n <= N; ++n) {
      const double res = cpsg::coisometry_check(theta, m, n);
      worst = std::max(worst, res);
      checks.push_back({{"m", m}, {"n", n}, {"residual", res}});
    }
  }
  const bool pass = worst <= tol;
  json r{{"k", theta.k()},
         {"unital", theta.is_unital(tol)},
         {"contractive", theta.is_contractive(tol)},
         {"dims", dims},
         {"coisometry", checks},
         {"residual", worst},
         {"pass", pass}};
  if (o.frames) {
    json kraus = json::array();
    for (const auto& m : theta.kraus()) kraus.push_back(io::matrix_to_json(m));
    r["kraus"] = kraus;
  }
  return {r, pass ? kPass : kCheckFailed};
}

Outcome cmd_piece(const Options& o) { return piece_report(o, load_spec(o.spec_path, o), "piece"); }

void print_error(std::ostream& err, const std::string& msg) {
  err << json{{"error", msg}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard subproduct systems: fibers, shifts, representations, CP maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--spec", o.spec_path, "System spec JSON file");
  app.add_option("--N", o.N, "Override the truncation degree");
  app.add_option("--tol", o.tol, "Override the check tolerance");
  app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
  app.add_flag("--frames", o.frames, "Include matrices in the output");

  auto* dims = app.add_subcommand("dims", "Fiber dimensions X(0..N)");
  auto* check = app.add_subcommand("check", "Run a named relation check");
  check->add_option("--check", o.check, "standard|cuntz|subshift|rep|vn|piece")->required();
  check->add_option("--k", o.k, "Power for cuntz, step for subshift");
  check->add_option("--rep", o.rep_path, "RepTuple JSON file");
  check->add_option("--other", o.other_path, "Ambient system spec for piece");
  check->add_option("--p", o.p, "Polynomial p for vn");
  check->add_option("--q", o.q, "Polynomial q for vn");
  check->add_option("--trials", o.trials, "Random (p, q) pairs for vn")->capture_default_str();
  auto* membership = app.add_subcommand("membership", "Ideal membership by two routes");
  membership->add_option("--poly", o.poly, "Homogeneous polynomial")->required();
  auto* shift = app.add_subcommand("shift", "Matrices of the X-shift");
  auto* iso = app.add_subcommand("iso-q", "Isomorphism of two q-commuting systems");
  iso->add_option("--other", o.other_path, "Second q spec")->required();
  auto* classify = app.add_subcommand("classify-a", "Invariants of a 2 x 2 matrix A");
  classify->add_option("--other", o.other_path, "Second matrixA spec to compare");
  auto* cp = app.add_subcommand("cp", "Arveson fibers and coisometry check of a CP map");
  cp->add_option("--cp", o.cp_path, "CPMap JSON file")->required();
  auto* piece = app.add_subcommand("piece", "Maximal X-piece of a representation of Y");
  piece->add_option("--other", o.other_path, "Ambient system Y spec")->required();
  piece->add_option("--rep", o.rep_path, "RepTuple JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    Outcome result;
    if (*dims) result = cmd_dims(o);
    else if (*check) result = cmd_check(o);
    else if (*membership) result = cmd_membership(o);
    else if (*shift) result = cmd_shift(o);
    else if (*iso) result = cmd_iso_q(o);
    else if (*classify) result = cmd_classify_a(o);
    else if (*cp) result = cmd_cp(o);
    else result = cmd_piece(o);
    out << result.report.dump(2) << '\n';
    return result.code;
  } catch (const NumericalError& e) {
    print_error(err, e.what());
    return kNumericalError;
  } catch (const InputError& e) {
    print_error(err, e.what());
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    print_error(err, e.what());
    return kInputError;
  } catch (const std::exception& e) {
    print_error(err, e.what());
    return kNumericalError;
  }
}

}  // namespace subprod::cli
