#include "subprod/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace subprod::io {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

int int_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_integer()) {
    throw InputError(std::string(what) + ": field \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<std::string> string_list(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_array()) throw InputError(std::string(what) + ": \"" + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) {
      throw InputError(std::string(what) + ": \"" + key + "\" must hold strings");
    }
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j) {
  const int rows = int_field(j, "rows", "matrix");
  const int cols = int_field(j, "cols", "matrix");
  if (rows < 0 || cols < 0) throw InputError("matrix: negative dimension");
  const json& data = field(j, "data", "matrix");
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols) {
    throw InputError("matrix: \"data\" must hold rows * cols entries");
  }
  CMatrix m(rows, cols);
  std::size_t at = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c, ++at) {
      const json& z = data[at];
      if (z.is_number()) {
        m(r, c) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw InputError("matrix: entry " + std::to_string(at) + " is not [re, im]");
      }
    }
  }
  kernel::require_finite(m, "matrix");
  return m;
}

json rep_to_json(const reps::RepTuple& t) {
  json mats = json::array();
  for (const auto& m : t.matrices()) mats.push_back(matrix_to_json(m));
  return {{"d", t.d()}, {"k", t.k()}, {"matrices", std::move(mats)}};
}

reps::RepTuple rep_from_json(const json& j) {
  const json& mats = field(j, "matrices", "representation");
  if (!mats.is_array()) throw InputError("representation: \"matrices\" must be an array");
  std::vector<CMatrix> out;
  for (const auto& m : mats) out.push_back(matrix_from_json(m));
  reps::RepTuple t(std::move(out));
  if (j.contains("d") && int_field(j, "d", "representation") != t.d()) {
    throw InputError("representation: \"d\" does not match the number of matrices");
  }
  if (j.contains("k") && int_field(j, "k", "representation") != t.k()) {
    throw InputError("representation: \"k\" does not match the matrix size");
  }
  return t;
}

cpsg::CPMap cpmap_from_json(const json& j) {
  const bool has_choi = j.is_object() && j.contains("choi");
  const bool has_kraus = j.is_object() && j.contains("kraus");
  if (has_choi == has_kraus) throw InputError("cp map: give exactly one of \"choi\", \"kraus\"");
  std::optional<int> k;
  if (j.contains("k")) k = int_field(j, "k", "cp map");
  cpsg::CPMap out = [&] {
    if (has_choi) return cpsg::CPMap::from_choi(matrix_from_json(j.at("choi")));
    const json& list = j.at("kraus");
    if (!list.is_array()) throw InputError("cp map: \"kraus\" must be an array");
    std::vector<CMatrix> kraus;
    for (const auto& m : list) kraus.push_back(matrix_from_json(m));
    return cpsg::CPMap::from_kraus(kraus);
  }();
  if (k && *k != out.k()) throw InputError("cp map: \"k\" does not match the matrices");
  return out;
}

SystemSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InputError("spec: expected a JSON object");
  SystemSpec s;
  const json& kind = field(j, "kind", "spec");
  if (!kind.is_string()) throw InputError("spec: \"kind\" must be a string");
  s.kind = kind.get<std::string>();
  s.N = int_field(j, "N", "spec");
  if (s.N < 0) throw InputError("spec: N must be non-negative");
  if (j.contains("tol")) {
    if (!j.at("tol").is_number() || j.at("tol").get<double>() <= 0.0) {
      throw InputError("spec: \"tol\" must be a positive number");
    }
    s.tol = j.at("tol").get<double>();
  }
  auto need_d = [&] {
    s.d = int_field(j, "d", "spec");
    if (s.d < 1) throw InputError("spec: d must be positive");
  };
  if (s.kind == "ideal") {
    need_d();
    s.generators = string_list(j, "generators", "spec");
    spec_ideal(s);  // parse now so errors surface before any computation
  } else if (s.kind == "forbidden") {
    need_d();
    s.words = string_list(j, "words", "spec");
    if (j.contains("prune")) {
      if (!j.at("prune").is_boolean()) throw InputError("spec: \"prune\" must be a boolean");
      s.prune = j.at("prune").get<bool>();
    }
    spec_words(s);
  } else if (s.kind == "symmetric") {
    need_d();
  } else if (s.kind == "q") {
    s.matrix = matrix_from_json(field(j, "q", "spec"));
    s.d = static_cast<int>(s.matrix.rows());
    sps::require_admissible(s.matrix);
  } else if (s.kind == "matrixA") {
    s.matrix = matrix_from_json(field(j, "A", "spec"));
    if (s.matrix.rows() != 2 || s.matrix.cols() != 2) {
      throw InputError("spec: \"A\" must be 2 x 2");
    }
    s.d = 2;
  } else if (s.kind == "fibers") {
    need_d();
    const json& list = field(j, "fibers", "spec");
    if (!list.is_array()) throw InputError("spec: \"fibers\" must be an array");
    Index ambient = s.d;
    for (const auto& m : list) {
      s.fibers.push_back(matrix_from_json(m));
      if (s.fibers.back().rows() != ambient) {
        throw InputError("spec: fiber " + std::to_string(s.fibers.size()) + " must have " +
                         std::to_string(ambient) + " rows");
      }
      ambient *= s.d;
    }
  } else {
    throw InputError("spec: unknown kind \"" + s.kind +
                     "\" (expected ideal, forbidden, symmetric, q, matrixA or fibers)");
  }
  return s;
}

ncpoly::HomogeneousIdeal spec_ideal(const SystemSpec& spec) {
  if (spec.kind != "ideal") throw InputError("spec: kind \"" + spec.kind + "\" has no ideal");
  return ncpoly::HomogeneousIdeal::parse(spec.d, spec.generators);
}

std::vector<ncpoly::Word> spec_words(const SystemSpec& spec) {
  std::vector<ncpoly::Word> out;
  for (const auto& w : spec.words) out.push_back(ncpoly::Word::parse(w, spec.d));
  return out;
}

sps::SubproductSystem build_system(const SystemSpec& spec) {
  if (spec.kind == "ideal") return sps::from_ideal(spec_ideal(spec), spec.N);
  if (spec.kind == "forbidden") {
    return sps::from_forbidden_words(spec.d, spec_words(spec), spec.N, spec.prune);
  }
  if (spec.kind == "symmetric") return sps::symmetric(spec.d, spec.N);
  if (spec.kind == "q") return sps::q_commuting(spec.matrix, spec.N);
  if (spec.kind == "matrixA") return sps::from_matrix_A(spec.matrix, spec.N);
  if (spec.kind == "fibers") {
    std::vector<kernel::Subspace> prescribed;
    for (const auto& m : spec.fibers) prescribed.push_back(kernel::orthonormalize(m));
    return sps::maximal_from_fibers(spec.d, prescribed, spec.N);
  }
  throw InputError("spec: unknown kind \"" + spec.kind + "\"");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace subprod::io
