#pragma once

// JSON exchange formats.
//
// Matrix:   {"rows": m, "cols": n, "data": [[re, im], ...]} row-major.
// RepTuple: {"d": 2, "k": 4, "matrices": [matrix, ...]}.
// CPMap:    {"k": 2, "choi": matrix} or {"k": 2, "kraus": [matrix, ...]}.
// System:   {"kind": ..., "N": 5, "tol": 1e-7, ...} with, per kind,
//   ideal      "d", "generators": ["x1 x2 - x2 x1", ...]
//   forbidden  "d", "words": ["22", ...], "prune": true
//   symmetric  "d"
//   q          "q": matrix
//   matrixA    "A": matrix (2 x 2)
//   fibers     "d", "fibers": [matrix, ...] spanning X(1), X(2), ...

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "subprod/cpsg.hpp"
#include "subprod/ncpoly.hpp"
#include "subprod/reps.hpp"
#include "subprod/sps.hpp"

namespace subprod::io {

using json = nlohmann::ordered_json;

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json rep_to_json(const reps::RepTuple& t);
reps::RepTuple rep_from_json(const json& j);

cpsg::CPMap cpmap_from_json(const json& j);

struct SystemSpec {
  std::string kind;
  int d = 0;
  int N = 0;
  double tol = kCheckTol;
  std::vector<std::string> generators;  // ideal
  std::vector<std::string> words;       // forbidden
  bool prune = true;                    // forbidden
  CMatrix matrix;                       // q or matrixA
  std::vector<CMatrix> fibers;          // fibers
};

// Validates every field for the given kind; throws InputError.
SystemSpec spec_from_json(const json& j);
sps::SubproductSystem build_system(const SystemSpec& spec);
// The ideal of an "ideal" spec; InputError for other kinds.
ncpoly::HomogeneousIdeal spec_ideal(const SystemSpec& spec);
std::vector<ncpoly::Word> spec_words(const SystemSpec& spec);

// Reads and parses a JSON file; InputError on I/O or syntax errors.
json read_json_file(const std::string& path);

}  // namespace subprod::io
