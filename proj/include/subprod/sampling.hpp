#pragma once

// Seeded random inputs shared by the CLI and the test suites.

#include <random>

#include "subprod/cpsg.hpp"
#include "subprod/ncpoly.hpp"
#include "subprod/reps.hpp"

namespace subprod::sampling {

using Rng = std::mt19937_64;

// Entries with independent standard normal real and imaginary parts.
CMatrix gaussian(Index rows, Index cols, Rng& rng);
CMatrix random_unitary(Index k, Rng& rng);

// Nonzero polynomial with 1..3 terms of degree at most max_degree.
ncpoly::NCPolynomial random_poly(int d, int max_degree, Rng& rng);
// Nonzero homogeneous polynomial of the given degree with 1..terms terms.
ncpoly::NCPolynomial random_homogeneous(int d, int degree, int terms, Rng& rng);

// The tuple multiplied by target / row_norm.
reps::RepTuple with_row_norm(const reps::RepTuple& t, double target);
// (M, a I + b M + c M^2) scaled to the given row norm; the pair commutes.
reps::RepTuple random_commuting_pair(Index k, double row_norm, Rng& rng);

// (M, u v*) with v* u = 0 scaled to the given row norm, so T_2^2 = 0.
reps::RepTuple random_square_zero_pair(Index k, double row_norm, Rng& rng);

// Kraus family K_l = S^(-1/2) G_l, S = sum G_l G_l*, so sum K_l K_l* = I.
cpsg::CPMap random_unital_cp(Index k, int kraus_count, Rng& rng);

}  // namespace subprod::sampling
