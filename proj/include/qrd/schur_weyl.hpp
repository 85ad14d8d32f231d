#pragma once
//
// schur_weyl.hpp -- the permutation-symmetric decomposition of (C^d)^{x n}:
// Young diagram enumeration, irrep dimensions (hook length and Weyl
// formulas), Murnaghan-Nakayama characters, permutation unitaries, the
// isotypic central projections, and the universal symmetric state
//   sigma_u = sum_lambda P_lambda / (|Y_{n,d}| dimU_lambda dimV_lambda),
// which dominates every permutation-invariant state up to the polynomial
// factor v_{n,d} = (n+1)^{(d+2)(d-1)/2}.
//

#include <vector>

#include "qrd/operator_core.hpp"

namespace qrd {

// Weakly decreasing nonnegative rows; trailing zeros allowed.
using Partition = std::vector<int>;

// All partitions of n into at most d parts, padded with zeros to length d,
// in decreasing lexicographic order. Size is at most (n+1)^(d-1).
std::vector<Partition> enumerate_young_diagrams(int n, int d);

// Hook length formula: dimension of the symmetric-group irrep U_lambda.
long long dim_sym_irrep(const Partition& lambda);

// Weyl product formula: dimension of the GL(d) irrep V_lambda,
// prod_{i<j<=d} (lambda_i - lambda_j + j - i)/(j - i).
long long dim_gl_irrep(const Partition& lambda, int d);

// Murnaghan-Nakayama character chi_lambda on the class of the given cycle
// type; both arguments must partition the same n.
long long sym_character(const Partition& lambda, const Partition& cycle_type);

// Unitary permuting the tensor factors: |v_1 ... v_n> -> the product with
// v_{perm^{-1}(j)} in slot j. perm is 0-indexed with perm[i] = pi(i).
Matrix permutation_operator(const std::vector<int>& perm, int d);

struct IsotypicComponent {
  Partition lambda;
  long long dim_sym;  // dim U_lambda
  long long dim_gl;   // dim V_lambda
  Matrix projector;   // central projection onto U_lambda x V_lambda
};

struct IsotypicDecomposition {
  int n = 0;
  int d = 0;
  std::vector<IsotypicComponent> components;
};

// Central projections P_lambda = (dimU_lambda/n!) sum_pi chi_lambda(pi) U(pi)
// assembled from class sums. Work scales as n! d^n and is capped.
IsotypicDecomposition isotypic_projections(int n, int d);

// sigma_u: equal weight 1/|Y_{n,d}| per diagram, maximally mixed inside each
// isotypic block.
DensityOperator universal_symmetric_state(int n, int d);

// Spectral pinching by sigma_u; diagrams whose eigenvalues coincide merge
// into a single block under the clustering rule.
PinchingMap universal_pinching(int n, int d);

// v_{n,d} = (n+1)^((d+2)(d-1)/2): the domination factor in
// omega <= v_{n,d} sigma_u for permutation-invariant omega.
long long v_factor(int n, int d);

// Averages X over the permutation action; the result is symmetric.
HermitianOperator symmetrize_over_permutations(const HermitianOperator& X, int n, int d);

}  // namespace qrd
