#pragma once
//
// random.hpp -- seeded generators for random operators, states, unitaries,
// and simplex points. Used by the verification suite and the tests; all
// draws are reproducible from the seed.
//

#include <cstdint>
#include <random>
#include <vector>

#include "qrd/operator_core.hpp"

namespace qrd {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double gaussian();
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Ginibre matrix: independent standard complex Gaussian entries.
Matrix random_ginibre(Rng& rng, int rows, int cols);

HermitianOperator random_hermitian(Rng& rng, int dim, double scale = 1.0);
HermitianOperator random_psd(Rng& rng, int dim);

// G G† / Tr: Hilbert-Schmidt-distributed full-rank state (a.s.).
DensityOperator random_state(Rng& rng, int dim);
DensityOperator random_pure_state(Rng& rng, int dim);

// Mixes in a multiple of the identity so every eigenvalue is >= floor/dim.
DensityOperator random_full_rank_state(Rng& rng, int dim, double floor = 0.05);

Matrix random_unitary(Rng& rng, int dim);

// Uniform (Dirichlet(1,..,1)) point on the probability simplex.
std::vector<double> random_simplex(Rng& rng, int k);

}  // namespace qrd
