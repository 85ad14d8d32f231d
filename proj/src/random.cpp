#include "qrd/random.hpp"

#include <cmath>

namespace qrd {

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(gen_);
}

double Rng::gaussian() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(gen_);
}

Matrix random_ginibre(Rng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  }
  return g;
}

HermitianOperator random_hermitian(Rng& rng, int dim, double scale) {
  Matrix g = random_ginibre(rng, dim, dim);
  return HermitianOperator(scale * 0.5 * (g + g.adjoint()));
}

HermitianOperator random_psd(Rng& rng, int dim) {
  Matrix g = random_ginibre(rng, dim, dim);
  return HermitianOperator(g * g.adjoint());
}

DensityOperator random_state(Rng& rng, int dim) {
  return DensityOperator::normalized(random_psd(rng, dim));
}

DensityOperator random_pure_state(Rng& rng, int dim) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.gaussian(), rng.gaussian());
  v.normalize();
  return DensityOperator(HermitianOperator(v * v.adjoint()));
}

DensityOperator random_full_rank_state(Rng& rng, int dim, double floor) {
  const Matrix m = random_state(rng, dim).mat();
  const Matrix mixed =
      (1.0 - floor) * m + floor / dim * Matrix::Identity(dim, dim);
  return DensityOperator(HermitianOperator(mixed));
}

Matrix random_unitary(Rng& rng, int dim) {
  // QR of a Ginibre matrix with the phase convention fixed by R's diagonal.
  Matrix g = random_ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

std::vector<double> random_simplex(Rng& rng, int k) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    w[i] = -std::log(rng.uniform(1e-16, 1.0));
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace qrd
