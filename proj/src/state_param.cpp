#include "qrd/state_param.hpp"

#include <cmath>

namespace qrd {

int state_param_count(int d) { return d * d - 1; }

Matrix traceless_hermitian(const RVector& t, int d) {
  if (t.size() != state_param_count(d)) {
    throw DimensionMismatch("traceless_hermitian: wrong parameter count");
  }
  Matrix H = Matrix::Zero(d, d);
  double diag_sum = 0.0;
  for (int i = 0; i < d - 1; ++i) {
    H(i, i) = t[i];
    diag_sum += t[i];
  }
  H(d - 1, d - 1) = -diag_sum;
  int k = d - 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      H(i, j) = Complex(t[k], t[k + 1]);
      H(j, i) = Complex(t[k], -t[k + 1]);
      k += 2;
    }
  }
  return H;
}

DensityOperator state_from_params(const RVector& t, int d) {
  const Matrix H = traceless_hermitian(t, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) throw Error("state_from_params: eigensolver failed");
  const RVector& eta = es.eigenvalues();
  // Normalize in the log domain so extreme parameters cannot overflow.
  double peak = eta.maxCoeff();
  double z = 0.0;
  for (int i = 0; i < d; ++i) z += std::exp(eta[i] - peak);
  const double log_z = peak + std::log(z);
  Matrix sigma = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    sigma += std::exp(eta[i] - log_z) * es.eigenvectors().col(i) *
             es.eigenvectors().col(i).adjoint();
  }
  return DensityOperator(HermitianOperator(std::move(sigma)));
}

RVector params_from_state(const DensityOperator& sigma, double eig_floor) {
  const int d = sigma.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.mat());
  if (es.info() != Eigen::Success) throw Error("params_from_state: eigensolver failed");
  // Clamp eigenvalues at the floor rather than shifting them all, so states
  // that are already comfortably full rank round-trip exactly.
  Matrix H = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    H += std::log(std::max(es.eigenvalues()[i], eig_floor)) *
         es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  const Complex tr = H.trace();
  H -= (tr / static_cast<double>(d)) * Matrix::Identity(d, d);
  RVector t(state_param_count(d));
  for (int i = 0; i < d - 1; ++i) t[i] = H(i, i).real();
  int k = d - 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      t[k] = H(i, j).real();
      t[k + 1] = H(i, j).imag();
      k += 2;
    }
  }
  return t;
}

}  // namespace qrd
