#pragma once
//
// operator_core.hpp -- Hermitian operator calculus: spectral decomposition
// with eigenvalue clustering, support-restricted functional calculus
// (powers, logarithms taken only on the support), positive parts, support
// meets, pinching maps, tensor/partial-trace plumbing, and PSD order tests.
//
// Conventions: for a positive semidefinite A with spectral decomposition
// A = sum_i a_i P_i, powers and logarithms act only on the support,
//   A^p := sum_{a_i > 0} a_i^p P_i,   logn A := sum_{a_i > 0} (log a_i) P_i,
// and A^0 is the support projection. "Zero" eigenvalues are decided by the
// scale-relative cutoff in config().support_cutoff.
//

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qrd/config.hpp"
#include "qrd/errors.hpp"

namespace qrd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Dense complex square matrix with the Hermiticity invariant. Inputs whose
// defect ||A - A*|| stays below the tolerance are symmetrized to (A + A*)/2
// rather than rejected; larger defects raise NonHermitian.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
};

// PSD, unit-trace operator: the states rho, sigma, tau.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op);
  explicit DensityOperator(Matrix m) : DensityOperator(HermitianOperator(std::move(m))) {}

  // Rescales a nonzero PSD operator to unit trace.
  static DensityOperator normalized(const HermitianOperator& op);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const Matrix& mat() const { return op_.mat(); }

 private:
  HermitianOperator op_;
};

// Spectral decomposition with distinct-eigenvalue clustering. Eigenvalues
// are sorted descending; raw eigenpairs are kept alongside the clustered
// projectors so callers can pick whichever resolution they need.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;          // one representative per cluster, descending
  std::vector<Matrix> projectors;           // cluster projectors, sum to identity
  std::vector<std::vector<int>> clusters;   // raw indices grouped per cluster

  RVector raw_eigenvalues;  // descending
  Matrix raw_vectors;       // columns aligned with raw_eigenvalues

  int cluster_count() const { return static_cast<int>(eigenvalues.size()); }
};

// An ordered orthogonal resolution of the identity; applying it as a map is
// the pinching X |-> sum_i P_i X P_i.
struct PinchingMap {
  std::vector<Matrix> blocks;
  int block_count() const { return static_cast<int>(blocks.size()); }
};

SpectralDecomposition spectral_decompose(const HermitianOperator& A, double cluster_tol);
inline SpectralDecomposition spectral_decompose(const HermitianOperator& A) {
  return spectral_decompose(A, config().cluster);
}

// Projection onto the eigenvectors with eigenvalue above the support cutoff.
HermitianOperator support_projection(const HermitianOperator& A);

// sum_{a_i > cutoff} a_i^p P_i; zero on the kernel. p = 0 gives the support
// projection, negative p the pseudo-inverse powers.
HermitianOperator power_on_support(const HermitianOperator& A, double p);

// The extended logarithm logn: log on the support, zero on the kernel.
HermitianOperator log_on_support(const HermitianOperator& A);

// A_+ = A{A > 0}: keep the strictly positive part of the spectrum.
HermitianOperator positive_part(const HermitianOperator& A);

// dim x rank matrix whose orthonormal columns span supp(A).
Matrix support_basis(const HermitianOperator& A);

// Projection onto range(A^0) ∩ range(B^0), computed as the eigenvalue-1
// eigenspace (within config().meet) of A^0 B^0 A^0.
HermitianOperator support_meet(const HermitianOperator& A, const HermitianOperator& B);

// True iff supp(A) is contained in supp(B), i.e. A^0 <= B^0 within tol.
bool support_leq(const HermitianOperator& A, const HermitianOperator& B);

PinchingMap pinching_from(const HermitianOperator& sigma, double cluster_tol);
inline PinchingMap pinching_from(const HermitianOperator& sigma) {
  return pinching_from(sigma, config().cluster);
}
HermitianOperator pinch(const PinchingMap& map, const HermitianOperator& X);

// v(A): number of clustered (distinct) eigenvalues.
int distinct_eigenvalue_count(const HermitianOperator& A, double cluster_tol);
inline int distinct_eigenvalue_count(const HermitianOperator& A) {
  return distinct_eigenvalue_count(A, config().cluster);
}

HermitianOperator tensor(const HermitianOperator& A, const HermitianOperator& B);
HermitianOperator tensor_power(const HermitianOperator& A, int n);

// Trace out the factors not listed in `keep`. `dims` are the factor
// dimensions of X in order; `keep` is the sorted list of factor positions
// that survive.
HermitianOperator partial_trace(const HermitianOperator& X, const std::vector<int>& dims,
                                const std::vector<int>& keep);

// A <= B in the PSD order: min eigenvalue of B - A is >= -tol.
bool psd_leq(const HermitianOperator& A, const HermitianOperator& B, double tol);
inline bool psd_leq(const HermitianOperator& A, const HermitianOperator& B) {
  return psd_leq(A, B, config().psd);
}

// Raw Kronecker product used by the operator-level tensor and the
// permutation machinery.
Matrix kron(const Matrix& A, const Matrix& B);

}  // namespace qrd
