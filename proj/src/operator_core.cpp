#include "qrd/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qrd {

Tolerances& config() {
  static Tolerances cfg;
  return cfg;
}

namespace {

// Solves the Hermitian eigenproblem with eigenvalues ascending.
void eigh(const Matrix& A, RVector& vals, Matrix& vecs) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success) {
    throw Error("Hermitian eigensolver failed to converge");
  }
  vals = es.eigenvalues();
  vecs = es.eigenvectors();
}

double support_cutoff_for(const RVector& vals) {
  double peak = 0.0;
  for (int i = 0; i < vals.size(); ++i) peak = std::max(peak, std::abs(vals[i]));
  return config().support_cutoff * peak;
}

void require_psd(const HermitianOperator& A, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.mat(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -config().psd) {
    std::ostringstream msg;
    msg << who << ": operator is not positive semidefinite (min eigenvalue "
        << es.eigenvalues().minCoeff() << ")";
    throw NotPSD(msg.str());
  }
}

void require_same_dim(const HermitianOperator& A, const HermitianOperator& B, const char* who) {
  if (A.dim() != B.dim()) {
    std::ostringstream msg;
    msg << who << ": dimension mismatch (" << A.dim() << " vs " << B.dim() << ")";
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch("HermitianOperator: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > config().herm * scale) {
    std::ostringstream msg;
    msg << "HermitianOperator: Hermiticity defect " << defect << " exceeds tolerance";
    throw NonHermitian(msg.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  require_psd(op_, "DensityOperator");
  if (std::abs(op_.trace() - 1.0) > config().trace) {
    std::ostringstream msg;
    msg << "DensityOperator: trace " << op_.trace() << " is not 1 within tolerance";
    throw NotPSD(msg.str());
  }
}

DensityOperator DensityOperator::normalized(const HermitianOperator& op) {
  const double tr = op.trace();
  if (tr <= 0.0) throw ZeroOperator("DensityOperator::normalized: trace is not positive");
  return DensityOperator(HermitianOperator(op.mat() / tr));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& A, double cluster_tol) {
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);

  const int n = A.dim();
  SpectralDecomposition out;
  out.raw_eigenvalues.resize(n);
  out.raw_vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {  // flip to descending order
    out.raw_eigenvalues[i] = vals[n - 1 - i];
    out.raw_vectors.col(i) = vecs.col(n - 1 - i);
  }

  // Chain-cluster by the absolute gap between adjacent sorted eigenvalues.
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && out.raw_eigenvalues[j - 1] - out.raw_eigenvalues[j] <= cluster_tol) ++j;
    std::vector<int> members(j - i);
    std::iota(members.begin(), members.end(), i);
    Matrix proj = Matrix::Zero(n, n);
    double mean = 0.0;
    for (int k = i; k < j; ++k) {
      proj += out.raw_vectors.col(k) * out.raw_vectors.col(k).adjoint();
      mean += out.raw_eigenvalues[k];
    }
    out.eigenvalues.push_back(mean / (j - i));
    out.projectors.push_back(std::move(proj));
    out.clusters.push_back(std::move(members));
    i = j;
  }
  return out;
}

HermitianOperator support_projection(const HermitianOperator& A) {
  require_psd(A, "support_projection");
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);
  const double cutoff = support_cutoff_for(vals);
  Matrix proj = Matrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) proj += vecs.col(i) * vecs.col(i).adjoint();
  }
  return HermitianOperator(std::move(proj));
}

HermitianOperator power_on_support(const HermitianOperator& A, double p) {
  require_psd(A, "power_on_support");
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);
  const double cutoff = support_cutoff_for(vals);
  Matrix out = Matrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) out += std::pow(vals[i], p) * vecs.col(i) * vecs.col(i).adjoint();
  }
  return HermitianOperator(std::move(out));
}

HermitianOperator log_on_support(const HermitianOperator& A) {
  require_psd(A, "log_on_support");
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);
  const double cutoff = support_cutoff_for(vals);
  Matrix out = Matrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) out += std::log(vals[i]) * vecs.col(i) * vecs.col(i).adjoint();
  }
  return HermitianOperator(std::move(out));
}

HermitianOperator positive_part(const HermitianOperator& A) {
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);
  Matrix out = Matrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > 0.0) out += vals[i] * vecs.col(i) * vecs.col(i).adjoint();
  }
  return HermitianOperator(std::move(out));
}

Matrix support_basis(const HermitianOperator& A) {
  require_psd(A, "support_basis");
  RVector vals;
  Matrix vecs;
  eigh(A.mat(), vals, vecs);
  const double cutoff = support_cutoff_for(vals);
  int rank = 0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) ++rank;
  }
  Matrix basis(A.dim(), rank);
  int col = 0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] > cutoff) basis.col(col++) = vecs.col(i);
  }
  return basis;
}

HermitianOperator support_meet(const HermitianOperator& A, const HermitianOperator& B) {
  require_same_dim(A, B, "support_meet");
  const Matrix pa = support_projection(A).mat();
  const Matrix pb = support_projection(B).mat();
  RVector vals;
  Matrix vecs;
  eigh(pa * pb * pa, vals, vecs);
  Matrix meet = Matrix::Zero(A.dim(), A.dim());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] >= 1.0 - config().meet) meet += vecs.col(i) * vecs.col(i).adjoint();
  }
  return HermitianOperator(std::move(meet));
}

bool support_leq(const HermitianOperator& A, const HermitianOperator& B) {
  require_same_dim(A, B, "support_leq");
  const Matrix pa = support_projection(A).mat();
  const Matrix pb = support_projection(B).mat();
  const Matrix leak = pa * (Matrix::Identity(A.dim(), A.dim()) - pb) * pa;
  Eigen::SelfAdjointEigenSolver<Matrix> es(leak, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() <= config().meet;
}

PinchingMap pinching_from(const HermitianOperator& sigma, double cluster_tol) {
  PinchingMap map;
  map.blocks = spectral_decompose(sigma, cluster_tol).projectors;
  return map;
}

HermitianOperator pinch(const PinchingMap& map, const HermitianOperator& X) {
  if (map.blocks.empty() || map.blocks.front().rows() != X.dim()) {
    throw DimensionMismatch("pinch: map and operator dimensions differ");
  }
  Matrix out = Matrix::Zero(X.dim(), X.dim());
  for (const Matrix& P : map.blocks) out += P * X.mat() * P;
  return HermitianOperator(std::move(out));
}

int distinct_eigenvalue_count(const HermitianOperator& A, double cluster_tol) {
  return spectral_decompose(A, cluster_tol).cluster_count();
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& A, const HermitianOperator& B) {
  const long long d = static_cast<long long>(A.dim()) * B.dim();
  if (d > config().dim_cap) {
    throw DimensionCap("tensor: product dimension exceeds the configured cap");
  }
  return HermitianOperator(kron(A.mat(), B.mat()));
}

HermitianOperator tensor_power(const HermitianOperator& A, int n) {
  if (n < 1) throw DimensionMismatch("tensor_power: n must be >= 1");
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    d *= A.dim();
    if (d > config().dim_cap) {
      throw DimensionCap("tensor_power: d^n exceeds the configured cap");
    }
  }
  Matrix out = A.mat();
  for (int k = 1; k < n; ++k) out = kron(out, A.mat());
  return HermitianOperator(std::move(out));
}

HermitianOperator partial_trace(const HermitianOperator& X, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionMismatch("partial_trace: factor dimensions must be positive");
    total *= d;
  }
  if (total != X.dim()) {
    throw DimensionMismatch("partial_trace: factor dimensions do not multiply to dim(X)");
  }
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(k, false);
  for (int pos : keep) {
    if (pos < 0 || pos >= k) throw DimensionMismatch("partial_trace: keep index out of range");
    kept[pos] = true;
  }

  // Row-major strides of each factor inside the flat index.
  std::vector<long long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  long long dim_keep = 1, dim_trace = 1;
  for (int i = 0; i < k; ++i) (kept[i] ? dim_keep : dim_trace) *= dims[i];

  // Enumerate flat offsets of the kept and traced multi-indices.
  auto offsets = [&](bool want_kept) {
    std::vector<long long> off(1, 0);
    for (int i = 0; i < k; ++i) {
      if (kept[i] != want_kept) continue;
      std::vector<long long> next;
      next.reserve(off.size() * dims[i]);
      for (long long base : off) {
        for (int v = 0; v < dims[i]; ++v) next.push_back(base + v * stride[i]);
      }
      off = std::move(next);
    }
    return off;
  };
  const std::vector<long long> keep_off = offsets(true);
  const std::vector<long long> trace_off = offsets(false);

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  const Matrix& M = X.mat();
  for (long long r = 0; r < dim_keep; ++r) {
    for (long long c = 0; c < dim_keep; ++c) {
      Complex acc(0, 0);
      for (long long t : trace_off) acc += M(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  }
  return HermitianOperator(std::move(out));
}

bool psd_leq(const HermitianOperator& A, const HermitianOperator& B, double tol) {
  require_same_dim(A, B, "psd_leq");
  Eigen::SelfAdjointEigenSolver<Matrix> es(B.mat() - A.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace qrd
