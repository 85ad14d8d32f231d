#include "qrd/divergences.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "qrd/random.hpp"

namespace qrd {

namespace {
constexpr double NEG_INF_ = -std::numeric_limits<double>::infinity();
}  // namespace

double logsumexp(const std::vector<double>& terms) {
  double peak = NEG_INF_;
  for (double t : terms) peak = std::max(peak, t);
  if (!std::isfinite(peak)) return NEG_INF_;  // empty or all -inf
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

namespace {

constexpr double ALPHA_ONE_WINDOW = 1e-6;   // |alpha-1| below this uses the entropic branch
constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

// Eigenvalues above the scale-relative support cutoff, plus their vectors.
struct SupportSpectrum {
  std::vector<double> vals;
  std::vector<double> logs;
  Matrix vecs;  // columns aligned with vals
};

SupportSpectrum support_spectrum(const HermitianOperator& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.mat());
  if (es.info() != Eigen::Success) throw Error("support_spectrum: eigensolver failed");
  const RVector& ev = es.eigenvalues();
  double peak = 0.0;
  for (int i = 0; i < ev.size(); ++i) peak = std::max(peak, std::abs(ev[i]));
  const double cutoff = config().support_cutoff * peak;

  SupportSpectrum out;
  std::vector<int> idx;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff) idx.push_back(i);
  }
  out.vecs.resize(A.dim(), static_cast<int>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.vals.push_back(ev[idx[k]]);
    out.logs.push_back(std::log(ev[idx[k]]));
    out.vecs.col(static_cast<int>(k)) = es.eigenvectors().col(idx[k]);
  }
  return out;
}

// log Tr rho^a sigma^(1-a) via the double spectral sum
//   sum_{ij} exp(a log r_i + (1-a) log s_j + log |<u_i|v_j>|^2),
// restricted to the supports of rho and sigma.
double log_q_petz(const HermitianOperator& rho, const HermitianOperator& sigma, double a) {
  const SupportSpectrum r = support_spectrum(rho);
  const SupportSpectrum s = support_spectrum(sigma);
  const Matrix overlap = r.vecs.adjoint() * s.vecs;
  std::vector<double> terms;
  terms.reserve(r.vals.size() * s.vals.size());
  for (std::size_t i = 0; i < r.vals.size(); ++i) {
    for (std::size_t j = 0; j < s.vals.size(); ++j) {
      const double w = std::norm(overlap(static_cast<int>(i), static_cast<int>(j)));
      if (w < 1e-300) continue;
      terms.push_back(a * r.logs[i] + (1.0 - a) * s.logs[j] + std::log(w));
    }
  }
  return logsumexp(terms);
}

// log Tr (rho^(1/2) sigma^((1-a)/a) rho^(1/2))^a = logsumexp of a*log t_k.
double log_q_sandwiched(const HermitianOperator& rho, const HermitianOperator& sigma, double a) {
  const HermitianOperator sigma_pow = power_on_support(sigma, (1.0 - a) / a);
  const HermitianOperator sqrt_rho = power_on_support(rho, 0.5);
  const HermitianOperator T(Matrix(sqrt_rho.mat() * sigma_pow.mat() * sqrt_rho.mat()));
  const SupportSpectrum t = support_spectrum(T);
  std::vector<double> terms;
  terms.reserve(t.vals.size());
  for (double lt : t.logs) terms.push_back(a * lt);
  return logsumexp(terms);
}

// log Tr P exp(a P logn(rho) P + (1-a) P logn(sigma) P) with P the support
// meet, evaluated inside the meet subspace so the exponent never leaves the
// log domain.
double log_q_flat(const HermitianOperator& rho, const HermitianOperator& sigma, double a) {
  const HermitianOperator meet = support_meet(rho, sigma);
  const Matrix B = support_basis(meet);
  if (B.cols() == 0) return NEG_INF;
  const Matrix L =
      a * log_on_support(rho).mat() + (1.0 - a) * log_on_support(sigma).mat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(B.adjoint() * L * B));
  if (es.info() != Eigen::Success) throw Error("log_q_flat: eigensolver failed");
  std::vector<double> terms(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
  return logsumexp(terms);
}

void require_nonzero(const HermitianOperator& rho, const char* who) {
  if (rho.trace() <= 0.0) {
    std::ostringstream msg;
    msg << who << ": first argument must have positive trace";
    throw ZeroOperator(msg.str());
  }
}

// The alpha = infinity divergences, one closed form per family.
ExtendedReal d_infinity(const HermitianOperator& rho, const HermitianOperator& sigma,
                        Variant variant) {
  if (!support_leq(rho, sigma)) return ExtendedReal::infinity();
  switch (variant) {
    case Variant::petz: {
      // log max{ r/s : Tr P_r Q_s > 0 } over distinct positive eigenvalues.
      const SpectralDecomposition dr = spectral_decompose(rho);
      const SpectralDecomposition ds = spectral_decompose(sigma);
      const double cut_r = config().support_cutoff * std::abs(dr.eigenvalues.front());
      const double cut_s = config().support_cutoff * std::abs(ds.eigenvalues.front());
      double best = NEG_INF;
      for (int i = 0; i < dr.cluster_count(); ++i) {
        if (dr.eigenvalues[i] <= cut_r) continue;
        for (int j = 0; j < ds.cluster_count(); ++j) {
          if (ds.eigenvalues[j] <= cut_s) continue;
          const double overlap = (dr.projectors[i] * ds.projectors[j]).trace().real();
          if (overlap > 1e-9) {
            best = std::max(best, std::log(dr.eigenvalues[i]) - std::log(ds.eigenvalues[j]));
          }
        }
      }
      return best;
    }
    case Variant::sandwiched:
      return d_max(rho, sigma);
    case Variant::flat: {
      // max spec of rho^0 (logn rho - logn sigma) rho^0 restricted to supp(rho).
      const Matrix B = support_basis(rho);
      const Matrix diff = log_on_support(rho).mat() - log_on_support(sigma).mat();
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(B.adjoint() * diff * B),
                                               Eigen::EigenvaluesOnly);
      return es.eigenvalues().maxCoeff();
    }
  }
  throw Error("d_infinity: unreachable");
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::petz: return "petz";
    case Variant::sandwiched: return "sandwiched";
    case Variant::flat: return "flat";
  }
  throw Error("variant_name: unreachable");
}

Variant variant_from_name(const std::string& name) {
  if (name == "petz") return Variant::petz;
  if (name == "sandwiched") return Variant::sandwiched;
  if (name == "flat") return Variant::flat;
  throw InputError("unknown divergence variant '" + name + "'");
}

ExtendedReal psi_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                       double alpha, Variant variant) {
  require_nonzero(rho, "psi_alpha");
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("psi_alpha: dimension mismatch");
  if (alpha < 0.0) throw InvalidAlphaRange("psi_alpha: alpha must be nonnegative");
  if (variant == Variant::sandwiched && alpha < 1e-9) {
    throw UnsupportedAlphaVariant("sandwiched psi_alpha is undefined at alpha = 0");
  }
  if (std::abs(alpha - 1.0) < 1e-12) return std::log(rho.trace());
  if (alpha > 1.0 && !support_leq(rho, sigma)) return ExtendedReal::infinity();
  switch (variant) {
    case Variant::petz: return log_q_petz(rho, sigma, alpha);
    case Variant::sandwiched: return log_q_sandwiched(rho, sigma, alpha);
    case Variant::flat: return log_q_flat(rho, sigma, alpha);
  }
  throw Error("psi_alpha: unreachable");
}

ExtendedReal q_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                     double alpha, Variant variant) {
  const ExtendedReal psi = psi_alpha(rho, sigma, alpha, variant);
  if (psi.is_infinite()) return ExtendedReal::infinity();
  return std::exp(psi.value());  // exp(-inf) = 0 handles the orthogonal case
}

ExtendedReal d_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                     AlphaPoint alpha, Variant variant) {
  require_nonzero(rho, "d_alpha");
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("d_alpha: dimension mismatch");
  if (alpha.infinite) return d_infinity(rho, sigma, variant);

  const double a = alpha.alpha;
  if (a < 0.0) throw InvalidAlphaRange("d_alpha: alpha must be in [0, inf]");
  if (std::abs(a - 1.0) < ALPHA_ONE_WINDOW) {
    const ExtendedReal de = relative_entropy(rho, sigma);
    if (de.is_infinite()) return ExtendedReal::infinity();
    return de.value() / rho.trace();
  }
  const ExtendedReal psi = psi_alpha(rho, sigma, a, variant);
  if (psi.is_infinite()) return ExtendedReal::infinity();
  if (std::isinf(psi.value())) {
    // Q = 0: disjoint supports (or empty meet) with alpha < 1.
    return ExtendedReal::infinity();
  }
  return (psi.value() - std::log(rho.trace())) / (a - 1.0);
}

ExtendedReal relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma) {
  require_nonzero(rho, "relative_entropy");
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy: dimension mismatch");
  if (!support_leq(rho, sigma)) return ExtendedReal::infinity();
  const SupportSpectrum r = support_spectrum(rho);
  double rho_term = 0.0;
  for (std::size_t i = 0; i < r.vals.size(); ++i) rho_term += r.vals[i] * r.logs[i];
  const SupportSpectrum s = support_spectrum(sigma);
  double cross = 0.0;
  for (std::size_t j = 0; j < s.vals.size(); ++j) {
    const CVector v = s.vecs.col(static_cast<int>(j));
    cross += s.logs[j] * (v.adjoint() * rho.mat() * v)(0).real();
  }
  return rho_term - cross;
}

double von_neumann_entropy(const HermitianOperator& rho) {
  require_nonzero(rho, "von_neumann_entropy");
  const SupportSpectrum r = support_spectrum(rho);
  double h = 0.0;
  for (std::size_t i = 0; i < r.vals.size(); ++i) h -= r.vals[i] * r.logs[i];
  return h;
}

ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma) {
  require_nonzero(rho, "d_max");
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("d_max: dimension mismatch");
  if (!support_leq(rho, sigma)) return ExtendedReal::infinity();
  const Matrix isr = power_on_support(sigma, -0.5).mat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(isr * rho.mat() * isr),
                                           Eigen::EigenvaluesOnly);
  return std::log(es.eigenvalues().maxCoeff());
}

DensityOperator hellinger_arc(const HermitianOperator& rho, const HermitianOperator& sigma,
                              double alpha) {
  require_nonzero(rho, "hellinger_arc");
  const HermitianOperator meet = support_meet(rho, sigma);
  const Matrix B = support_basis(meet);
  if (B.cols() == 0) {
    throw EmptySupportMeet("hellinger_arc: the supports of the two operators are disjoint");
  }
  const Matrix L =
      alpha * log_on_support(rho).mat() + (1.0 - alpha) * log_on_support(sigma).mat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(B.adjoint() * L * B));
  if (es.info() != Eigen::Success) throw Error("hellinger_arc: eigensolver failed");
  std::vector<double> mu(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  const double lse = logsumexp(mu);
  const Matrix vecs = B * es.eigenvectors();  // back to the full space
  Matrix tau = Matrix::Zero(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    tau += std::exp(mu[k] - lse) * vecs.col(static_cast<int>(k)) *
           vecs.col(static_cast<int>(k)).adjoint();
  }
  return DensityOperator(HermitianOperator(std::move(tau)));
}

ExtendedReal variational_objective(const DensityOperator& tau, const HermitianOperator& rho,
                                   const HermitianOperator& sigma, double alpha) {
  const ExtendedReal d1 = relative_entropy(tau.op(), rho);
  const ExtendedReal d2 = relative_entropy(tau.op(), sigma);
  if (d1.is_infinite()) {
    if (alpha > 0.0) return ExtendedReal::infinity();
    throw InfiniteDivergence("variational_objective: infinite term with negative weight");
  }
  if (d2.is_infinite()) {
    if (alpha < 1.0) return ExtendedReal::infinity();
    throw InfiniteDivergence("variational_objective: infinite term with negative weight");
  }
  return alpha * d1.value() + (1.0 - alpha) * d2.value();
}

VariationalDecomposition variational_decomposition(const DensityOperator& tau,
                                                   const HermitianOperator& rho,
                                                   const HermitianOperator& sigma, double alpha) {
  VariationalDecomposition out;
  out.objective = variational_objective(tau, rho, sigma, alpha);
  const DensityOperator arc = hellinger_arc(rho, sigma, alpha);
  out.d_tau_arc = relative_entropy(tau.op(), arc.op());
  const ExtendedReal psi = psi_alpha(rho, sigma, alpha, Variant::flat);
  out.psi_flat = psi.value();
  return out;
}

TroppResult tropp_value(const HermitianOperator& A, int samples, std::uint64_t seed) {
  require_nonzero(A, "tropp_value");
  const Matrix B = support_basis(A);
  const int m = static_cast<int>(B.cols());
  Rng rng(seed);

  // Tr tau - D(tau||A), maximized by tau = A (value Tr A); tau = A is in
  // the candidate set, the random draws probe the strict inequality.
  auto value_at = [&](const HermitianOperator& tau) -> double {
    const ExtendedReal d = relative_entropy(tau, A);
    if (d.is_infinite()) return NEG_INF;
    return tau.trace() - d.value();
  };

  double best = value_at(A);
  for (int k = 0; k < samples; ++k) {
    const Matrix G = random_ginibre(rng, m, m);
    Matrix tau_sub = G * G.adjoint();
    tau_sub *= rng.uniform(0.05, 2.0) * A.trace() / tau_sub.trace().real();
    const HermitianOperator tau(Matrix(B * tau_sub * B.adjoint()));
    best = std::max(best, value_at(tau));
  }
  return TroppResult{best, A.trace() - best};
}

ExtendedReal pinched_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                                double alpha, int n) {
  if (n < 1) throw InvalidAlphaRange("pinched_divergence: n must be >= 1");
  const HermitianOperator rho_n = tensor_power(rho.op(), n);
  const HermitianOperator sigma_n = tensor_power(sigma.op(), n);
  const PinchingMap map = pinching_from(sigma_n);
  const HermitianOperator pinched = pinch(map, rho_n);
  const ExtendedReal d = d_alpha(pinched, sigma_n, alpha, Variant::petz);
  if (d.is_infinite()) return ExtendedReal::infinity();
  return d.value() / n;
}

}  // namespace qrd
