#pragma once
//
// divergences.hpp -- the three Renyi divergence families (Petz, sandwiched,
// flat), the relative entropy, max-relative entropy, the Hellinger arc, the
// variational machinery around the flat family, and the pinched-divergence
// approximations.
//
// For PSD rho, sigma and alpha in (0,1) or supp(rho) <= supp(sigma):
//   petz:       Q_a = Tr rho^a sigma^(1-a)
//   sandwiched: Q_a = Tr (rho^(1/2) sigma^((1-a)/a) rho^(1/2))^a
//   flat:       Q_a = Tr P exp(a P (logn rho) P + (1-a) P (logn sigma) P),
//               P the projection onto supp(rho) ∩ supp(sigma)
// with all powers/logs taken on supports. For alpha > 1 with
// supp(rho) !<= supp(sigma), Q_a = +inf. The divergences are
//   D_a = (psi_a - psi_1) / (a - 1),  psi_a = log Q_a,  psi_1 = log Tr rho,
// with the alpha in {0, 1, inf} cases given by their own closed forms.
//

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "qrd/operator_core.hpp"

namespace qrd {

enum class Variant { petz, sandwiched, flat };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

// Real value extended with +infinity. Infinity is only ever produced by
// explicit support checks (or by taking log of an exactly-zero Q), never by
// roundoff; it propagates through sums and max as IEEE infinity does.
struct ExtendedReal {
  double v = 0.0;

  ExtendedReal() = default;
  ExtendedReal(double x) : v(x) {}
  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(v) && v > 0; }
  bool is_finite() const { return std::isfinite(v); }
  double value() const { return v; }
};

// alpha together with the sign s(alpha) = +1 for alpha >= 1, -1 otherwise;
// the infinite point selects the alpha = inf formulas.
struct AlphaPoint {
  double alpha = 1.0;
  bool infinite = false;

  AlphaPoint(double a) : alpha(a) {}
  static AlphaPoint inf() {
    AlphaPoint p(0.0);
    p.infinite = true;
    return p;
  }
  int sign() const { return (infinite || alpha >= 1.0) ? +1 : -1; }
};

// log sum_k exp(terms[k]), stable against overflow; -inf on an empty list.
// Shared by every log-domain accumulation in this library.
double logsumexp(const std::vector<double>& terms);

// log Q_alpha, evaluated in the log domain so that extreme alpha (the
// delta -> 1 substitution reaches alpha ~ 1e3) neither overflows nor loses
// the exponent. Returns -inf when Q = 0 and +inf on support violations.
ExtendedReal psi_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                       double alpha, Variant variant);

// Q_alpha itself (exp of psi); requires alpha > 0, alpha != 1.
ExtendedReal q_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                     double alpha, Variant variant);

// D_alpha for alpha in [0, inf]. alpha = 1 is the relative-entropy branch
// D(rho||sigma)/Tr rho (also used within |alpha-1| < 1e-6 to avoid the
// cancellation in (psi_a - psi_1)/(a-1)); alpha = 0 and alpha = inf use the
// per-variant closed forms. Sandwiched alpha = 0 is unsupported.
ExtendedReal d_alpha(const HermitianOperator& rho, const HermitianOperator& sigma,
                     AlphaPoint alpha, Variant variant);

// Tr rho (logn rho - logn sigma) when supp(rho) <= supp(sigma), else +inf.
ExtendedReal relative_entropy(const HermitianOperator& rho, const HermitianOperator& sigma);

// H(rho) = -Tr rho logn rho.
double von_neumann_entropy(const HermitianOperator& rho);

// log inf{lambda : rho <= lambda sigma}: the max-relative entropy, equal to
// the sandwiched divergence at alpha = inf.
ExtendedReal d_max(const HermitianOperator& rho, const HermitianOperator& sigma);

// tau_alpha = P exp(a P logn(rho) P + (1-a) P logn(sigma) P) / Q_a^flat:
// the operator interpolation attaining the flat-family variational minimum.
DensityOperator hellinger_arc(const HermitianOperator& rho, const HermitianOperator& sigma,
                              double alpha);

// a D(tau||rho) + (1-a) D(tau||sigma).
ExtendedReal variational_objective(const DensityOperator& tau, const HermitianOperator& rho,
                                   const HermitianOperator& sigma, double alpha);

// Both sides of the decomposition
//   a D(tau||rho) + (1-a) D(tau||sigma) = D(tau||tau_alpha) - psi_a^flat.
struct VariationalDecomposition {
  ExtendedReal objective;      // left-hand side
  ExtendedReal d_tau_arc;      // D(tau || tau_alpha)
  double psi_flat;             // psi_alpha^flat(rho||sigma)
};
VariationalDecomposition variational_decomposition(const DensityOperator& tau,
                                                   const HermitianOperator& rho,
                                                   const HermitianOperator& sigma, double alpha);

// max over sampled PSD tau of {Tr tau - D(tau||A)}; the maximum over all of
// L(H)+ equals Tr A, attained uniquely at tau = A (which is always included
// in the sample set, so gap = Tr A - value is 0 up to roundoff).
struct TroppResult {
  double value;
  double gap;
};
TroppResult tropp_value(const HermitianOperator& A, int samples = 500, std::uint64_t seed = 7);

// (1/n) D_alpha(pinch by sigma^(x)n of rho^(x)n || sigma^(x)n), the Petz
// divergence of the pinched pair; converges to the sandwiched divergence as
// n grows and never exceeds it by more than (2/n) log v(sigma^(x)n) for
// alpha > 1.
ExtendedReal pinched_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                                double alpha, int n);

}  // namespace qrd
