#pragma once
// Strong converse exponents.  The pieces fit together like this: the
// converse Hoeffding capacity of a channel is
//
//     sup over alpha > 1 of (alpha-1)/alpha * (R - C_alpha(W)),
//
// evaluated through the substitution delta = (alpha-1)/alpha on a grid with
// golden refinement plus the explicit delta = 1 endpoint (order-infinity
// capacity).  With the sandwiched variant this is the strong converse
// exponent sc(R, W).  The Dueck-Korner quantity F(P, R, W) is the channel
// analogue with a dummy-channel minimization; its G-objective ties it back
// to flat divergences.  The Kraus-channel corollaries bound the exponent of
// a quantum channel through its minimum output Renyi entropies.

#include <map>
#include <optional>
#include <vector>

#include "qrd/cq_channel.hpp"
#include "qrd/divergences.hpp"
#include "qrd/operator_core.hpp"

namespace qrd {

struct HoeffdingResult {
  double value;
  AlphaPoint alpha_star;  // 1 when the value is 0, infinite at the endpoint
};

// Caches the alpha-indexed capacities so several rates can be evaluated
// against one channel without re-solving the inner problems.
class HoeffdingContext {
 public:
  HoeffdingContext(CqChannel W, Variant variant);

  HoeffdingResult at(double R);

  // C_{1/(1-delta)}(W), cached by delta; exposed for sweeps and tests.
  double capacity_at_delta(double delta);
  double capacity_at_infinity();
  double holevo_capacity() const { return holevo_cap_; }

 private:
  CqChannel W_;
  Variant variant_;
  double holevo_cap_;
  std::optional<double> cap_inf_;
  std::map<double, double> cache_;
  CapacityWarm warm_;
  bool warm_valid_ = false;
};

// One-shot converse Hoeffding capacity.  The variant must admit every
// alpha > 1, so the petz family (valid only up to alpha = 2) is rejected
// with InvalidAlphaRange.
HoeffdingResult hoeffding_capacity(const CqChannel& W, double R, Variant variant);

struct ScResult {
  double value;
  AlphaPoint alpha_star;
  double certificate;  // value re-witnessed at alpha_star from a fresh capacity
};

// Strong converse exponent sc(R, W): the sandwiched Hoeffding capacity,
// together with the witnessing order as a finitely-evaluated lower-bound
// certificate.
ScResult sc_exponent(const CqChannel& W, double R);

struct ExponentSample {
  double rate;
  double value;
  AlphaPoint alpha_star;
};

struct ExponentCurve {
  Variant variant;
  std::vector<ExponentSample> samples;
};

// sc(R, W) sampled over rates, sharing one capacity cache.
ExponentCurve sc_exponent_curve(const CqChannel& W, const std::vector<double>& rates);

// Same supremum at a fixed input law, with the chi of the given form in
// place of the capacity.  The flat form-2 version is the comparison target
// for dueck_korner_F.
HoeffdingResult hoeffding_fixed_input(const CqChannel& W, const InputDistribution& P, double R,
                                      Variant variant, int form);

// G(P, delta, sigma, V) = D(V||W|P) + delta * (R - D(V||sigma|P)), the
// two-divergence objective behind the F-quantity.  Returns +infinity when a
// dummy output escapes the support of its true output or of sigma.
double g_objective(const InputDistribution& P, double delta, const DensityOperator& sigma,
                   const CqChannel& V, const CqChannel& W, double R);

struct GMinResult {
  double value;
  CqChannel v_star;
  bool converged;
};

// min over dummy channels V (each V(x) a state on the support of W(x)) of
// the G-objective.  Smooth, so a quasi-Newton descent over per-letter
// exponential charts suffices.
GMinResult g_min_over_v(const InputDistribution& P, double delta, const DensityOperator& sigma,
                        const CqChannel& W, double R);

struct DkResult {
  double value;
  CqChannel v_star;
  double probe;  // the V = W upper bound max(0, R - holevo(W, P))
  bool converged;
};

// Dueck-Korner quantity F(P, R, W) = min over V of
// D(V||W|P) + max(0, R - holevo(V, P)), with the hinge smoothed by a
// softplus of increasing sharpness and the final value taken exactly.
DkResult dueck_korner_F(const CqChannel& W, const InputDistribution& P, double R);

// Completely positive trace-preserving map given by Kraus operators.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus);

  int in_dim() const { return static_cast<int>(ks_.front().cols()); }
  int out_dim() const { return static_cast<int>(ks_.front().rows()); }
  const std::vector<Matrix>& kraus() const { return ks_; }
  Matrix apply(const Matrix& rho) const;

 private:
  std::vector<Matrix> ks_;
};

// Minimum output Renyi entropy over pure inputs, min over unit psi of
// H_alpha(Phi(psi)).  Valid for alpha in (1, infinity]; the infinite order
// uses -log of the largest output eigenvalue.
double min_output_alpha_entropy(const KrausChannel& Phi, AlphaPoint alpha);

struct KwResult {
  double lower;  // max(0, R - log d_out), valid for every channel
  double upper;  // exponent from the covariant capacity formula
  AlphaPoint alpha_star;
  std::optional<double> sc;  // set only when the caller asserts KW-class
};

// Exponent bounds for a quantum channel at rate R > 0 from the single-letter
// formula chi*_alpha = log d_out - Hmin_alpha.  That formula is exact for
// covariant channels; whether it gives the operational exponent additionally
// needs additivity of Hmin_alpha, which cannot be decided here, so `sc` is
// only reported when the caller asserts membership in that class.
KwResult kw_exponent(const KrausChannel& Phi, double R, const std::vector<double>& alpha_grid,
                     bool kw_class = false);

// The cq channel obtained by restricting Phi to a finite set of pure inputs.
CqChannel induced_cq_channel(const KrausChannel& Phi, const std::vector<CVector>& inputs);

}  // namespace qrd
