#pragma once
// Classical-quantum channels: a finite input alphabet, one density operator
// per letter.  This header covers the channel type itself, input
// distributions, and the order-alpha information quantities built from the
// divergence families: the two chi forms, the Sibson closed form, the
// divergence radius, and the Renyi capacity.
//
// Conventions shared by everything below:
//   - all values are in nats;
//   - "form 1" is the log-of-average quantity
//         (1/(alpha-1)) log sum_x P(x) exp(psi_alpha(W(x)||sigma)),
//     minimized over states sigma, and "form 2" is the average divergence
//         sum_x P(x) D_alpha(W(x)||sigma),
//     minimized over sigma; the two coincide at alpha = 1 (Holevo).

#include <string>
#include <vector>

#include "qrd/divergences.hpp"
#include "qrd/operator_core.hpp"

namespace qrd {

class CqChannel {
 public:
  // Labels name the input letters; they must be unique and nonempty.
  CqChannel(std::vector<std::string> labels, std::vector<DensityOperator> outputs);
  // Convenience constructor that labels inputs "x0", "x1", ...
  explicit CqChannel(std::vector<DensityOperator> outputs);

  int size() const { return static_cast<int>(outputs_.size()); }  // alphabet
  int dim() const { return outputs_.front().dim(); }              // output space
  const std::vector<std::string>& labels() const { return labels_; }
  const DensityOperator& output(int x) const { return outputs_.at(x); }
  int index_of(const std::string& label) const;  // throws UnknownLabel

 private:
  void validate() const;

  std::vector<std::string> labels_;
  std::vector<DensityOperator> outputs_;
};

class InputDistribution {
 public:
  // Weights must be nonnegative and sum to 1 within the trace tolerance.
  explicit InputDistribution(std::vector<double> weights);
  static InputDistribution uniform(int k);
  static InputDistribution point_mass(int k, int at);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int x) const { return weights_.at(x); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Average output state sum_x P(x) W(x).
DensityOperator output_state(const CqChannel& W, const InputDistribution& P);

// Classical-quantum joint state: block diagonal with blocks P(x) W(x), living
// on a space of dimension |alphabet| * dim.
struct LiftedState {
  DensityOperator joint;
  int classical_dim;
  int output_dim;
};
LiftedState lifted_state(const CqChannel& W, const InputDistribution& P);

// Holevo quantity H(W(P)) - sum_x P(x) H(W(x)).
double holevo_quantity(const CqChannel& W, const InputDistribution& P);

// The inner objective of chi_alpha at a fixed candidate sigma.  Exposed so
// tests can verify optimality of the returned minimizers against random
// competitors.  Returns +infinity when alpha > 1 and some supported output
// escapes the support of sigma.
ExtendedReal chi_objective(const CqChannel& W, const InputDistribution& P,
                           AlphaPoint alpha, Variant variant, int form,
                           const DensityOperator& sigma);

struct ChiResult {
  double value;
  DensityOperator sigma_star;
  double gap;         // spread between independent optimizer starts
  int iterations;     // iterations of the winning run
  bool converged;
};

// Order-alpha mutual-information-like quantity of form 1 or 2, minimized over
// the output state sigma.  Valid alpha ranges by variant: petz (0, 2],
// sandwiched [1/2, infinity], flat (0, infinity]; outside them the problem is
// not known to be jointly well behaved and InvalidAlphaRange is thrown.
// Throws NonConvergence when no optimizer start reaches its tolerance.
ChiResult chi_alpha(const CqChannel& W, const InputDistribution& P,
                    AlphaPoint alpha, Variant variant, int form);

// Closed-form minimizer of the petz form-1 objective (Sibson's identity):
// proportional to (sum_x P(x) W(x)^alpha)^(1/alpha).
DensityOperator sibson_minimizer(const CqChannel& W, const InputDistribution& P,
                                 double alpha);

struct RadiusResult {
  double value;       // certified from above: max_x D_alpha(W(x)||sigma_star)
  double lower;       // best Lagrangian lower bound seen, sup_P chi_{alpha,2}
  double gap;         // value - lower
  DensityOperator sigma_star;
  InputDistribution p_star;
  int iterations;
  bool converged;
};

// Divergence radius min over sigma of max_x D_alpha(W(x)||sigma), computed by
// alternating best responses with averaged input updates.  The reported value
// is always an upper certificate; the lower bound tracks how tight it is.
RadiusResult divergence_radius(const CqChannel& W, AlphaPoint alpha, Variant variant);

// Optional warm start for renyi_capacity, used when sweeping alpha: the
// previous optimal input weights and sigma chart parameters.
struct CapacityWarm {
  RVector p;
  RVector t;
};

struct CapacityResult {
  double value;
  InputDistribution p_star;
  ChiResult inner;    // chi at p_star
  bool converged;
};

// Renyi capacity sup_P chi_{alpha,1}(W, P).  Two-letter alphabets use a grid
// plus golden-section refinement; larger ones use conditional-gradient ascent
// with the envelope gradient of the inner minimization.
CapacityResult renyi_capacity(const CqChannel& W, AlphaPoint alpha, Variant variant,
                              const CapacityWarm* warm = nullptr);

// n-fold product channel: inputs are words, outputs are tensor products.
// Word labels join the letter labels with '.'.
CqChannel tensor_power_channel(const CqChannel& W, int n);

// Product channel followed by the universal symmetric pinching on n copies.
CqChannel pinched_product_channel(const CqChannel& W, int n);

// n-fold product distribution aligned with tensor_power_channel word order.
InputDistribution product_distribution(const InputDistribution& P, int n);

}  // namespace qrd
