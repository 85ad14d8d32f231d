#include "qrd/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qrd/optim.hpp"
#include "qrd/random.hpp"
#include "qrd/state_param.hpp"

namespace qrd {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// delta = (alpha-1)/alpha grid shared by every Hoeffding-type supremum.
constexpr double DELTA_LO = 1e-3;
constexpr double DELTA_HI = 1.0 - 1e-3;
constexpr int DELTA_GRID = 64;
constexpr double DELTA_REFINE_TOL = 1e-6;

double alpha_of(double delta) { return 1.0 / (1.0 - delta); }

void check_rate(double R) {
  if (!std::isfinite(R) || R < 0.0) throw InputError("rate must be a nonnegative real");
}

void check_hoeffding_variant(Variant variant) {
  // The supremum runs over all alpha > 1, so the variant must be defined on
  // the whole ray; the petz family stops at alpha = 2.
  if (variant == Variant::petz)
    throw InvalidAlphaRange("hoeffding capacity: the petz family is only valid up to order 2");
}

// Scans the delta grid for chi(delta) supplied by `chi`, refines around the
// best grid point, compares with the explicit delta = 1 endpoint, and floors
// at zero.
HoeffdingResult delta_supremum(double R, const std::function<double(double)>& chi,
                               const std::function<double()>& chi_inf) {
  auto phi = [&](double delta) { return delta * (R - chi(delta)); };

  double best = -INF;
  int best_i = 0;
  for (int i = 0; i < DELTA_GRID; ++i) {
    double delta = DELTA_LO + (DELTA_HI - DELTA_LO) * i / (DELTA_GRID - 1);
    double v = phi(delta);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double step = (DELTA_HI - DELTA_LO) / (DELTA_GRID - 1);
  double lo = std::max(DELTA_LO, DELTA_LO + step * (best_i - 1));
  double hi = std::min(DELTA_HI, DELTA_LO + step * (best_i + 1));
  auto [delta_star, neg] = golden_section_min([&](double d) { return -phi(d); }, lo, hi,
                                              DELTA_REFINE_TOL, 80);
  double refined = -neg;
  if (best > refined) {
    // The golden probes need not revisit the grid maximizer itself.
    refined = best;
    delta_star = DELTA_LO + step * best_i;
  }

  double tail = R - chi_inf();
  if (tail > refined) {
    if (tail <= 0.0) return {0.0, AlphaPoint(1.0)};
    return {tail, AlphaPoint::inf()};
  }
  if (refined <= 0.0) return {0.0, AlphaPoint(1.0)};
  return {refined, AlphaPoint(alpha_of(delta_star))};
}

RVector to_rvector(const std::vector<double>& v) {
  return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Per-letter subspace coordinates for the dummy-channel optimizations: each
// active letter x gets the exponential chart of states on supp W(x).
struct VLetter {
  int x;
  double weight;
  Matrix basis;    // dim x m, orthonormal columns spanning supp W(x)
  Matrix w_sub;    // compression of W(x) to its support, a full-rank state
  Matrix log_w;    // log of w_sub
  int offset;      // first parameter index
  int m;           // support dimension
};

struct VChart {
  std::vector<VLetter> letters;
  int total = 0;
};

VChart make_vchart(const CqChannel& W, const InputDistribution& P) {
  if (P.size() != W.size())
    throw DimensionMismatch("input distribution size does not match the channel alphabet");
  VChart chart;
  for (int x = 0; x < W.size(); ++x) {
    if (P[x] <= 0.0) continue;
    VLetter l{x, P[x], support_basis(W.output(x).op()), Matrix(), Matrix(), chart.total, 0};
    l.m = static_cast<int>(l.basis.cols());
    l.w_sub = l.basis.adjoint() * W.output(x).mat() * l.basis;
    l.log_w = log_on_support(HermitianOperator(l.w_sub)).mat();
    chart.total += state_param_count(l.m);
    chart.letters.push_back(std::move(l));
  }
  return chart;
}

DensityOperator letter_state(const VLetter& l, const RVector& t) {
  if (l.m == 1) return DensityOperator(Matrix::Identity(1, 1));
  return state_from_params(t.segment(l.offset, state_param_count(l.m)), l.m);
}

CqChannel v_from_params(const VChart& chart, const CqChannel& W, const RVector& t) {
  std::vector<DensityOperator> outs;
  outs.reserve(W.size());
  std::size_t next = 0;
  for (int x = 0; x < W.size(); ++x) {
    if (next < chart.letters.size() && chart.letters[next].x == x) {
      const VLetter& l = chart.letters[next++];
      DensityOperator sub = letter_state(l, t);
      outs.emplace_back(Matrix(l.basis * sub.mat() * l.basis.adjoint()));
    } else {
      outs.push_back(W.output(x));
    }
  }
  return CqChannel(W.labels(), outs);
}

// Starting points shared by the V optimizations: the true channel itself and
// the average output compressed to each support.
std::vector<RVector> vchart_starts(const VChart& chart, const CqChannel& W,
                                   const InputDistribution& P) {
  DensityOperator avg = output_state(W, P);
  RVector at_w = RVector::Zero(chart.total);
  RVector at_avg = RVector::Zero(chart.total);
  for (const VLetter& l : chart.letters) {
    if (l.m == 1) continue;
    int n = state_param_count(l.m);
    at_w.segment(l.offset, n) = params_from_state(DensityOperator(l.w_sub));
    Matrix proj = l.basis.adjoint() * avg.mat() * l.basis;
    at_avg.segment(l.offset, n) =
        params_from_state(DensityOperator::normalized(HermitianOperator(proj)));
  }
  return {at_w, at_avg};
}

void check_strictly_positive(const DensityOperator& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.mat(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= sigma.dim() * config().support_cutoff)
    throw InputError("sigma must be strictly positive");
}

double entropy_of_eigenvalues(const RVector& eigs, AlphaPoint alpha) {
  if (alpha.infinite) return -std::log(eigs.maxCoeff());
  std::vector<double> terms;
  terms.reserve(eigs.size());
  for (int i = 0; i < eigs.size(); ++i)
    if (eigs[i] > 1e-18) terms.push_back(alpha.alpha * std::log(eigs[i]));
  return logsumexp(terms) / (1.0 - alpha.alpha);
}

// max(0, u) smoothed as log(1 + e^(beta u)) / beta, evaluated by the branch
// that never overflows.
double softplus_hinge(double u, double beta) {
  double bu = beta * u;
  if (bu > 40.0) return u;
  if (bu < -40.0) return 0.0;
  if (bu > 0.0) return u + std::log1p(std::exp(-bu)) / beta;
  return std::log1p(std::exp(bu)) / beta;
}

}  // namespace

HoeffdingContext::HoeffdingContext(CqChannel W, Variant variant)
    : W_(std::move(W)), variant_(variant) {
  check_hoeffding_variant(variant_);
  holevo_cap_ = renyi_capacity(W_, AlphaPoint(1.0), variant_).value;
}

double HoeffdingContext::capacity_at_delta(double delta) {
  auto it = cache_.find(delta);
  if (it != cache_.end()) return it->second;
  CapacityResult res =
      renyi_capacity(W_, AlphaPoint(alpha_of(delta)), variant_, warm_valid_ ? &warm_ : nullptr);
  warm_.p = to_rvector(res.p_star.weights());
  warm_.t = params_from_state(res.inner.sigma_star);
  warm_valid_ = true;
  cache_.emplace(delta, res.value);
  return res.value;
}

double HoeffdingContext::capacity_at_infinity() {
  if (!cap_inf_) cap_inf_ = renyi_capacity(W_, AlphaPoint::inf(), variant_).value;
  return *cap_inf_;
}

HoeffdingResult HoeffdingContext::at(double R) {
  check_rate(R);
  // Monotonicity of the capacity in alpha makes every term nonpositive at or
  // below the order-1 capacity.
  if (R <= holevo_cap_) return {0.0, AlphaPoint(1.0)};
  return delta_supremum(
      R, [&](double d) { return capacity_at_delta(d); },
      [&]() { return capacity_at_infinity(); });
}

HoeffdingResult hoeffding_capacity(const CqChannel& W, double R, Variant variant) {
  HoeffdingContext ctx(W, variant);
  return ctx.at(R);
}

ScResult sc_exponent(const CqChannel& W, double R) {
  HoeffdingContext ctx(W, Variant::sandwiched);
  HoeffdingResult h = ctx.at(R);
  double certificate = 0.0;
  if (h.value > 0.0) {
    // Re-witness the supremum at its own order: every single evaluation of
    // the objective is a valid lower bound on the exponent.
    if (h.alpha_star.infinite) {
      certificate = R - ctx.capacity_at_infinity();
    } else {
      double delta = (h.alpha_star.alpha - 1.0) / h.alpha_star.alpha;
      certificate = delta * (R - ctx.capacity_at_delta(delta));
    }
  }
  return {h.value, h.alpha_star, certificate};
}

ExponentCurve sc_exponent_curve(const CqChannel& W, const std::vector<double>& rates) {
  HoeffdingContext ctx(W, Variant::sandwiched);
  ExponentCurve curve{Variant::sandwiched, {}};
  curve.samples.reserve(rates.size());
  for (double R : rates) {
    HoeffdingResult h = ctx.at(R);
    curve.samples.push_back({R, h.value, h.alpha_star});
  }
  std::sort(curve.samples.begin(), curve.samples.end(),
            [](const ExponentSample& a, const ExponentSample& b) { return a.rate < b.rate; });
  return curve;
}

HoeffdingResult hoeffding_fixed_input(const CqChannel& W, const InputDistribution& P, double R,
                                      Variant variant, int form) {
  check_rate(R);
  check_hoeffding_variant(variant);
  double chi_one = chi_alpha(W, P, AlphaPoint(1.0), variant, form).value;
  if (R <= chi_one) return {0.0, AlphaPoint(1.0)};
  std::map<double, double> cache;
  auto chi_at = [&](double delta) {
    auto it = cache.find(delta);
    if (it != cache.end()) return it->second;
    double v = chi_alpha(W, P, AlphaPoint(alpha_of(delta)), variant, form).value;
    cache.emplace(delta, v);
    return v;
  };
  return delta_supremum(R, chi_at,
                        [&]() { return chi_alpha(W, P, AlphaPoint::inf(), variant, form).value; });
}

double g_objective(const InputDistribution& P, double delta, const DensityOperator& sigma,
                   const CqChannel& V, const CqChannel& W, double R) {
  if (P.size() != W.size() || V.size() != W.size())
    throw DimensionMismatch("g objective: alphabet sizes disagree");
  if (V.dim() != W.dim() || sigma.dim() != W.dim())
    throw DimensionMismatch("g objective: output dimensions disagree");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0, 1]");
  check_rate(R);
  check_strictly_positive(sigma);

  double acc = delta * R;
  for (int x = 0; x < W.size(); ++x) {
    if (P[x] <= 0.0) continue;
    ExtendedReal d_vw = relative_entropy(V.output(x).op(), W.output(x).op());
    if (!d_vw.is_finite()) return INF;
    ExtendedReal d_vs = relative_entropy(V.output(x).op(), sigma.op());
    acc += P[x] * (d_vw.value() - delta * d_vs.value());
  }
  return acc;
}

GMinResult g_min_over_v(const InputDistribution& P, double delta, const DensityOperator& sigma,
                        const CqChannel& W, double R) {
  if (sigma.dim() != W.dim())
    throw DimensionMismatch("g minimization: output dimensions disagree");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0, 1]");
  check_rate(R);
  check_strictly_positive(sigma);

  VChart chart = make_vchart(W, P);
  Matrix log_sigma = log_on_support(sigma.op()).mat();

  // The objective splits over letters:
  //   D(V(x)||W(x)) - delta D(V(x)||sigma)
  //     = -(1 - delta) H(V(x)) - Tr V(x) (log W(x) - delta log sigma),
  // so each letter is minimized on its own chart.  At delta = 1 the entropy
  // term vanishes and the minimum is the bottom eigenvalue of the linear
  // coefficient, attained at the corresponding eigenvector.
  double total = delta * R;
  bool all_converged = true;
  RVector t_star = RVector::Zero(chart.total);
  for (const VLetter& l : chart.letters) {
    Matrix coeff = l.log_w - delta * (l.basis.adjoint() * log_sigma * l.basis);
    if (delta >= 1.0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(coeff);
      total += l.weight * (-es.eigenvalues().maxCoeff());
      if (l.m > 1) {
        // Push the chart toward the maximizing eigenvector so v_star reports
        // a state near the true (boundary) minimizer.
        CVector v = es.eigenvectors().col(l.m - 1);
        Matrix near = 0.999 * v * v.adjoint() +
                      0.001 / l.m * Matrix::Identity(l.m, l.m);
        t_star.segment(l.offset, state_param_count(l.m)) =
            params_from_state(DensityOperator(near));
      }
      continue;
    }
    if (l.m == 1) continue;  // the only state contributes zero

    auto f = [&](const RVector& t) {
      DensityOperator s = state_from_params(t, l.m);
      double h = von_neumann_entropy(s.op());
      double lin = (s.mat() * coeff).trace().real();
      return -(1.0 - delta) * h - lin;
    };
    int n = state_param_count(l.m);
    double best = INF;
    RVector best_t = RVector::Zero(n);
    bool letter_converged = false;
    std::vector<RVector> starts = {params_from_state(DensityOperator(l.w_sub)),
                                   RVector::Zero(n)};
    for (const RVector& s0 : starts) {
      OptimResult r = minimize_bfgs(f, s0);
      if (r.value < best) {
        best = r.value;
        best_t = r.x;
        letter_converged = r.converged;
      }
    }
    all_converged = all_converged && letter_converged;
    total += l.weight * best;
    t_star.segment(l.offset, n) = best_t;
  }
  return {total, v_from_params(chart, W, t_star), all_converged};
}

DkResult dueck_korner_F(const CqChannel& W, const InputDistribution& P, double R) {
  check_rate(R);
  VChart chart = make_vchart(W, P);

  double probe = std::max(0.0, R - holevo_quantity(W, P));

  // Pieces of the exact objective, given the letter states on their charts:
  // the conditional divergence is exact on the subspaces, the mutual
  // information needs the full-space mixture.
  auto evaluate = [&](const RVector& t, double beta, bool exact) {
    double cond_div = 0.0;
    double avg_entropy = 0.0;
    Matrix mix = Matrix::Zero(W.dim(), W.dim());
    for (const VLetter& l : chart.letters) {
      DensityOperator s = letter_state(l, t);
      double h = von_neumann_entropy(s.op());
      cond_div += l.weight * (-h - (s.mat() * l.log_w).trace().real());
      avg_entropy += l.weight * h;
      mix += l.weight * (l.basis * s.mat() * l.basis.adjoint());
    }
    double chi = von_neumann_entropy(HermitianOperator(mix)) - avg_entropy;
    double u = R - chi;
    return cond_div + (exact ? std::max(0.0, u) : softplus_hinge(u, beta));
  };

  if (chart.total == 0) {
    // Every active output is pure, so V = W is the only dummy channel.
    return {evaluate(RVector(0), 0.0, true), v_from_params(chart, W, RVector(0)), probe, true};
  }

  double best = INF;
  RVector best_t;
  bool converged = false;
  for (const RVector& s0 : vchart_starts(chart, W, P)) {
    RVector t = s0;
    bool chain_ok = false;
    // Sharpen the hinge gradually; each stage starts from the last.
    for (double beta : {8.0, 64.0, 512.0, 4096.0}) {
      OptimResult r = minimize_bfgs([&](const RVector& u) { return evaluate(u, beta, false); }, t);
      t = r.x;
      chain_ok = r.converged;
    }
    double exact = evaluate(t, 0.0, true);
    if (exact < best) {
      best = exact;
      best_t = t;
      converged = chain_ok;
    }
  }
  if (!converged)
    throw NonConvergence("dueck-korner minimization: no descent chain reached tolerance");
  if (probe < best) {
    // The unoptimized V = W value is itself feasible; never report worse.
    return {probe, v_from_params(chart, W, vchart_starts(chart, W, P)[0]), probe, true};
  }
  return {best, v_from_params(chart, W, best_t), probe, converged};
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus) : ks_(std::move(kraus)) {
  if (ks_.empty()) throw InputError("kraus channel: at least one operator required");
  const Eigen::Index rows = ks_.front().rows();
  const Eigen::Index cols = ks_.front().cols();
  if (rows == 0 || cols == 0) throw InputError("kraus channel: operators must be nonempty");
  Matrix acc = Matrix::Zero(cols, cols);
  for (const Matrix& k : ks_) {
    if (k.rows() != rows || k.cols() != cols)
      throw DimensionMismatch("kraus channel: operators must share one shape");
    acc += k.adjoint() * k;
  }
  if ((acc - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff() > 1e-9)
    throw InputError("kraus channel: the operators do not sum to a trace-preserving map");
}

Matrix KrausChannel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(out_dim(), out_dim());
  for (const Matrix& k : ks_) out += k * rho * k.adjoint();
  return out;
}

double min_output_alpha_entropy(const KrausChannel& Phi, AlphaPoint alpha) {
  if (!alpha.infinite && alpha.alpha <= 1.0)
    throw InvalidAlphaRange("minimum output entropy: order must exceed 1");
  const int din = Phi.in_dim();

  auto f = [&](const RVector& x) {
    CVector v(din);
    for (int i = 0; i < din; ++i) v[i] = Complex(x[2 * i], x[2 * i + 1]);
    double n2 = v.squaredNorm();
    if (n2 < 1e-12) return INF;
    Matrix rho = Matrix::Zero(Phi.out_dim(), Phi.out_dim());
    for (const Matrix& k : Phi.kraus()) {
      CVector w = k * v;
      rho += w * w.adjoint();
    }
    rho /= n2;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return entropy_of_eigenvalues(es.eigenvalues().cwiseMax(0.0), alpha);
  };

  std::vector<RVector> starts;
  for (int i = 0; i < din; ++i) {
    RVector x = RVector::Zero(2 * din);
    x[2 * i] = 1.0;
    starts.push_back(x);
  }
  Rng rng(11);
  for (int r = 0; r < 3; ++r) {
    RVector x(2 * din);
    for (int i = 0; i < 2 * din; ++i) x[i] = rng.gaussian();
    starts.push_back(x);
  }

  double best = INF;
  bool any_converged = false;
  for (const RVector& s0 : starts) {
    // The infinite order takes a max over eigenvalues, which is only
    // piecewise smooth; the simplex method handles the creases.
    OptimResult r = alpha.infinite ? minimize_nelder_mead(f, s0) : minimize_bfgs(f, s0);
    best = std::min(best, r.value);
    any_converged = any_converged || r.converged;
  }
  if (!any_converged)
    throw NonConvergence("minimum output entropy: no optimizer start reached tolerance");
  return std::max(0.0, best);
}

KwResult kw_exponent(const KrausChannel& Phi, double R, const std::vector<double>& alpha_grid,
                     bool kw_class) {
  if (!std::isfinite(R) || R <= 0.0) throw InputError("rate must be positive");
  const double log_d = std::log(static_cast<double>(Phi.out_dim()));

  double upper = 0.0;
  AlphaPoint alpha_star(1.0);
  for (double a : alpha_grid) {
    if (a <= 1.0)
      throw InvalidAlphaRange("kw exponent: every grid order must exceed 1");
    double h = min_output_alpha_entropy(Phi, AlphaPoint(a));
    double term = (a - 1.0) / a * (R - (log_d - h));
    if (term > upper) {
      upper = term;
      alpha_star = AlphaPoint(a);
    }
  }
  // Explicit endpoint, independent of the caller's grid.
  double h_inf = min_output_alpha_entropy(Phi, AlphaPoint::inf());
  double tail = R - (log_d - h_inf);
  if (tail > upper) {
    upper = tail;
    alpha_star = AlphaPoint::inf();
  }

  KwResult res{std::max(0.0, R - log_d), upper, alpha_star, std::nullopt};
  if (kw_class) res.sc = upper;
  return res;
}

CqChannel induced_cq_channel(const KrausChannel& Phi, const std::vector<CVector>& inputs) {
  if (inputs.empty()) throw InputError("induced channel: at least one input state required");
  std::vector<DensityOperator> outs;
  outs.reserve(inputs.size());
  for (const CVector& v : inputs) {
    if (v.size() != Phi.in_dim())
      throw DimensionMismatch("induced channel: input vector dimension mismatch");
    double n2 = v.squaredNorm();
    if (n2 <= 0.0) throw InputError("induced channel: input vectors must be nonzero");
    outs.emplace_back(Matrix(Phi.apply(v * v.adjoint() / n2)));
  }
  return CqChannel(outs);
}

}  // namespace qrd
