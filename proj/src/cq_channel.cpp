#include "qrd/cq_channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qrd/config.hpp"
#include "qrd/errors.hpp"
#include "qrd/optim.hpp"
#include "qrd/schur_weyl.hpp"
#include "qrd/state_param.hpp"

namespace qrd {
namespace {

constexpr double ALPHA_ONE_WINDOW = 1e-6;
constexpr double INF = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// per-input spectral data, fixed across the sigma optimization

struct XData {
  double w = 0.0;      // P(x)
  double logw = -INF;
  RVector log_eigs;    // log of the positive eigenvalues of W(x)
  Matrix vecs;         // matching eigenvectors, dim x rank
  Matrix sqrt_rho;     // W(x)^(1/2)
};

struct Prepared {
  int dim = 0;
  std::vector<XData> xs;
};

Prepared prepare(const CqChannel& W, const InputDistribution& P) {
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }
  Prepared prep;
  prep.dim = W.dim();
  prep.xs.resize(W.size());
  for (int x = 0; x < W.size(); ++x) {
    XData& d = prep.xs[x];
    d.w = P[x];
    d.logw = d.w > 0.0 ? std::log(d.w) : -INF;
    Eigen::SelfAdjointEigenSolver<Matrix> es(W.output(x).mat());
    if (es.info() != Eigen::Success) throw Error("cq channel: eigensolver failed");
    const double cutoff = config().support_cutoff * std::max(1.0, es.eigenvalues().maxCoeff());
    int rank = 0;
    for (int i = 0; i < prep.dim; ++i)
      if (es.eigenvalues()[i] > cutoff) ++rank;
    d.log_eigs.resize(rank);
    d.vecs.resize(prep.dim, rank);
    d.sqrt_rho = Matrix::Zero(prep.dim, prep.dim);
    int k = 0;
    for (int i = 0; i < prep.dim; ++i) {
      const double lam = es.eigenvalues()[i];
      if (lam <= cutoff) continue;
      d.log_eigs[k] = std::log(lam);
      d.vecs.col(k) = es.eigenvectors().col(i);
      d.sqrt_rho += std::sqrt(lam) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++k;
    }
  }
  return prep;
}

// Full-rank sigma in eigenform, with log eigenvalues normalized to a state.
struct SigmaEig {
  RVector logs;
  Matrix vecs;
};

SigmaEig sigma_from_params(const RVector& t, int d) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(traceless_hermitian(t, d));
  if (es.info() != Eigen::Success) throw Error("sigma chart: eigensolver failed");
  const RVector& eta = es.eigenvalues();
  std::vector<double> terms(eta.data(), eta.data() + d);
  const double log_z = logsumexp(terms);
  SigmaEig s;
  s.logs = eta.array() - log_z;
  s.vecs = es.eigenvectors();
  return s;
}

// psi_alpha(W(x) || sigma) for full-rank sigma, in the log domain.  The
// support conditions are automatic here, so every branch is finite.
double psi_x(const XData& x, const SigmaEig& s, double alpha, Variant variant) {
  const int m = static_cast<int>(x.log_eigs.size());
  const int d = static_cast<int>(s.logs.size());
  std::vector<double> terms;
  switch (variant) {
    case Variant::petz: {
      const Matrix O = x.vecs.adjoint() * s.vecs;  // m x d overlap table
      terms.reserve(static_cast<size_t>(m) * d);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < d; ++j) {
          const double w = std::norm(O(i, j));
          if (w < 1e-300) continue;
          terms.push_back(alpha * x.log_eigs[i] + (1.0 - alpha) * s.logs[j] + std::log(w));
        }
      }
      break;
    }
    case Variant::sandwiched: {
      const double e = (1.0 - alpha) / alpha;
      Matrix spow = Matrix::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        // clip the exponent so a line-search probe far outside the sane
        // region degrades gracefully instead of overflowing into NaN
        const double p = std::min(e * s.logs[j], 690.0);
        spow += std::exp(p) * s.vecs.col(j) * s.vecs.col(j).adjoint();
      }
      const Matrix T = x.sqrt_rho * spow * x.sqrt_rho;
      Eigen::SelfAdjointEigenSolver<Matrix> es(T);
      terms.reserve(d);
      for (int k = 0; k < d; ++k) {
        const double t = es.eigenvalues()[k];
        if (t > 0.0) terms.push_back(alpha * std::log(t));
      }
      break;
    }
    case Variant::flat: {
      // supp W(x) meets supp sigma in all of supp W(x); project log sigma
      const Matrix C = x.vecs.adjoint() * s.vecs;  // m x d
      Matrix M = Matrix::Zero(m, m);
      for (int j = 0; j < d; ++j) M += s.logs[j] * C.col(j) * C.col(j).adjoint();
      M *= (1.0 - alpha);
      for (int i = 0; i < m; ++i) M(i, i) += alpha * x.log_eigs[i];
      Eigen::SelfAdjointEigenSolver<Matrix> es(M);
      terms.reserve(m);
      for (int i = 0; i < m; ++i) terms.push_back(es.eigenvalues()[i]);
      break;
    }
  }
  return logsumexp(terms);
}

double chi_from_psi(const Prepared& prep, const std::vector<double>& psi, double alpha,
                    int form) {
  if (form == 1) {
    std::vector<double> terms;
    terms.reserve(psi.size());
    for (size_t x = 0; x < psi.size(); ++x) {
      if (prep.xs[x].w > 0.0) terms.push_back(prep.xs[x].logw + psi[x]);
    }
    return logsumexp(terms) / (alpha - 1.0);
  }
  double acc = 0.0;
  for (size_t x = 0; x < psi.size(); ++x) {
    if (prep.xs[x].w > 0.0) acc += prep.xs[x].w * psi[x];
  }
  return acc / (alpha - 1.0);
}

// ---------------------------------------------------------------------------
// inner minimization over sigma at fixed P

struct InnerChi {
  double value = 0.0;
  RVector t;                 // chart parameters of the minimizer
  std::vector<double> psi;   // psi_alpha(W(x)||sigma*) for every x
  std::vector<double> div;   // per-input divergence at sigma*
  bool converged = false;
  int iterations = 0;
  double gap = 0.0;          // spread across optimizer starts
};

DensityOperator average_output(const Prepared& prep, const CqChannel& W) {
  Matrix avg = Matrix::Zero(prep.dim, prep.dim);
  for (int x = 0; x < W.size(); ++x) avg += prep.xs[x].w * W.output(x).mat();
  return DensityOperator(HermitianOperator(std::move(avg)));
}

InnerChi solve_chi_alpha_one(const Prepared& prep, const CqChannel& W) {
  InnerChi r;
  DensityOperator avg = average_output(prep, W);
  r.t = params_from_state(avg);
  r.psi.resize(W.size());
  r.div.resize(W.size());
  double holevo = 0.0;
  for (int x = 0; x < W.size(); ++x) {
    r.div[x] = relative_entropy(W.output(x).op(), avg.op()).value();
    r.psi[x] = r.div[x];  // at alpha = 1 the gradient reduces to these
    if (prep.xs[x].w > 0.0) holevo += prep.xs[x].w * r.div[x];
  }
  r.value = holevo;
  r.converged = true;
  return r;
}

InnerChi solve_chi(const Prepared& prep, const CqChannel& W, double alpha, Variant variant,
                   int form, const RVector* warm, bool multistart) {
  if (std::abs(alpha - 1.0) < ALPHA_ONE_WINDOW) return solve_chi_alpha_one(prep, W);

  const int d = prep.dim;
  auto objective = [&](const RVector& t) {
    const SigmaEig s = sigma_from_params(t, d);
    std::vector<double> psi(prep.xs.size());
    for (size_t x = 0; x < prep.xs.size(); ++x) {
      if (form == 2 && prep.xs[x].w == 0.0) continue;  // unused either way
      psi[x] = psi_x(prep.xs[x], s, alpha, variant);
    }
    return chi_from_psi(prep, psi, alpha, form);
  };

  std::vector<RVector> starts;
  if (warm != nullptr) starts.push_back(*warm);
  starts.push_back(params_from_state(average_output(prep, W)));
  if (multistart) starts.push_back(RVector::Zero(state_param_count(d)));

  InnerChi best;
  bool have = false;
  double worst = -INF;
  for (const RVector& s0 : starts) {
    OptimResult run = minimize_bfgs(objective, s0);
    worst = std::max(worst, run.value);
    if (!have || run.value < best.value) {
      have = true;
      best.value = run.value;
      best.t = run.x;
      best.converged = run.converged;
      best.iterations = run.iterations;
    }
  }
  best.gap = worst - best.value;

  const SigmaEig s = sigma_from_params(best.t, d);
  best.psi.resize(prep.xs.size());
  best.div.resize(prep.xs.size());
  for (size_t x = 0; x < prep.xs.size(); ++x) {
    best.psi[x] = psi_x(prep.xs[x], s, alpha, variant);
    best.div[x] = best.psi[x] / (alpha - 1.0);
  }
  return best;
}

// ---------------------------------------------------------------------------
// alpha range policy shared by the channel quantities

void check_alpha_range(AlphaPoint alpha, Variant variant, const char* who) {
  const bool inf_point = alpha.infinite;
  const double a = alpha.alpha;
  switch (variant) {
    case Variant::petz:
      if (inf_point || a <= 0.0 || a > 2.0) {
        throw InvalidAlphaRange(std::string(who) + ": petz channel quantities need alpha in (0, 2]");
      }
      return;
    case Variant::sandwiched:
      if (!inf_point && a < 0.5) {
        throw InvalidAlphaRange(std::string(who) +
                                ": sandwiched channel quantities need alpha >= 1/2");
      }
      return;
    case Variant::flat:
      if (!inf_point && a <= 0.0) {
        throw InvalidAlphaRange(std::string(who) + ": flat channel quantities need alpha > 0");
      }
      return;
  }
}

void check_form(int form) {
  if (form != 1 && form != 2) throw InputError("chi form must be 1 or 2");
}

// ---------------------------------------------------------------------------
// maximization over the input simplex

struct PMax {
  RVector p;
  double value = -INF;
  RVector t;  // sigma chart parameters at the best P
};

InputDistribution to_distribution(const RVector& p) {
  std::vector<double> w(p.data(), p.data() + p.size());
  double s = 0.0;
  for (double& v : w) {
    v = std::max(v, 0.0);
    s += v;
  }
  for (double& v : w) v /= s;
  return InputDistribution(std::move(w));
}

// Envelope gradient of chi in P at the inner minimizer: for form 1 this is
// exp(psi_x - L)/(alpha-1) with L the log-average, for form 2 and for the
// alpha = 1 limit it is the per-input divergence itself.
RVector envelope_gradient(const Prepared& prep, const InnerChi& inner, double alpha, int form) {
  const int k = static_cast<int>(prep.xs.size());
  RVector g(k);
  if (std::abs(alpha - 1.0) < ALPHA_ONE_WINDOW || form == 2) {
    for (int x = 0; x < k; ++x) g[x] = inner.div[x];
    return g;
  }
  std::vector<double> terms;
  for (int x = 0; x < k; ++x) {
    if (prep.xs[x].w > 0.0) terms.push_back(prep.xs[x].logw + inner.psi[x]);
  }
  const double L = logsumexp(terms);
  for (int x = 0; x < k; ++x) g[x] = std::exp(inner.psi[x] - L) / (alpha - 1.0);
  return g;
}

PMax maximize_chi_over_p(const CqChannel& W, double alpha, Variant variant, int form,
                         const CapacityWarm* warm) {
  const int k = W.size();
  PMax best;

  // Sweep evaluations run the optimizer warm-started from the neighboring
  // point plus the average-output start.  They can still terminate early, and
  // an overestimated inner minimum would silently steal the outer argmax, so
  // every candidate that matters is re-solved at full quality below.
  std::vector<std::pair<double, RVector>> candidates;
  auto eval = [&](const RVector& p, RVector* warm_t) {
    Prepared prep = prepare(W, to_distribution(p));
    const RVector* wt = (warm_t != nullptr && warm_t->size() > 0) ? warm_t : nullptr;
    InnerChi inner = solve_chi(prep, W, alpha, variant, form, wt, /*multistart=*/false);
    if (warm_t != nullptr) *warm_t = inner.t;
    candidates.emplace_back(inner.value, p);
    return inner;
  };
  auto resolve_top = [&](int count) {
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<RVector> picked;
    for (const auto& [v, p] : candidates) {
      bool dup = false;
      for (const RVector& q : picked) {
        if ((p - q).template lpNorm<Eigen::Infinity>() < 1e-6) dup = true;
      }
      if (dup) continue;
      picked.push_back(p);
      if (static_cast<int>(picked.size()) >= count) break;
    }
    best.value = -INF;
    for (const RVector& p : picked) {
      Prepared prep = prepare(W, to_distribution(p));
      InnerChi full = solve_chi(prep, W, alpha, variant, form, nullptr, /*multistart=*/true);
      if (full.value > best.value) {
        best.value = full.value;
        best.p = p;
        best.t = full.t;
      }
    }
  };

  if (k == 1) {
    best.p = RVector::Ones(1);
    RVector t0;
    best.value = eval(best.p, &t0).value;
    best.t = t0;
    return best;
  }

  if (k == 2) {
    // dense scan plus golden refinement; the warm chart parameters chain
    // from one grid point to the next
    RVector warm_t;
    if (warm != nullptr) warm_t = warm->t;
    const int n_grid = 64;
    double sweep_best = -INF;
    int best_i = 0;
    for (int i = 0; i <= n_grid; ++i) {
      const double p = static_cast<double>(i) / n_grid;
      RVector pv(2);
      pv << p, 1.0 - p;
      const double v = eval(pv, &warm_t).value;
      if (v > sweep_best) {
        sweep_best = v;
        best_i = i;
      }
    }
    const double lo = std::max(0.0, (best_i - 1.0) / n_grid);
    const double hi = std::min(1.0, (best_i + 1.0) / n_grid);
    auto line = [&](double p) {
      RVector pv(2);
      pv << p, 1.0 - p;
      return -eval(pv, &warm_t).value;
    };
    golden_section_min(line, lo, hi, 1e-9);
    resolve_top(3);
    return best;
  }

  // k >= 3: conditional gradient from the best coarse start
  RVector warm_t;
  std::vector<RVector> seeds;
  if (warm != nullptr && warm->p.size() == k) {
    seeds.push_back(warm->p);
    warm_t = warm->t;
  }
  seeds.push_back(RVector::Constant(k, 1.0 / k));
  if (k == 3) {
    const int steps = 16;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps - i; ++j) {
        RVector pv(3);
        pv << static_cast<double>(i) / steps, static_cast<double>(j) / steps,
            static_cast<double>(steps - i - j) / steps;
        seeds.push_back(pv);
      }
    }
  }
  double sweep_best = -INF;
  RVector p;
  for (const RVector& s : seeds) {
    const double v = eval(s, &warm_t).value;
    if (v > sweep_best) {
      sweep_best = v;
      p = s;
    }
  }
  const int max_fw = 80;
  for (int it = 0; it < max_fw; ++it) {
    InnerChi inner = eval(p, &warm_t);
    sweep_best = std::max(sweep_best, inner.value);
    const RVector g = envelope_gradient(prepare(W, to_distribution(p)), inner, alpha, form);
    int s = 0;
    for (int x = 1; x < k; ++x)
      if (g[x] > g[s]) s = x;
    const double fw_gap = g[s] - p.dot(g);
    if (!std::isfinite(fw_gap)) {  // a letter outside the current support
      p = 0.5 * p;
      p[s] += 0.5;
      continue;
    }
    if (fw_gap < 1e-7 * std::max(1.0, std::abs(inner.value))) break;
    const double gamma = 2.0 / (it + 2.0);
    p *= (1.0 - gamma);
    p[s] += gamma;
  }
  resolve_top(3);
  return best;
}

// ---------------------------------------------------------------------------
// alpha = infinity machinery

double d_inf_value(const CqChannel& W, int x, const DensityOperator& sigma, Variant variant) {
  return d_alpha(W.output(x).op(), sigma.op(), AlphaPoint::inf(), variant).value();
}

InnerChi solve_chi_inf_form2(const CqChannel& W, const InputDistribution& P, Variant variant) {
  const int d = W.dim();
  auto objective = [&](const RVector& t) {
    DensityOperator sigma = state_from_params(t, d);
    double acc = 0.0;
    for (int x = 0; x < W.size(); ++x) {
      if (P[x] > 0.0) acc += P[x] * d_inf_value(W, x, sigma, variant);
    }
    return acc;
  };
  Prepared prep = prepare(W, P);
  std::vector<RVector> starts = {params_from_state(average_output(prep, W)),
                                 RVector::Zero(state_param_count(d))};
  InnerChi best;
  bool have = false;
  double worst = -INF;
  for (const RVector& s0 : starts) {
    // max-eigenvalue objectives have kinks, so use the simplex method
    OptimResult run = minimize_nelder_mead(objective, s0);
    worst = std::max(worst, run.value);
    if (!have || run.value < best.value) {
      have = true;
      best.value = run.value;
      best.t = run.x;
      best.converged = run.converged;
      best.iterations = run.iterations;
    }
  }
  best.gap = worst - best.value;
  DensityOperator sigma = state_from_params(best.t, d);
  best.psi.assign(W.size(), 0.0);
  best.div.resize(W.size());
  for (int x = 0; x < W.size(); ++x) best.div[x] = d_inf_value(W, x, sigma, variant);
  return best;
}

// Hermitian chart with trace, for the smallest-dominating-operator program.
Matrix hermitian_from_params(const RVector& t, int d) {
  Matrix H = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) H(i, i) = t[i];
  int k = d;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      H(i, j) = Complex(t[k], t[k + 1]);
      H(j, i) = Complex(t[k], -t[k + 1]);
      k += 2;
    }
  }
  return H;
}

RVector params_from_hermitian(const Matrix& H) {
  const int d = static_cast<int>(H.rows());
  RVector t(d * d);
  for (int i = 0; i < d; ++i) t[i] = H(i, i).real();
  int k = d;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      t[k] = H(i, j).real();
      t[k + 1] = H(i, j).imag();
      k += 2;
    }
  }
  return t;
}

double min_eig(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double neg_part_sq(const Matrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam < 0.0) acc += lam * lam;
  }
  return acc;
}

// min Tr S subject to S >= W(x) for every x.  The log of the optimal trace
// is the max-divergence radius.  Quadratic penalty with increasing weight,
// then an exact feasibility fix (add the worst violation times identity)
// and an exact shave (subtract the common slack times identity).
struct TraceProgram {
  Matrix S;
  double log_trace = 0.0;
};

TraceProgram smallest_dominating(const CqChannel& W) {
  const int d = W.dim();
  Matrix S = Matrix::Zero(d, d);
  for (int x = 0; x < W.size(); ++x) S += W.output(x).mat();  // feasible start

  for (double mu : {1e2, 1e4, 1e6}) {
    auto objective = [&](const RVector& t) {
      const Matrix cand = hermitian_from_params(t, d);
      double pen = neg_part_sq(cand);
      for (int x = 0; x < W.size(); ++x) pen += neg_part_sq(cand - W.output(x).mat());
      return cand.trace().real() + mu * pen;
    };
    OptimResult run = minimize_bfgs(objective, params_from_hermitian(S));
    S = hermitian_from_params(run.x, d);

    double worst = 0.0;
    for (int x = 0; x < W.size(); ++x)
      worst = std::max(worst, -min_eig(S - W.output(x).mat()));
    worst = std::max(worst, -min_eig(S));
    if (worst > 0.0) S += worst * Matrix::Identity(d, d);
    double slack = INF;
    for (int x = 0; x < W.size(); ++x) slack = std::min(slack, min_eig(S - W.output(x).mat()));
    slack = std::min(slack, min_eig(S));
    if (slack > 0.0) S -= slack * Matrix::Identity(d, d);
  }
  TraceProgram out;
  out.log_trace = std::log(S.trace().real());
  out.S = std::move(S);
  return out;
}

InputDistribution active_uniform(const CqChannel& W, const DensityOperator& sigma,
                                 AlphaPoint alpha, Variant variant) {
  std::vector<double> dv(W.size());
  double top = -INF;
  for (int x = 0; x < W.size(); ++x) {
    dv[x] = d_alpha(W.output(x).op(), sigma.op(), alpha, variant).value();
    top = std::max(top, dv[x]);
  }
  std::vector<double> w(W.size(), 0.0);
  int actives = 0;
  for (int x = 0; x < W.size(); ++x) {
    if (dv[x] >= top - 1e-6) {
      w[x] = 1.0;
      ++actives;
    }
  }
  for (double& v : w) v /= actives;
  return InputDistribution(std::move(w));
}

RadiusResult radius_infinite(const CqChannel& W, Variant variant) {
  const int d = W.dim();
  DensityOperator sigma_star = DensityOperator(Matrix::Identity(d, d) / d);
  double upper = INF;
  int iterations = 0;

  if (variant == Variant::sandwiched) {
    TraceProgram prog = smallest_dominating(W);
    upper = prog.log_trace;
    sigma_star = DensityOperator::normalized(HermitianOperator(prog.S));
  } else {
    auto objective = [&](const RVector& t) {
      DensityOperator sigma = state_from_params(t, d);
      double top = -INF;
      for (int x = 0; x < W.size(); ++x) top = std::max(top, d_inf_value(W, x, sigma, variant));
      return top;
    };
    Prepared prep = prepare(W, InputDistribution::uniform(W.size()));
    std::vector<RVector> starts = {params_from_state(average_output(prep, W)),
                                   RVector::Zero(state_param_count(d))};
    bool have = false;
    RVector best_t;
    for (const RVector& s0 : starts) {
      OptimResult run = minimize_nelder_mead(objective, s0);
      iterations += run.iterations;
      if (!have || run.value < upper) {
        have = true;
        upper = run.value;
        best_t = run.x;
      }
    }
    sigma_star = state_from_params(best_t, d);
  }

  InputDistribution p_hat = active_uniform(W, sigma_star, AlphaPoint::inf(), variant);
  InnerChi lower_run = solve_chi_inf_form2(W, p_hat, variant);
  const double lower = lower_run.value;
  const double gap = upper - lower;
  return RadiusResult{upper, lower, gap, sigma_star, p_hat,
                      iterations + lower_run.iterations,
                      gap <= std::max(config().minimax_gap, 1e-4)};
}

}  // namespace

// ---------------------------------------------------------------------------
// channel and distribution types

CqChannel::CqChannel(std::vector<std::string> labels, std::vector<DensityOperator> outputs)
    : labels_(std::move(labels)), outputs_(std::move(outputs)) {
  validate();
}

CqChannel::CqChannel(std::vector<DensityOperator> outputs) : outputs_(std::move(outputs)) {
  for (size_t i = 0; i < outputs_.size(); ++i) labels_.push_back("x" + std::to_string(i));
  validate();
}

void CqChannel::validate() const {
  if (outputs_.empty()) throw InputError("cq channel needs at least one input letter");
  if (labels_.size() != outputs_.size()) {
    throw InputError("cq channel: one label per output required");
  }
  for (const DensityOperator& out : outputs_) {
    if (out.dim() != outputs_.front().dim()) {
      throw DimensionMismatch("cq channel outputs must share one dimension");
    }
  }
  std::set<std::string> seen;
  for (const std::string& l : labels_) {
    if (l.empty()) throw InputError("cq channel labels must be nonempty");
    if (!seen.insert(l).second) throw InputError("duplicate cq channel label: " + l);
  }
}

int CqChannel::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<int>(i);
  }
  throw UnknownLabel("no such input letter: " + label);
}

InputDistribution::InputDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("input distribution needs at least one weight");
  double sum = 0.0;
  for (double& w : weights_) {
    if (w < -1e-12) throw InputError("input distribution weights must be nonnegative");
    w = std::max(w, 0.0);
    sum += w;
  }
  if (std::abs(sum - 1.0) > config().trace) {
    throw InputError("input distribution must sum to 1");
  }
}

InputDistribution InputDistribution::uniform(int k) {
  if (k <= 0) throw InputError("input distribution needs at least one weight");
  return InputDistribution(std::vector<double>(k, 1.0 / k));
}

InputDistribution InputDistribution::point_mass(int k, int at) {
  if (k <= 0 || at < 0 || at >= k) throw InputError("point mass index out of range");
  std::vector<double> w(k, 0.0);
  w[at] = 1.0;
  return InputDistribution(std::move(w));
}

// ---------------------------------------------------------------------------
// states derived from a channel and an input law

DensityOperator output_state(const CqChannel& W, const InputDistribution& P) {
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }
  Matrix avg = Matrix::Zero(W.dim(), W.dim());
  for (int x = 0; x < W.size(); ++x) avg += P[x] * W.output(x).mat();
  return DensityOperator(HermitianOperator(std::move(avg)));
}

LiftedState lifted_state(const CqChannel& W, const InputDistribution& P) {
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }
  const int k = W.size();
  const int d = W.dim();
  Matrix joint = Matrix::Zero(k * d, k * d);
  for (int x = 0; x < k; ++x) {
    joint.block(x * d, x * d, d, d) = P[x] * W.output(x).mat();
  }
  return LiftedState{DensityOperator(HermitianOperator(std::move(joint))), k, d};
}

double holevo_quantity(const CqChannel& W, const InputDistribution& P) {
  DensityOperator avg = output_state(W, P);
  double h = von_neumann_entropy(avg.op());
  for (int x = 0; x < W.size(); ++x) {
    if (P[x] > 0.0) h -= P[x] * von_neumann_entropy(W.output(x).op());
  }
  return h;
}

// ---------------------------------------------------------------------------
// chi and friends

ExtendedReal chi_objective(const CqChannel& W, const InputDistribution& P, AlphaPoint alpha,
                           Variant variant, int form, const DensityOperator& sigma) {
  check_form(form);
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }
  if (alpha.infinite) {
    double top = -INF, acc = 0.0;
    for (int x = 0; x < W.size(); ++x) {
      if (P[x] <= 0.0) continue;
      const ExtendedReal dv = d_alpha(W.output(x).op(), sigma.op(), alpha, variant);
      if (dv.is_infinite()) return ExtendedReal::infinity();
      top = std::max(top, dv.value());
      acc += P[x] * dv.value();
    }
    return form == 1 ? top : acc;
  }
  if (std::abs(alpha.alpha - 1.0) < ALPHA_ONE_WINDOW) {
    double acc = 0.0;
    for (int x = 0; x < W.size(); ++x) {
      if (P[x] <= 0.0) continue;
      const ExtendedReal dv = relative_entropy(W.output(x).op(), sigma.op());
      if (dv.is_infinite()) return ExtendedReal::infinity();
      acc += P[x] * dv.value();
    }
    return acc;
  }
  if (form == 1) {
    std::vector<double> terms;
    for (int x = 0; x < W.size(); ++x) {
      if (P[x] <= 0.0) continue;
      const ExtendedReal psi = psi_alpha(W.output(x).op(), sigma.op(), alpha.alpha, variant);
      if (psi.is_infinite() && psi.value() > 0.0) return ExtendedReal::infinity();
      terms.push_back(std::log(P[x]) + psi.value());
    }
    return logsumexp(terms) / (alpha.alpha - 1.0);
  }
  double acc = 0.0;
  for (int x = 0; x < W.size(); ++x) {
    if (P[x] <= 0.0) continue;
    const ExtendedReal dv = d_alpha(W.output(x).op(), sigma.op(), alpha, variant);
    if (dv.is_infinite()) return ExtendedReal::infinity();
    acc += P[x] * dv.value();
  }
  return acc;
}

ChiResult chi_alpha(const CqChannel& W, const InputDistribution& P, AlphaPoint alpha,
                    Variant variant, int form) {
  check_form(form);
  check_alpha_range(alpha, variant, "chi_alpha");
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }

  if (alpha.infinite) {
    if (form == 1) {
      // on the lifted pair the classical weights cancel blockwise, so the
      // order-infinity form 1 is the radius over the supported letters
      std::vector<std::string> labels;
      std::vector<DensityOperator> outs;
      for (int x = 0; x < W.size(); ++x) {
        if (P[x] > 0.0) {
          labels.push_back(W.labels()[x]);
          outs.push_back(W.output(x));
        }
      }
      CqChannel sub(std::move(labels), std::move(outs));
      RadiusResult rr = divergence_radius(sub, alpha, variant);
      return ChiResult{rr.value, rr.sigma_star, rr.gap, rr.iterations, rr.converged};
    }
    InnerChi inner = solve_chi_inf_form2(W, P, variant);
    if (!inner.converged) {
      throw NonConvergence("chi_alpha: simplex search stalled above tolerance");
    }
    return ChiResult{inner.value, state_from_params(inner.t, W.dim()), inner.gap,
                     inner.iterations, inner.converged};
  }

  Prepared prep = prepare(W, P);
  InnerChi inner = solve_chi(prep, W, alpha.alpha, variant, form, nullptr, /*multistart=*/true);
  if (!inner.converged) {
    throw NonConvergence("chi_alpha: no optimizer start reached tolerance");
  }
  return ChiResult{inner.value, state_from_params(inner.t, W.dim()), inner.gap,
                   inner.iterations, inner.converged};
}

DensityOperator sibson_minimizer(const CqChannel& W, const InputDistribution& P, double alpha) {
  if (P.size() != W.size()) {
    throw DimensionMismatch("input distribution and channel alphabet disagree");
  }
  if (alpha <= 0.0) throw InvalidAlphaRange("sibson_minimizer needs alpha > 0");
  if (std::abs(alpha - 1.0) < ALPHA_ONE_WINDOW) return output_state(W, P);
  Matrix A = Matrix::Zero(W.dim(), W.dim());
  for (int x = 0; x < W.size(); ++x) {
    if (P[x] <= 0.0) continue;
    A += P[x] * power_on_support(W.output(x).op(), alpha).mat();
  }
  HermitianOperator root = power_on_support(HermitianOperator(std::move(A)), 1.0 / alpha);
  return DensityOperator::normalized(root);
}

RadiusResult divergence_radius(const CqChannel& W, AlphaPoint alpha, Variant variant) {
  check_alpha_range(alpha, variant, "divergence_radius");

  if (W.size() == 1) {
    return RadiusResult{0.0, 0.0, 0.0, W.output(0), InputDistribution::point_mass(1, 0), 0, true};
  }
  if (alpha.infinite) return radius_infinite(W, variant);

  // warm start the saddle search at the best fixed-P lower bound
  PMax pm = maximize_chi_over_p(W, alpha.alpha, variant, /*form=*/2, nullptr);
  RVector p = pm.p;
  RVector warm_t = pm.t;

  double best_low = -INF;
  double best_up = INF;
  DensityOperator sigma_best = W.output(0);
  InputDistribution p_best = to_distribution(p);
  int iterations = 0;
  bool converged = false;

  const int max_rounds = 300;
  for (int k = 0; k < max_rounds; ++k) {
    InputDistribution Pk = to_distribution(p);
    Prepared prep = prepare(W, Pk);
    InnerChi inner = solve_chi(prep, W, alpha.alpha, variant, /*form=*/2,
                               warm_t.size() > 0 ? &warm_t : nullptr, /*multistart=*/false);
    warm_t = inner.t;
    iterations += 1;
    if (inner.converged) best_low = std::max(best_low, inner.value);

    DensityOperator sigma_k = state_from_params(inner.t, W.dim());
    double up = -INF;
    int x_star = 0;
    for (int x = 0; x < W.size(); ++x) {
      if (inner.div[x] > up) {
        up = inner.div[x];
        x_star = x;
      }
    }
    if (up < best_up) {
      best_up = up;
      sigma_best = sigma_k;
      p_best = Pk;
    }
    if (best_up - best_low <= config().minimax_gap) {
      converged = true;
      break;
    }
    const double gamma = 1.0 / (k + 2.0);
    p *= (1.0 - gamma);
    p[x_star] += gamma;
  }
  if (!converged) {
    throw NonConvergence("divergence_radius: saddle gap above tolerance after max rounds");
  }
  return RadiusResult{best_up,   best_low, best_up - best_low, sigma_best,
                      p_best,    iterations, converged};
}

CapacityResult renyi_capacity(const CqChannel& W, AlphaPoint alpha, Variant variant,
                              const CapacityWarm* warm) {
  check_alpha_range(alpha, variant, "renyi_capacity");

  if (alpha.infinite) {
    RadiusResult rr = divergence_radius(W, alpha, variant);
    ChiResult inner{rr.value, rr.sigma_star, rr.gap, rr.iterations, rr.converged};
    return CapacityResult{rr.value, rr.p_star, inner, rr.converged};
  }

  PMax pm = maximize_chi_over_p(W, alpha.alpha, variant, /*form=*/1, warm);
  InputDistribution p_star = to_distribution(pm.p);
  Prepared prep = prepare(W, p_star);
  InnerChi final_run =
      solve_chi(prep, W, alpha.alpha, variant, /*form=*/1, pm.t.size() > 0 ? &pm.t : nullptr,
                /*multistart=*/true);
  ChiResult inner{final_run.value, state_from_params(final_run.t, W.dim()), final_run.gap,
                  final_run.iterations, final_run.converged};
  return CapacityResult{final_run.value, p_star, inner, final_run.converged};
}

// ---------------------------------------------------------------------------
// product constructions

CqChannel tensor_power_channel(const CqChannel& W, int n) {
  if (n < 1) throw InputError("tensor_power_channel needs n >= 1");
  const int k = W.size();
  const int d = W.dim();
  double dim_total = std::pow(static_cast<double>(d), n);
  double words = std::pow(static_cast<double>(k), n);
  if (dim_total > config().dim_cap || words * dim_total > config().dim_cap * 64.0) {
    throw DimensionCap("tensor_power_channel exceeds the dimension cap");
  }
  std::vector<std::string> labels;
  std::vector<DensityOperator> outs;
  const int total = static_cast<int>(words);
  for (int idx = 0; idx < total; ++idx) {
    // most significant letter first, matching the tensor factor order
    std::vector<int> word(n);
    int rem = idx;
    for (int pos = n - 1; pos >= 0; --pos) {
      word[pos] = rem % k;
      rem /= k;
    }
    std::string label = W.labels()[word[0]];
    Matrix out = W.output(word[0]).mat();
    for (int pos = 1; pos < n; ++pos) {
      label += "." + W.labels()[word[pos]];
      out = kron(out, W.output(word[pos]).mat());
    }
    labels.push_back(std::move(label));
    outs.push_back(DensityOperator(HermitianOperator(std::move(out))));
  }
  return CqChannel(std::move(labels), std::move(outs));
}

CqChannel pinched_product_channel(const CqChannel& W, int n) {
  CqChannel Wn = tensor_power_channel(W, n);
  PinchingMap map = universal_pinching(n, W.dim());
  std::vector<DensityOperator> outs;
  for (int x = 0; x < Wn.size(); ++x) {
    outs.push_back(DensityOperator(pinch(map, Wn.output(x).op())));
  }
  return CqChannel(Wn.labels(), std::move(outs));
}

InputDistribution product_distribution(const InputDistribution& P, int n) {
  if (n < 1) throw InputError("product_distribution needs n >= 1");
  const int k = P.size();
  const int total = static_cast<int>(std::pow(static_cast<double>(k), n));
  std::vector<double> w(total);
  for (int idx = 0; idx < total; ++idx) {
    double prod = 1.0;
    int rem = idx;
    for (int pos = n - 1; pos >= 0; --pos) {
      prod *= P[rem % k];
      rem /= k;
    }
    w[idx] = prod;
  }
  return InputDistribution(std::move(w));
}

}  // namespace qrd
