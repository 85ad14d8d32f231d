#pragma once
//
// optim.hpp -- small dense optimizers used for the sigma-, P-, and
// V-optimizations: BFGS with central-difference gradients and Armijo
// backtracking, golden-section line minimization, and a Nelder-Mead simplex
// fallback for nonsmooth objectives (the alpha = infinity divergences).
// Objectives may return +infinity outside their domain; line searches back
// off from such points.
//

#include <functional>

#include "qrd/operator_core.hpp"

namespace qrd {

using Objective = std::function<double(const RVector&)>;

struct OptimOptions {
  int max_iters;
  double grad_tol;    // sup-norm gradient target, relative to max(1, |f|)
  double stall_tol;   // consecutive objective stalls below this end the run
  double fd_step;     // central-difference scale, relative to max(1, |x_i|)

  OptimOptions()
      : max_iters(config().max_iters),
        grad_tol(config().grad_tol),
        stall_tol(config().stall_tol),
        fd_step(1e-5) {}
};

struct OptimResult {
  RVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

OptimResult minimize_bfgs(const Objective& f, RVector x0, const OptimOptions& opts = {});

OptimResult minimize_nelder_mead(const Objective& f, RVector x0, double step = 0.5,
                                 const OptimOptions& opts = {});

// Golden-section minimum of a scalar function on [lo, hi]; returns the
// abscissa and value of the best point seen (endpoints included).
std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double tol = 1e-10, int max_iters = 200);

}  // namespace qrd
