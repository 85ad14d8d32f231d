#include "qrd/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qrd {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

RVector numeric_gradient(const Objective& f, const RVector& x, double fc, double fd_step) {
  const int n = static_cast<int>(x.size());
  RVector g(n);
  RVector probe = x;
  for (int i = 0; i < n; ++i) {
    const double h = fd_step * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    if (std::isfinite(fp) && std::isfinite(fm)) {
      g[i] = (fp - fm) / (2.0 * h);
    } else if (std::isfinite(fp)) {
      g[i] = (fp - fc) / h;  // one-sided when the other flank leaves the domain
    } else if (std::isfinite(fm)) {
      g[i] = (fc - fm) / h;
    } else {
      g[i] = 0.0;
    }
  }
  return g;
}

}  // namespace

OptimResult minimize_bfgs(const Objective& f, RVector x0, const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian model
  RVector g = numeric_gradient(f, res.x, res.value, opts.fd_step);
  int stalls = 0;

  for (res.iterations = 0; res.iterations < opts.max_iters; ++res.iterations) {
    if (g.cwiseAbs().maxCoeff() <= opts.grad_tol * std::max(1.0, std::abs(res.value))) {
      res.converged = true;
      return res;
    }
    RVector p = -(H * g);
    double slope = g.dot(p);
    if (!(slope < 0.0)) {  // model no longer a descent model; restart it
      H.setIdentity();
      p = -g;
      slope = g.dot(p);
    }

    // Armijo backtracking from the unit step.
    double t = 1.0;
    double fx_new = INF;
    RVector x_new;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      x_new = res.x + t * p;
      fx_new = f(x_new);
      if (std::isfinite(fx_new) && fx_new <= res.value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      res.converged = g.cwiseAbs().maxCoeff() <= 1e2 * opts.grad_tol * std::max(1.0, std::abs(res.value));
      return res;
    }

    const RVector g_new = numeric_gradient(f, x_new, fx_new, opts.fd_step);
    const RVector s = x_new - res.x;
    const RVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {  // curvature guard
      const RVector Hy = H * y;
      const double yHy = y.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }

    const double drop = res.value - fx_new;
    res.x = std::move(x_new);
    res.value = fx_new;
    g = g_new;
    if (drop <= opts.stall_tol * std::max(1.0, std::abs(res.value))) {
      if (++stalls >= 2) {
        res.converged = true;
        return res;
      }
    } else {
      stalls = 0;
    }
  }
  return res;  // iteration budget exhausted, converged stays false
}

OptimResult minimize_nelder_mead(const Objective& f, RVector x0, double step,
                                 const OptimOptions& opts) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  if (n == 0) {
    res.x = std::move(x0);
    res.value = f(res.x);
    res.converged = true;
    return res;
  }

  std::vector<RVector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step * std::max(1.0, std::abs(x0[i - 1]));
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  auto order = [&] {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<RVector> p2;
    std::vector<double> v2;
    for (int i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  for (res.iterations = 0; res.iterations < opts.max_iters * 4; ++res.iterations) {
    order();
    if (std::isfinite(vals[n]) &&
        vals[n] - vals[0] <= opts.stall_tol * std::max(1.0, std::abs(vals[0]))) {
      res.converged = true;
      break;
    }
    RVector centroid = RVector::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    const RVector refl = centroid + (centroid - pts[n]);
    const double f_refl = f(refl);
    if (f_refl < vals[0]) {
      const RVector expa = centroid + 2.0 * (centroid - pts[n]);
      const double f_expa = f(expa);
      if (f_expa < f_refl) {
        pts[n] = expa;
        vals[n] = f_expa;
      } else {
        pts[n] = refl;
        vals[n] = f_refl;
      }
    } else if (f_refl < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = f_refl;
    } else {
      const RVector contr = centroid + 0.5 * (pts[n] - centroid);
      const double f_contr = f(contr);
      if (f_contr < vals[n]) {
        pts[n] = contr;
        vals[n] = f_contr;
      } else {
        for (int i = 1; i <= n; ++i) {  // shrink towards the best vertex
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double lo,
                                             double hi, double tol, int max_iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  double best_x = fc < fd ? c : d;
  double best_f = std::min(fc, fd);
  for (int it = 0; it < max_iters && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    if (fc < best_f) {
      best_f = fc;
      best_x = c;
    }
    if (fd < best_f) {
      best_f = fd;
      best_x = d;
    }
  }
  const double f_lo = f(lo), f_hi = f(hi);
  if (f_lo < best_f) {
    best_f = f_lo;
    best_x = lo;
  }
  if (f_hi < best_f) {
    best_f = f_hi;
    best_x = hi;
  }
  return {best_x, best_f};
}

}  // namespace qrd
