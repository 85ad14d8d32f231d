#pragma once
//
// config.hpp -- the single numeric configuration record shared by every
// module. All tolerances, the support cutoff rule, and the dimension caps
// live here so that downstream code inherits consistent numerics.
//

namespace qrd {

struct Tolerances {
  // Operator-level tolerances.
  double herm = 1e-10;   // allowed Hermiticity defect on construction
  double psd = 1e-9;     // eigenvalue floor for "positive semidefinite"
  double trace = 1e-9;   // |Tr - 1| slack for density operators
  double meet = 1e-7;    // eigenvalue-1 window when intersecting supports

  // An eigenvalue counts as zero iff lambda <= support_cutoff * max|spectrum|.
  // The cutoff is scale-relative because the divergence formulas are
  // log-singular at the support boundary.
  double support_cutoff = 1e-10;

  // Absolute spectral gap below which adjacent eigenvalues merge into one
  // cluster (pinching blocks, v(sigma) counts).
  double cluster = 1e-9;

  // Hard cap on tensor-power dimensions (d^n and alphabet^n).
  int dim_cap = 4096;
  // Feasibility cap for the permutation-sum projector assembly: the central
  // character formula touches all n! permutation operators, each costing d^n
  // accumulations.
  double perm_work_cap = 5e8;

  // Optimizer knobs (quasi-Newton descent and minimax loops).
  double grad_tol = 1e-7;     // gradient norm convergence threshold
  double stall_tol = 1e-9;    // objective stall threshold
  int max_iters = 500;        // iteration cap per descent
  double minimax_gap = 1e-4;  // upper-minus-lower stopping gap for radii
};

// Mutable process-wide configuration. The CLI may override fields from a
// JSON config file; library callers normally leave the defaults alone.
Tolerances& config();

}  // namespace qrd
