#pragma once
//
// state_param.hpp -- coordinates for the optimizers: strictly positive
// states written as sigma = exp(H)/Tr exp(H) with H traceless Hermitian,
// identified with R^(d^2-1). The exponential chart keeps every iterate a
// full-rank state, so support conditions never bite during a descent.
//
// Layout: t[0..d-2] are the first d-1 diagonal entries of H (the last is
// minus their sum), followed by (re, im) pairs for the strict upper
// triangle, row by row.
//

#include "qrd/operator_core.hpp"

namespace qrd {

int state_param_count(int d);  // d^2 - 1

Matrix traceless_hermitian(const RVector& t, int d);

DensityOperator state_from_params(const RVector& t, int d);

// Chart inverse, up to the eigenvalue floor that keeps the log finite for
// boundary states.
RVector params_from_state(const DensityOperator& sigma, double eig_floor = 1e-9);

}  // namespace qrd
