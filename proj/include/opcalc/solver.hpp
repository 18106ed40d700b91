#pragma once

#include <vector>

#include "opcalc/delay.hpp"
#include "opcalc/exppoly.hpp"

namespace opcalc {

/// Constant-coefficient linear ODE sum_k coeffs[k] f^(k) = rhs(t) with
/// initial values init[j] = f^(j)(0), j = 0..n-1.
struct OdeProblem {
  std::vector<Cplx> coeffs;  // a_0..a_n, a_n != 0
  std::vector<Cplx> init;    // f(0)..f^(n-1)(0)
  ExpPoly rhs;
};

/// Solve through the s-domain: each derivative becomes
/// f^(k) = s^k F - sum_{j<k} s^(k-1-j) f^(j)(0), so
/// F = (rhs(s) + initial-condition polynomial) / characteristic polynomial,
/// realized back to an exponential polynomial.  Resonant right-hand sides
/// need no special casing: partial fractions absorb the higher-order poles.
ExpPoly solve_lode(const OdeProblem& p);

/// Scalar delay equation x = forcing + c h x on [0, horizon].
struct DelayProblem {
  Cplx c;
  ExpPoly forcing;
  double horizon = 0.0;
};

/// Geometric h-series solution x = sum_{n=0}^{ceil(T)} c^n h^n forcing,
/// exact on [0, T] because h^n forcing vanishes on [0, n).
PiecewiseEP solve_delay_geom(const DelayProblem& p);

/// Exact time derivative of an exponential polynomial (product rule on
/// t^k e^{at}); a checking utility for ODE residuals, distinct from the
/// field-theoretic d/ds.
ExpPoly ddt(const ExpPoly& f);

}  // namespace opcalc
