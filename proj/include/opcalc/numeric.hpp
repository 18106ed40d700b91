#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "opcalc/cplx.hpp"

namespace opcalc {

/// Uniform-grid samples of a time function on [0, horizon]: count+1 values
/// at t_i = i * dt(), dt() = horizon / count.
struct SampledFn {
  double horizon = 0.0;
  int count = 0;
  std::vector<Cplx> values;

  double dt() const { return horizon / count; }

  static SampledFn sample(const std::function<Cplx(double)>& f, double T, int N);

  /// Linear interpolation; snaps to the node when t is on the grid.
  Cplx interp(double t) const;
};

/// Composite trapezoid rule for the convolution integral, per output point;
/// the O(N^2) reference oracle with global error O(dt^2) for C^2 integrands.
/// Requires identical grids.
SampledFn conv_trapezoid(const SampledFn& a, const SampledFn& b);

/// Pointwise e^{alpha t_i} a_i (the numeric face of T^alpha).
SampledFn mul_exp(Cplx alpha, const SampledFn& a);

/// Pointwise -t_i a_i (the numeric face of d/ds).
SampledFn mul_negt(const SampledFn& a);

/// q a(q t_i) (the numeric face of tau_q).  For q > 1 the horizon shrinks
/// to horizon/q rather than extrapolating.
SampledFn dilate_sampled(double q, const SampledFn& a);

/// Zero-padded shift: a(t - lambda) for t >= lambda, else 0; lambda >= 0.
SampledFn shift_sampled(double lambda, const SampledFn& a);

/// Gamma function (Lanczos approximation, g = 7, 9 terms; reflection for
/// Re < 1/2).  Real non-positive integers are poles -> domain_error.
Cplx gamma_fn(Cplx z);
double gamma_fn(double x);

/// Error function: Maclaurin series for |x| <= 3, continued fraction for
/// the complement beyond.
double erf_fn(double x);

/// Bessel J0 by its defining power series; validated for |x| <= 12 only
/// (range_error beyond).
double bessel_j0(double x);

/// Sampled realization of (s - alpha)^{-lambda} = {t^{lambda-1} e^{alpha t}
/// / Gamma(lambda)}, lambda > 0.  For lambda < 1 the integrable singularity
/// at t = 0 is recorded as 0; comparisons must exclude that node.
SampledFn frac_power_fn(Cplx alpha, double lambda, double T, int N);

/// Convolution of (s - alpha)^{-lambda} with b when 0 < lambda < 1 would
/// defeat the plain trapezoid rule: the first few subintervals are
/// regularized by the substitution tau = u^{1/lambda}, the rest use the
/// grid trapezoid sum.
SampledFn conv_frac_power(Cplx alpha, double lambda, const SampledFn& b);

/// Max |a_i - b_i| over the common grid prefix, skipping points within dt
/// of any excluded knot.  Grids must share dt; throws on empty overlap.
double compare(const SampledFn& a, const SampledFn& b,
               std::span<const double> exclude_knots = {});

/// CSV emission: header "t,re,im", one row per grid point, 17 significant
/// digits.
void write_csv(const SampledFn& f, std::ostream& os);

}  // namespace opcalc
