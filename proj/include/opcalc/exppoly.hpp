#pragma once

#include <vector>

#include "opcalc/ratfun.hpp"

namespace opcalc {

/// Exponential polynomial: a finite sum over distinct exponents lambda of
/// (polynomial in t) * e^{lambda t}.  These are exactly the time-domain
/// realizations of proper rational functions of s.  Exponents closer than
/// kPoleMergeTol are merged into one term.
class ExpPoly {
 public:
  struct Term {
    Cplx exponent;
    std::vector<Cplx> coeffs;  // index k = coefficient of t^k e^{exponent t}
  };

  ExpPoly() = default;

  static ExpPoly constant(Cplx c) { return term(c, 0, Cplx(0)); }
  static ExpPoly term(Cplx coeff, int tpow, Cplx exponent) {
    ExpPoly f;
    f.add_term(coeff, tpow, exponent);
    return f;
  }

  /// Add coeff * t^tpow * e^{exponent t}, merging into an existing exponent
  /// slot when one lies within kPoleMergeTol.
  void add_term(Cplx coeff, int tpow, Cplx exponent);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  double max_coeff_abs() const;

  Cplx eval(double t) const;

  ExpPoly operator-() const;
  ExpPoly& operator+=(const ExpPoly& rhs);
  ExpPoly& operator-=(const ExpPoly& rhs);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(Cplx c, const ExpPoly& f);
  friend ExpPoly operator*(const ExpPoly& f, Cplx c) { return c * f; }

  /// Copy with every coefficient of magnitude <= eps dropped.
  ExpPoly trimmed(double eps) const;

 private:
  std::vector<Term> terms_;  // sorted by exponent (re, then im)
};

/// An element const_part + {fn(t)} of the quotient field.  Only elements
/// with deg num <= deg den have this form; the constant is carried
/// explicitly because it is not a function.
struct Realization {
  Cplx const_part;
  ExpPoly fn;
};

/// Invert a proper rational function through partial fractions:
/// coeff/(s-a)^n -> coeff * t^(n-1) e^{at} / (n-1)!.  Throws domain_error
/// for improper input (deg num > deg den).
Realization realize(const RatFun& r);

/// Exact inverse of realize: c + sum c_{a,k} t^k e^{at} ->
/// c + sum c_{a,k} k! / (s-a)^{k+1}.
RatFun unrealize(Cplx const_part, const ExpPoly& f);

/// Ring product of the convolution algebra, computed exactly through the
/// s-domain: realize(unrealize(a) * unrealize(b)).
ExpPoly convolve(const ExpPoly& a, const ExpPoly& b);

/// T^alpha: multiply by e^{alpha t}; every exponent shifts by alpha.
ExpPoly exp_shift(Cplx alpha, const ExpPoly& f);

/// tau_q: {a(t)} -> {q a(qt)}; requires q > 0.
ExpPoly dilate(double q, const ExpPoly& f);

/// d/ds: {a(t)} -> {-t a(t)}.
ExpPoly dds(const ExpPoly& f);

/// D = -s^2 d/ds (satisfies D l = 1).  The result may carry a constant part.
Realization d_dl(const ExpPoly& f);

/// Max absolute coefficient difference after matching exponents within
/// kPoleMergeTol; unmatched terms contribute their own magnitude.
double ep_distance(const ExpPoly& a, const ExpPoly& b);

std::string to_string(const ExpPoly& f);

}  // namespace opcalc
