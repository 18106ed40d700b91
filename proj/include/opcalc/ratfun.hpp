#pragma once

#include <optional>
#include <vector>

#include "opcalc/poly.hpp"

namespace opcalc {

/// One linear factor (s - pole)^mult of a denominator.
struct PoleFactor {
  Cplx pole;
  int mult = 1;
};

/// Rational function num/den in the differential operator s, the s-domain
/// face of an element of the convolution quotient field.  The denominator is
/// kept monic.  No symbolic cancellation is attempted: coefficients are
/// floating, so equality is semantic (sampling or realization), never
/// coefficient-syntactic.
///
/// Internally built rational functions usually know their denominator's
/// factorization (realizations are assembled from poles, and every ring
/// operation maps factors linearly), so the factor list travels along as a
/// hint.  Deeply composed elements would otherwise force root finding on
/// huge denominators with extreme multiplicities, which double precision
/// cannot resolve.  The hint is verified before use and dropped by the
/// operations that genuinely lose the factorization (general division).
class RatFun {
 public:
  RatFun() : num_(), den_(Cplx(1)), den_factors_(std::vector<PoleFactor>{}) {}
  RatFun(Cplx c) : RatFun() {
    require_finite(c, "RatFun");
    num_ = Poly(c);
  }
  RatFun(double c) : RatFun(Cplx(c)) {}
  RatFun(Poly num, Poly den);
  RatFun(Poly num, Poly den, std::vector<PoleFactor> den_factors);

  /// The differential operator s.
  static RatFun s() {
    return RatFun(Poly::variable(), Poly(Cplx(1)), {});
  }
  /// The integral operator l = 1/s.
  static RatFun l() {
    return RatFun(Poly(Cplx(1)), Poly::variable(), {{Cplx(0), 1}});
  }

  const std::optional<std::vector<PoleFactor>>& den_factors() const {
    return den_factors_;
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// deg num <= deg den: the element is constant + continuous function.
  bool is_proper() const { return num_.degree() <= den_.degree(); }
  bool is_strictly_proper() const { return num_.degree() < den_.degree(); }

  Cplx eval(Cplx z) const { return num_.eval(z) / den_.eval(z); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  friend RatFun operator*(Cplx c, const RatFun& r);
  friend RatFun operator*(const RatFun& r, Cplx c) { return c * r; }

  /// s -> s - alpha (the action of the exponential-shift automorphism).
  RatFun subst_shift(Cplx alpha) const;
  /// s -> s / q, q > 0 (the action of the dilation automorphism).
  RatFun subst_scale(double q) const;
  /// Formal derivative d/ds by the quotient rule.
  RatFun dds() const;

 private:
  Poly num_, den_;
  std::optional<std::vector<PoleFactor>> den_factors_;
  void normalize();
};

/// One summand coeff/(s - pole)^order of a partial-fraction decomposition.
struct PfTerm {
  Cplx pole;
  int order = 1;
  Cplx coeff;
};

struct PartialFractions {
  Poly poly_part;
  std::vector<PfTerm> terms;
};

/// Decompose r as poly_part + sum coeff/(s - pole)^order.  Poles within
/// kPoleMergeTol are clustered into a single higher-order pole.
PartialFractions partial_fractions(const RatFun& r);

/// Recombine a decomposition back into a single rational function.
RatFun pf_recombine(const PartialFractions& pf);

/// Scale-relative coefficient distance between a and b: the max coefficient
/// of the cross difference a.num*b.den - b.num*a.den, divided by the larger
/// cross-product coefficient scale.  Zero iff the two are syntactically
/// proportional; small iff semantically equal up to rounding.
double ratfun_distance(const RatFun& a, const RatFun& b);

std::string to_string(const RatFun& r);

}  // namespace opcalc
