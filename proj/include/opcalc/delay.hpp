#pragma once

#include <vector>

#include "opcalc/exppoly.hpp"
#include "opcalc/ratfun.hpp"

namespace opcalc {

/// Finite sum of h^{lambda} R(s) over distinct real delays lambda, where
/// h^{lambda} is the translation operator.  Delays within kDelayMergeTol are
/// merged; zero rational parts are dropped; parts are kept sorted by delay.
/// Negative delays are legal (h^{-lambda} = 1/h^{lambda}) but such elements
/// have no function realization.
class DelayElement {
 public:
  struct Part {
    double delay;
    RatFun fn;
  };

  DelayElement() = default;

  /// The translation operator h^{lambda} itself.
  static DelayElement h_pow(double lambda);
  static DelayElement from_ratfun(const RatFun& r);

  void add_part(double delay, const RatFun& r);

  bool is_zero() const { return parts_.empty(); }
  const std::vector<Part>& parts() const { return parts_; }

  DelayElement operator-() const;
  DelayElement& operator+=(const DelayElement& rhs);
  DelayElement& operator-=(const DelayElement& rhs);
  friend DelayElement operator+(DelayElement a, const DelayElement& b) {
    return a += b;
  }
  friend DelayElement operator-(DelayElement a, const DelayElement& b) {
    return a -= b;
  }
  /// Field product: delays add, rational parts multiply.
  friend DelayElement operator*(const DelayElement& a, const DelayElement& b);
  friend DelayElement operator*(Cplx c, const DelayElement& e);
  friend DelayElement operator*(const DelayElement& e, Cplx c) { return c * e; }

 private:
  std::vector<Part> parts_;
};

/// Piecewise exponential polynomial: const_part plus pieces that switch on
/// at their delay, each written in local time u = t - delay.  Jumps across
/// knots are permitted.  Evaluation is left-continuous at knots (a piece
/// contributes only for t > delay), except that pieces at delay 0 contribute
/// from t = 0 on; comparisons should exclude neighborhoods of the knots.
struct PiecewiseEP {
  struct Piece {
    double delay;
    ExpPoly fn;
  };

  Cplx const_part{0};
  std::vector<Piece> pieces;  // strictly increasing delays

  void add_piece(double delay, const ExpPoly& fn);
  Cplx eval(double t) const;
  std::vector<double> knots() const;
};

/// Realize h^{l1} R1 + ... as a piecewise function.  Throws domain_error if
/// any delay is negative or any rational part is improper.
PiecewiseEP de_realize(const DelayElement& e);

/// tau_q on this class: (lambda, R(s)) -> (lambda/q, R(s/q)).
DelayElement dilate(double q, const DelayElement& e);

/// Mahler operator sigma_d = tau_{1/d}, d >= 2: h -> h^d, s -> d s.
DelayElement mahler(int d, const DelayElement& e);

/// d/ds: uses d/ds h^{lambda} = -lambda h^{lambda} and the Leibniz rule.
DelayElement dds(const DelayElement& e);

/// D = -s^2 d/ds.
DelayElement d_dl(const DelayElement& e);

/// D' = -h^{-1} d/ds (satisfies D'h = 1); shifts every delay by -1.
DelayElement d_dh(const DelayElement& e);

/// T^alpha: (lambda, R(s)) -> (lambda, e^{alpha lambda} R(s - alpha)).
DelayElement exp_shift(Cplx alpha, const DelayElement& e);

/// Max ratfun_distance over delay-matched parts; unmatched parts measure
/// against zero.
double de_distance(const DelayElement& a, const DelayElement& b);

/// Truncated jump series sum_n coeffs[n] * h^{delays[n]}.
struct JumpSeries {
  std::vector<Cplx> coeffs;
  std::vector<double> delays;  // >= 0, strictly increasing
};

/// The piecewise-linear function g(t) = sum_n a_n max(0, t - b_n); the
/// series element itself is g divided by l^2.
PiecewiseEP jump_realize(const JumpSeries& j);

/// Recover a_0..a_count from a piecewise-linear g with integer knots by
/// reading values at t = m + 1 (triangular back-substitution).
std::vector<Cplx> jump_extract(const PiecewiseEP& g, int count);

std::string to_string(const DelayElement& e);
std::string to_string(const PiecewiseEP& p);

}  // namespace opcalc
