#pragma once

#include <span>
#include <utility>
#include <vector>

#include "opcalc/cplx.hpp"

namespace opcalc {

/// Dense polynomial in the differential operator s.  Coefficients are stored
/// ascending: coeff(k) is the coefficient of s^k.  The zero polynomial keeps
/// an empty coefficient vector; otherwise the last stored coefficient is
/// nonzero, so degree() == size - 1.
class Poly {
 public:
  Poly() = default;
  Poly(Cplx c) {
    require_finite(c, "Poly");
    if (c != Cplx(0)) coeffs_.push_back(c);
  }
  Poly(double c) : Poly(Cplx(c)) {}
  explicit Poly(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
    for (Cplx c : coeffs_) require_finite(c, "Poly");
    trim();
  }

  /// The indeterminate s itself.
  static Poly variable() { return Poly(std::vector<Cplx>{Cplx(0), Cplx(1)}); }

  /// Monic polynomial with the given roots (with multiplicity).
  static Poly from_roots(std::span<const Cplx> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Cplx>& coeffs() const { return coeffs_; }
  Cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k]
                                                            : Cplx(0);
  }
  Cplx leading() const { return coeffs_.empty() ? Cplx(0) : coeffs_.back(); }
  double max_coeff_abs() const;

  Cplx eval(Cplx s) const;
  Poly derivative() const;

  /// p(s) -> p(s - alpha).
  Poly compose_shift(Cplx alpha) const;
  /// p(s) -> p(s / q), q > 0.
  Poly compose_scale(double q) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Cplx c, const Poly& p);
  friend Poly operator*(const Poly& p, Cplx c) { return c * p; }

  /// Quotient and remainder with deg(rem) < deg(b); b must be nonzero.
  static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Cplx> coeffs_;
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Cplx(0)) coeffs_.pop_back();
  }
};

/// All deg(p) roots of p, with multiplicity.  Simultaneous Aberth-Ehrlich
/// iteration polished by multiplicity-aware Newton steps; falls back to
/// companion-matrix eigenvalues if the iteration stalls.  Every returned
/// root r satisfies |p(r)| <= 1e-9 * max|coeff|, else numerical_error.
std::vector<Cplx> find_roots(const Poly& p);

std::string to_string(const Poly& p);

}  // namespace opcalc
