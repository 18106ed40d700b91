#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "opcalc/cplx.hpp"

namespace opcalc {

/// Truncated power series with explicit knowledge bound: coeff(0..order())
/// are known, everything past that is unknown (not assumed zero).  Binary
/// operations report only the common prefix (order = min), so no operation
/// fabricates coefficients it cannot know.  Trailing zeros are meaningful
/// (known-zero coefficients) and are never trimmed.  An empty series means
/// "no coefficient known" (order -1).
template <char Var>
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {
    for (Cplx c : coeffs_) require_finite(c, "TruncatedSeries");
  }

  static TruncatedSeries zero(int order) {
    return TruncatedSeries(std::vector<Cplx>(order + 1, Cplx(0)));
  }
  static TruncatedSeries constant(Cplx c, int order) {
    TruncatedSeries s = zero(order);
    if (order >= 0) s.coeffs_[0] = c;
    return s;
  }
  /// The ring generator itself (l or h), truncated at the given order.
  static TruncatedSeries generator(int order) {
    if (order < 1)
      throw std::domain_error("TruncatedSeries: generator needs order >= 1");
    TruncatedSeries s = zero(order);
    s.coeffs_[1] = Cplx(1);
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Cplx>& coeffs() const { return coeffs_; }
  Cplx coeff(int n) const {
    return (n >= 0 && n <= order()) ? coeffs_[n] : Cplx(0);
  }

  TruncatedSeries truncated(int k) const {
    if (k >= order()) return *this;
    if (k < 0) return TruncatedSeries();
    return TruncatedSeries(
        std::vector<Cplx>(coeffs_.begin(), coeffs_.begin() + k + 1));
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r(*this);
    for (Cplx& c : r.coeffs_) c = -c;
    return r;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    int k = std::min(a.order(), b.order());
    std::vector<Cplx> out(k + 1);
    for (int n = 0; n <= k; ++n) out[n] = a.coeffs_[n] + b.coeffs_[n];
    return TruncatedSeries(std::move(out));
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    return a + (-b);
  }

  /// Cauchy product up to the common truncation order.
  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    int k = std::min(a.order(), b.order());
    std::vector<Cplx> out(std::max(k + 1, 0), Cplx(0));
    for (int n = 0; n <= k; ++n) {
      Cplx acc(0);
      for (int i = 0; i <= n; ++i) acc += a.coeffs_[i] * b.coeffs_[n - i];
      out[n] = acc;
    }
    return TruncatedSeries(std::move(out));
  }

  friend TruncatedSeries operator*(Cplx c, const TruncatedSeries& s) {
    TruncatedSeries r(s);
    for (Cplx& x : r.coeffs_) x *= c;
    return r;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& s, Cplx c) {
    return c * s;
  }

  TruncatedSeries pow(int k) const {
    if (k < 0) throw std::domain_error("TruncatedSeries: negative power");
    TruncatedSeries acc = constant(Cplx(1), order());
    for (int i = 0; i < k; ++i) acc = acc * (*this);
    return acc;
  }

 private:
  std::vector<Cplx> coeffs_;
};

using SeriesL = TruncatedSeries<'l'>;  // the ring C{l}
using SeriesH = TruncatedSeries<'h'>;  // the ring C[[h]]

/// Max absolute coefficient difference over the common known prefix.
template <char Var>
double ser_distance(const TruncatedSeries<Var>& a,
                    const TruncatedSeries<Var>& b) {
  int k = std::min(a.order(), b.order());
  double worst = 0.0;
  for (int n = 0; n <= k; ++n)
    worst = std::max(worst, std::abs(a.coeff(n) - b.coeff(n)));
  return worst;
}

// --- operators on C{l} ---------------------------------------------------

/// tau_q: a_n -> a_n q^n.
SeriesL dilate(double q, const SeriesL& a);

/// D = -s^2 d/ds acts as the formal derivative in l (D l = 1).
SeriesL d_dl(const SeriesL& a);

/// d/ds: a_n l^n -> -n a_n l^{n+1}; the top shifted coefficient falls off
/// the truncation bound.
SeriesL dds(const SeriesL& a);

/// T^alpha, by the binomial closed form for the substitution
/// Z -> Z/(1 - alpha Z):  b_{n+1} = sum_i C(n,i) alpha^{n-i} a_{i+1}.
SeriesL exp_shift(Cplx alpha, const SeriesL& a);

/// Time-domain face of a truncated l-series: constant a_0 plus the
/// polynomial sum_{n>=1} a_n t^{n-1}/(n-1)!.
struct SeriesRealization {
  Cplx const_part;
  std::vector<Cplx> taylor;  // index m = coefficient of t^m
  Cplx eval(double t) const;
};
SeriesRealization realize(const SeriesL& a);

/// l-series of the Bessel function J0(alpha t): coefficient
/// C(-1/2,k) alpha^{2k} at index 2k+1 for k = 0..terms.
SeriesL bessel_coeffs(Cplx alpha, int terms);

// --- operators on C[[h]] -------------------------------------------------

/// sigma_d: a_n h^n -> a_n h^{dn}; known through order d * order(a).
SeriesH mahler(int d, const SeriesH& a);

/// D' = -h^{-1} d/ds acts as the formal derivative in h (D'h = 1).
SeriesH d_dh(const SeriesH& a);

/// d/ds: a_n h^n -> -n a_n h^n.
SeriesH dds(const SeriesH& a);

/// Reciprocal of a unit (nonzero constant term) up to the truncation order.
SeriesH invert_unit(const SeriesH& a);
SeriesL invert_unit(const SeriesL& a);

}  // namespace opcalc
