#include "opcalc/series.hpp"

#include <cmath>

namespace opcalc {

namespace {

template <char Var>
TruncatedSeries<Var> invert_unit_impl(const TruncatedSeries<Var>& a) {
  if (a.order() < 0 || a.coeff(0) == Cplx(0))
    throw std::domain_error("invert_unit: not a unit (zero constant term)");
  std::vector<Cplx> b(a.order() + 1);
  b[0] = Cplx(1) / a.coeff(0);
  for (int n = 1; n <= a.order(); ++n) {
    Cplx acc(0);
    for (int i = 1; i <= n; ++i) acc += a.coeff(i) * b[n - i];
    b[n] = -acc * b[0];
  }
  return TruncatedSeries<Var>(std::move(b));
}

}  // namespace

SeriesL dilate(double q, const SeriesL& a) {
  if (!(q > 0.0)) throw std::domain_error("dilate: q must be > 0");
  std::vector<Cplx> out(a.coeffs());
  double qn = 1.0;
  for (size_t n = 0; n < out.size(); ++n) {
    out[n] *= qn;
    qn *= q;
  }
  return SeriesL(std::move(out));
}

SeriesL d_dl(const SeriesL& a) {
  if (a.order() < 1) return SeriesL();
  std::vector<Cplx> out(a.order());
  for (int n = 1; n <= a.order(); ++n)
    out[n - 1] = static_cast<double>(n) * a.coeff(n);
  return SeriesL(std::move(out));
}

SeriesL dds(const SeriesL& a) {
  if (a.order() < 0) return SeriesL();
  std::vector<Cplx> out(a.order() + 1, Cplx(0));
  for (int n = 0; n + 1 <= a.order(); ++n)
    out[n + 1] = -static_cast<double>(n) * a.coeff(n);
  return SeriesL(std::move(out));
}

SeriesL exp_shift(Cplx alpha, const SeriesL& a) {
  require_finite(alpha, "exp_shift");
  const int K = a.order();
  if (K < 0) return SeriesL();
  std::vector<Cplx> out(K + 1, Cplx(0));
  out[0] = a.coeff(0);
  // Pascal row of C(n,i), extended in place.
  std::vector<double> binom{1.0};
  for (int n = 0; n + 1 <= K; ++n) {
    Cplx acc(0);
    Cplx apow(1);  // alpha^(n-i) built from the top down
    for (int i = n; i >= 0; --i) {
      acc += binom[i] * apow * a.coeff(i + 1);
      apow *= alpha;
    }
    out[n + 1] = acc;
    binom.push_back(1.0);
    for (int i = n; i >= 1; --i) binom[i] += binom[i - 1];
  }
  return SeriesL(std::move(out));
}

Cplx SeriesRealization::eval(double t) const {
  Cplx acc(0);
  for (auto it = taylor.rbegin(); it != taylor.rend(); ++it) acc = acc * t + *it;
  return acc;
}

SeriesRealization realize(const SeriesL& a) {
  SeriesRealization out;
  out.const_part = a.coeff(0);
  if (a.order() >= 1) {
    out.taylor.resize(a.order());
    double factorial = 1.0;
    for (int m = 0; m < a.order(); ++m) {
      if (m >= 2) factorial *= m;
      out.taylor[m] = a.coeff(m + 1) / factorial;
    }
  }
  return out;
}

SeriesL bessel_coeffs(Cplx alpha, int terms) {
  require_finite(alpha, "bessel_coeffs");
  if (terms < 1) throw std::domain_error("bessel_coeffs: need at least one term");
  std::vector<Cplx> out(2 * terms + 2, Cplx(0));
  Cplx binom(1);        // C(-1/2, k)
  Cplx apow(1);         // alpha^(2k)
  const Cplx a2 = alpha * alpha;
  for (int k = 0; k <= terms; ++k) {
    out[2 * k + 1] = binom * apow;
    binom *= Cplx(-0.5 - k) / Cplx(k + 1.0);
    apow *= a2;
  }
  return SeriesL(std::move(out));
}

SeriesH mahler(int d, const SeriesH& a) {
  if (d < 2) throw std::domain_error("mahler: d must be >= 2");
  if (a.order() < 0) return SeriesH();
  std::vector<Cplx> out(static_cast<size_t>(d) * a.order() + 1, Cplx(0));
  for (int n = 0; n <= a.order(); ++n) out[static_cast<size_t>(d) * n] = a.coeff(n);
  return SeriesH(std::move(out));
}

SeriesH d_dh(const SeriesH& a) {
  if (a.order() < 1) return SeriesH();
  std::vector<Cplx> out(a.order());
  for (int n = 1; n <= a.order(); ++n)
    out[n - 1] = static_cast<double>(n) * a.coeff(n);
  return SeriesH(std::move(out));
}

SeriesH dds(const SeriesH& a) {
  std::vector<Cplx> out(a.coeffs());
  for (int n = 0; n <= a.order(); ++n) out[n] *= -static_cast<double>(n);
  return SeriesH(std::move(out));
}

SeriesH invert_unit(const SeriesH& a) { return invert_unit_impl(a); }
SeriesL invert_unit(const SeriesL& a) { return invert_unit_impl(a); }

}  // namespace opcalc
