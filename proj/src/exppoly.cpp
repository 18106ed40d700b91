#include "opcalc/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opcalc {

namespace {

bool exponent_less(Cplx a, Cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void trim_tail(std::vector<Cplx>& v) {
  while (!v.empty() && v.back() == Cplx(0)) v.pop_back();
}

}  // namespace

void ExpPoly::add_term(Cplx coeff, int tpow, Cplx exponent) {
  require_finite(coeff, "ExpPoly");
  require_finite(exponent, "ExpPoly");
  if (tpow < 0) throw std::domain_error("ExpPoly: negative power of t");
  if (coeff == Cplx(0)) return;

  Term* slot = nullptr;
  for (auto& t : terms_)
    if (std::abs(t.exponent - exponent) <= kPoleMergeTol) {
      slot = &t;
      break;
    }
  if (!slot) {
    Term t;
    t.exponent = exponent;
    terms_.push_back(std::move(t));
    slot = &terms_.back();
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
      return exponent_less(x.exponent, y.exponent);
    });
    for (auto& t2 : terms_)
      if (std::abs(t2.exponent - exponent) <= kPoleMergeTol) slot = &t2;
  }
  if (static_cast<int>(slot->coeffs.size()) <= tpow)
    slot->coeffs.resize(tpow + 1, Cplx(0));
  slot->coeffs[tpow] += coeff;
  trim_tail(slot->coeffs);
  if (slot->coeffs.empty())
    terms_.erase(std::find_if(terms_.begin(), terms_.end(),
                              [&](const Term& t) { return t.coeffs.empty(); }));
}

double ExpPoly::max_coeff_abs() const {
  double m = 0.0;
  for (const Term& t : terms_)
    for (Cplx c : t.coeffs) m = std::max(m, std::abs(c));
  return m;
}

Cplx ExpPoly::eval(double t) const {
  Cplx acc(0);
  for (const Term& term : terms_) {
    Cplx poly(0);
    for (auto it = term.coeffs.rbegin(); it != term.coeffs.rend(); ++it)
      poly = poly * t + *it;
    acc += poly * std::exp(term.exponent * t);
  }
  return acc;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly r(*this);
  for (auto& t : r.terms_)
    for (auto& c : t.coeffs) c = -c;
  return r;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& rhs) {
  for (const Term& t : rhs.terms_)
    for (size_t k = 0; k < t.coeffs.size(); ++k)
      if (t.coeffs[k] != Cplx(0))
        add_term(t.coeffs[k], static_cast<int>(k), t.exponent);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& rhs) {
  for (const Term& t : rhs.terms_)
    for (size_t k = 0; k < t.coeffs.size(); ++k)
      if (t.coeffs[k] != Cplx(0))
        add_term(-t.coeffs[k], static_cast<int>(k), t.exponent);
  return *this;
}

ExpPoly operator*(Cplx c, const ExpPoly& f) {
  require_finite(c, "ExpPoly scale");
  if (c == Cplx(0)) return ExpPoly();
  ExpPoly r(f);
  for (auto& t : r.terms_)
    for (auto& x : t.coeffs) x *= c;
  return r;
}

ExpPoly ExpPoly::trimmed(double eps) const {
  ExpPoly out;
  for (const Term& t : terms_)
    for (size_t k = 0; k < t.coeffs.size(); ++k)
      if (std::abs(t.coeffs[k]) > eps)
        out.add_term(t.coeffs[k], static_cast<int>(k), t.exponent);
  return out;
}

Realization realize(const RatFun& r) {
  if (!r.is_proper())
    throw std::domain_error("realize: not a function element (deg num > deg den)");
  PartialFractions pf = partial_fractions(r);
  Realization out;
  out.const_part = pf.poly_part.coeff(0);  // proper input: quotient is constant
  for (const PfTerm& t : pf.terms) {
    double factorial = 1.0;  // (order-1)!
    for (int k = 2; k < t.order; ++k) factorial *= k;
    out.fn.add_term(t.coeff / factorial, t.order - 1, t.pole);
  }
  double scale = out.fn.max_coeff_abs();
  out.fn = out.fn.trimmed(1e-12 * std::max(1.0, scale));
  return out;
}

namespace {

// s-domain face of a single term group: sum_k c_k t^k e^{at} ->
// sum_k c_k k! / (s - a)^(k+1), over the common denominator (s - a)^(K+1).
RatFun term_to_ratfun(const ExpPoly::Term& t) {
  Poly lin(std::vector<Cplx>{-t.exponent, Cplx(1)});
  const int K = static_cast<int>(t.coeffs.size()) - 1;
  std::vector<Poly> powers(K + 2, Poly(Cplx(1)));
  for (int k = 1; k <= K + 1; ++k) powers[k] = powers[k - 1] * lin;
  Poly num;
  for (int k = 0; k <= K; ++k) {
    double factorial = 1.0;
    for (int j = 2; j <= k; ++j) factorial *= j;
    num += (t.coeffs[k] * factorial) * powers[K - k];
  }
  return RatFun(num, powers[K + 1], {{t.exponent, K + 1}});
}

}  // namespace

RatFun unrealize(Cplx const_part, const ExpPoly& f) {
  require_finite(const_part, "unrealize");
  RatFun acc(const_part);
  for (const ExpPoly::Term& t : f.terms()) acc = acc + term_to_ratfun(t);
  return acc;
}

ExpPoly convolve(const ExpPoly& a, const ExpPoly& b) {
  if (a.is_zero() || b.is_zero()) return ExpPoly();
  // The ring product distributes over term groups; realizing each two-pole
  // product separately keeps every partial-fraction call small and
  // well-conditioned no matter how deeply elements are composed.
  ExpPoly out;
  for (const ExpPoly::Term& ta : a.terms())
    for (const ExpPoly::Term& tb : b.terms())
      out += realize(term_to_ratfun(ta) * term_to_ratfun(tb)).fn;
  double scale = out.max_coeff_abs();
  return out.trimmed(1e-12 * std::max(1.0, scale));
}

ExpPoly exp_shift(Cplx alpha, const ExpPoly& f) {
  require_finite(alpha, "exp_shift");
  ExpPoly out;
  for (const auto& t : f.terms())
    for (size_t k = 0; k < t.coeffs.size(); ++k)
      if (t.coeffs[k] != Cplx(0))
        out.add_term(t.coeffs[k], static_cast<int>(k), t.exponent + alpha);
  return out;
}

ExpPoly dilate(double q, const ExpPoly& f) {
  if (!(q > 0.0)) throw std::domain_error("dilate: q must be > 0");
  ExpPoly out;
  for (const auto& t : f.terms()) {
    double qpow = q;  // q^(k+1)
    for (size_t k = 0; k < t.coeffs.size(); ++k) {
      if (t.coeffs[k] != Cplx(0))
        out.add_term(qpow * t.coeffs[k], static_cast<int>(k), q * t.exponent);
      qpow *= q;
    }
  }
  return out;
}

ExpPoly dds(const ExpPoly& f) {
  ExpPoly out;
  for (const auto& t : f.terms())
    for (size_t k = 0; k < t.coeffs.size(); ++k)
      if (t.coeffs[k] != Cplx(0))
        out.add_term(-t.coeffs[k], static_cast<int>(k) + 1, t.exponent);
  return out;
}

Realization d_dl(const ExpPoly& f) {
  if (f.is_zero()) return {Cplx(0), ExpPoly()};
  // D is additive, so the image is realized per term group: each summand
  // is a single-pole rational function whose partial fractions cost one
  // well-conditioned Taylor shift at its own pole.
  Poly s2 = Poly::variable() * Poly::variable();
  RatFun minus_s2(-s2, Poly(Cplx(1)));
  Realization out{Cplx(0), ExpPoly()};
  for (const ExpPoly::Term& t : f.terms()) {
    Realization part = realize(minus_s2 * term_to_ratfun(t).dds());
    out.const_part += part.const_part;
    out.fn += part.fn;
  }
  double scale = out.fn.max_coeff_abs();
  out.fn = out.fn.trimmed(1e-12 * std::max(1.0, scale));
  return out;
}

double ep_distance(const ExpPoly& a, const ExpPoly& b) {
  double worst = 0.0;
  std::vector<bool> used(b.terms().size(), false);
  for (const auto& ta : a.terms()) {
    const ExpPoly::Term* match = nullptr;
    for (size_t j = 0; j < b.terms().size(); ++j) {
      if (used[j]) continue;
      if (std::abs(b.terms()[j].exponent - ta.exponent) <= kPoleMergeTol) {
        match = &b.terms()[j];
        used[j] = true;
        break;
      }
    }
    size_t n = ta.coeffs.size();
    if (match) n = std::max(n, match->coeffs.size());
    for (size_t k = 0; k < n; ++k) {
      Cplx ca = k < ta.coeffs.size() ? ta.coeffs[k] : Cplx(0);
      Cplx cb = (match && k < match->coeffs.size()) ? match->coeffs[k] : Cplx(0);
      worst = std::max(worst, std::abs(ca - cb));
    }
  }
  for (size_t j = 0; j < b.terms().size(); ++j)
    if (!used[j])
      for (Cplx c : b.terms()[j].coeffs) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace opcalc
