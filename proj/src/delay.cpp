#include "opcalc/delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opcalc {

DelayElement DelayElement::h_pow(double lambda) {
  if (!std::isfinite(lambda)) throw std::domain_error("h_pow: non-finite delay");
  DelayElement e;
  e.add_part(lambda, RatFun(Cplx(1)));
  return e;
}

DelayElement DelayElement::from_ratfun(const RatFun& r) {
  DelayElement e;
  e.add_part(0.0, r);
  return e;
}

void DelayElement::add_part(double delay, const RatFun& r) {
  if (!std::isfinite(delay)) throw std::domain_error("DelayElement: non-finite delay");
  if (r.is_zero()) return;
  auto it = std::find_if(parts_.begin(), parts_.end(), [&](const Part& p) {
    return std::abs(p.delay - delay) <= kDelayMergeTol;
  });
  if (it != parts_.end()) {
    it->fn = it->fn + r;
    if (it->fn.is_zero()) parts_.erase(it);
    return;
  }
  Part p{delay, r};
  auto pos = std::upper_bound(
      parts_.begin(), parts_.end(), delay,
      [](double d, const Part& q) { return d < q.delay; });
  parts_.insert(pos, std::move(p));
}

DelayElement DelayElement::operator-() const {
  DelayElement r(*this);
  for (auto& p : r.parts_) p.fn = -p.fn;
  return r;
}

DelayElement& DelayElement::operator+=(const DelayElement& rhs) {
  for (const Part& p : rhs.parts_) add_part(p.delay, p.fn);
  return *this;
}

DelayElement& DelayElement::operator-=(const DelayElement& rhs) {
  for (const Part& p : rhs.parts_) add_part(p.delay, -p.fn);
  return *this;
}

DelayElement operator*(const DelayElement& a, const DelayElement& b) {
  DelayElement out;
  for (const auto& pa : a.parts_)
    for (const auto& pb : b.parts_)
      out.add_part(pa.delay + pb.delay, pa.fn * pb.fn);
  return out;
}

DelayElement operator*(Cplx c, const DelayElement& e) {
  DelayElement out;
  for (const auto& p : e.parts_) out.add_part(p.delay, c * p.fn);
  return out;
}

void PiecewiseEP::add_piece(double delay, const ExpPoly& fn) {
  if (fn.is_zero()) return;
  auto it = std::find_if(pieces.begin(), pieces.end(), [&](const Piece& p) {
    return std::abs(p.delay - delay) <= kDelayMergeTol;
  });
  if (it != pieces.end()) {
    it->fn += fn;
    return;
  }
  auto pos = std::upper_bound(
      pieces.begin(), pieces.end(), delay,
      [](double d, const Piece& q) { return d < q.delay; });
  pieces.insert(pos, Piece{delay, fn});
}

Cplx PiecewiseEP::eval(double t) const {
  Cplx acc = const_part;
  for (const Piece& p : pieces) {
    bool active = (p.delay == 0.0) ? (t >= 0.0) : (t > p.delay);
    if (active) acc += p.fn.eval(t - p.delay);
  }
  return acc;
}

std::vector<double> PiecewiseEP::knots() const {
  std::vector<double> k;
  for (const Piece& p : pieces) k.push_back(p.delay);
  return k;
}

PiecewiseEP de_realize(const DelayElement& e) {
  PiecewiseEP out;
  for (const auto& p : e.parts()) {
    if (p.delay < -kDelayMergeTol)
      throw std::domain_error(
          "de_realize: negative delay is not realizable as a function");
    if (!p.fn.is_proper())
      throw std::domain_error(
          "de_realize: improper part is not realizable as a function");
    Realization r = realize(p.fn);
    if (std::abs(p.delay) <= kDelayMergeTol) {
      // h^0 = 1: the constant stays a field constant.
      out.const_part += r.const_part;
      out.add_piece(0.0, r.fn);
    } else {
      // For lambda > 0 the constant becomes the jump c * H_lambda(t).
      ExpPoly local = r.fn;
      if (r.const_part != Cplx(0)) local += ExpPoly::constant(r.const_part);
      out.add_piece(p.delay, local);
    }
  }
  return out;
}

DelayElement dilate(double q, const DelayElement& e) {
  if (!(q > 0.0)) throw std::domain_error("dilate: q must be > 0");
  DelayElement out;
  for (const auto& p : e.parts())
    out.add_part(p.delay / q, p.fn.subst_scale(q));
  return out;
}

DelayElement mahler(int d, const DelayElement& e) {
  if (d < 2) throw std::domain_error("mahler: d must be >= 2");
  return dilate(1.0 / d, e);
}

DelayElement dds(const DelayElement& e) {
  DelayElement out;
  for (const auto& p : e.parts())
    out.add_part(p.delay, p.fn.dds() - Cplx(p.delay) * p.fn);
  return out;
}

DelayElement d_dl(const DelayElement& e) {
  RatFun ms2(-(Poly::variable() * Poly::variable()), Poly(Cplx(1)));
  DelayElement derived = dds(e);
  DelayElement out;
  for (const auto& p : derived.parts()) out.add_part(p.delay, ms2 * p.fn);
  return out;
}

DelayElement d_dh(const DelayElement& e) {
  DelayElement derived = dds(e);
  DelayElement out;
  for (const auto& p : derived.parts()) out.add_part(p.delay - 1.0, -p.fn);
  return out;
}

DelayElement exp_shift(Cplx alpha, const DelayElement& e) {
  require_finite(alpha, "exp_shift");
  DelayElement out;
  for (const auto& p : e.parts())
    out.add_part(p.delay, std::exp(alpha * p.delay) * p.fn.subst_shift(alpha));
  return out;
}

double de_distance(const DelayElement& a, const DelayElement& b) {
  double worst = 0.0;
  std::vector<bool> used(b.parts().size(), false);
  for (const auto& pa : a.parts()) {
    const RatFun* match = nullptr;
    for (size_t j = 0; j < b.parts().size(); ++j) {
      if (used[j]) continue;
      if (std::abs(b.parts()[j].delay - pa.delay) <= kDelayMergeTol) {
        match = &b.parts()[j].fn;
        used[j] = true;
        break;
      }
    }
    worst = std::max(worst, ratfun_distance(pa.fn, match ? *match : RatFun()));
  }
  for (size_t j = 0; j < b.parts().size(); ++j)
    if (!used[j])
      worst = std::max(worst, ratfun_distance(b.parts()[j].fn, RatFun()));
  return worst;
}

PiecewiseEP jump_realize(const JumpSeries& j) {
  if (j.coeffs.size() != j.delays.size())
    throw std::domain_error("jump_realize: coefficient/delay length mismatch");
  for (size_t n = 0; n < j.delays.size(); ++n) {
    if (j.delays[n] < 0.0)
      throw std::domain_error("jump_realize: negative delay");
    if (n > 0 && !(j.delays[n] > j.delays[n - 1]))
      throw std::domain_error("jump_realize: delays must be strictly increasing");
  }
  PiecewiseEP out;
  for (size_t n = 0; n < j.coeffs.size(); ++n)
    out.add_piece(j.delays[n], ExpPoly::term(j.coeffs[n], 1, Cplx(0)));
  return out;
}

std::vector<Cplx> jump_extract(const PiecewiseEP& g, int count) {
  if (count < 0) throw std::domain_error("jump_extract: negative count");
  if (std::abs(g.const_part) > 1e-9)
    throw std::domain_error("jump_extract: nonzero constant part");
  for (const auto& p : g.pieces) {
    if (std::abs(p.delay - std::round(p.delay)) > 1e-9)
      throw std::domain_error("jump_extract: non-integer knots");
    for (const auto& t : p.fn.terms()) {
      if (std::abs(t.exponent) > 1e-9 || t.coeffs.size() > 2)
        throw std::domain_error("jump_extract: not piecewise linear");
      if (!t.coeffs.empty() && std::abs(t.coeffs[0]) > 1e-9)
        throw std::domain_error("jump_extract: jump discontinuity at a knot");
    }
  }
  std::vector<Cplx> alpha(count + 1, Cplx(0));
  for (int m = 0; m <= count; ++m) {
    Cplx val = g.eval(m + 1.0);
    for (int n = 0; n < m; ++n)
      val -= alpha[n] * static_cast<double>(m + 1 - n);
    alpha[m] = val;
  }
  return alpha;
}

}  // namespace opcalc
