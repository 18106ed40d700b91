#include <cstdio>
#include <string>

#include "opcalc/delay.hpp"
#include "opcalc/exppoly.hpp"
#include "opcalc/poly.hpp"
#include "opcalc/ratfun.hpp"

namespace opcalc {

std::string format_cplx(Cplx z, int sig_digits) {
  char buf[64];
  auto real = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, x);
    return std::string(buf);
  };
  if (z.imag() == 0.0) return real(z.real());
  if (z.real() == 0.0) return real(z.imag()) + "i";
  std::string out = "(" + real(z.real());
  out += (z.imag() >= 0.0) ? "+" + real(z.imag()) : "-" + real(-z.imag());
  return out + "i)";
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Cplx c = p.coeff(k);
    if (c == Cplx(0)) continue;
    if (!out.empty()) out += " + ";
    if (k == 0 || c != Cplx(1)) out += format_cplx(c);
    if (k >= 1) {
      if (c != Cplx(1)) out += "*";
      out += (k == 1) ? "s" : "s^" + std::to_string(k);
    }
  }
  return out;
}

std::string to_string(const RatFun& r) {
  if (r.den().degree() == 0) return to_string(r.num());
  return "(" + to_string(r.num()) + ") / (" + to_string(r.den()) + ")";
}

std::string to_string(const ExpPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& term : f.terms()) {
    for (size_t k = 0; k < term.coeffs.size(); ++k) {
      Cplx c = term.coeffs[k];
      if (c == Cplx(0)) continue;
      if (!out.empty()) out += " + ";
      out += format_cplx(c);
      if (k >= 1) out += (k == 1) ? "*t" : "*t^" + std::to_string(k);
      if (term.exponent != Cplx(0))
        out += "*exp(" + format_cplx(term.exponent) + "*t)";
    }
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const DelayElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& p : e.parts()) {
    if (!out.empty()) out += " + ";
    if (p.delay != 0.0) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "h^{%.12g}*", p.delay);
      out += buf;
    }
    out += "[" + to_string(p.fn) + "]";
  }
  return out;
}

std::string to_string(const PiecewiseEP& p) {
  std::string out;
  if (p.const_part != Cplx(0) || p.pieces.empty())
    out += "constant " + format_cplx(p.const_part);
  for (const auto& piece : p.pieces) {
    if (!out.empty()) out += "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "for t > %.12g:  ", piece.delay);
    out += buf;
    std::string body = to_string(piece.fn);
    // Pieces are written in local time u = t - delay.
    out += body + (piece.delay != 0.0 ? "   (in u = t - delay)" : "");
  }
  return out;
}

}  // namespace opcalc
