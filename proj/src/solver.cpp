#include "opcalc/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace opcalc {

ExpPoly solve_lode(const OdeProblem& p) {
  if (p.coeffs.empty())
    throw std::invalid_argument("solve_lode: no coefficients");
  const int n = static_cast<int>(p.coeffs.size()) - 1;
  if (static_cast<int>(p.init.size()) != n)
    throw std::invalid_argument("solve_lode: need exactly n initial values");

  Poly charpoly(std::vector<Cplx>(p.coeffs));
  if (charpoly.degree() != n)
    throw std::domain_error("solve_lode: leading coefficient must be nonzero");

  // sum_k a_k (s^k F - sum_{j<k} s^(k-1-j) f^(j)(0)) = R(s).
  Poly init_poly;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j < k; ++j) {
      std::vector<Cplx> mono(k - j, Cplx(0));
      mono.back() = p.coeffs[k] * p.init[j];  // a_k f^(j)(0) s^(k-1-j)
      init_poly += Poly(std::move(mono));
    }
  }

  RatFun rhs_s = unrealize(Cplx(0), p.rhs);
  RatFun F = (rhs_s + RatFun(init_poly, Poly(Cplx(1)))) /
             RatFun(charpoly, Poly(Cplx(1)));
  return realize(F).fn;  // strictly proper by degree bookkeeping
}

PiecewiseEP solve_delay_geom(const DelayProblem& p) {
  if (!(p.horizon > 0.0))
    throw std::domain_error("solve_delay_geom: horizon must be > 0");
  require_finite(p.c, "solve_delay_geom");
  const int terms = static_cast<int>(std::ceil(p.horizon));
  PiecewiseEP x;
  Cplx cn(1);
  for (int n = 0; n <= terms; ++n) {
    x.add_piece(static_cast<double>(n), cn * p.forcing);
    cn *= p.c;
  }
  return x;
}

ExpPoly ddt(const ExpPoly& f) {
  ExpPoly out;
  for (const auto& t : f.terms())
    for (size_t k = 0; k < t.coeffs.size(); ++k) {
      if (t.coeffs[k] == Cplx(0)) continue;
      if (k > 0)
        out.add_term(static_cast<double>(k) * t.coeffs[k],
                     static_cast<int>(k) - 1, t.exponent);
      if (t.exponent != Cplx(0))
        out.add_term(t.exponent * t.coeffs[k], static_cast<int>(k), t.exponent);
    }
  return out;
}

}  // namespace opcalc
