#include "opcalc/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opcalc {

Poly Poly::from_roots(std::span<const Cplx> roots) {
  Poly p(Cplx(1));
  for (Cplx r : roots) {
    require_finite(r, "from_roots");
    p = p * Poly(std::vector<Cplx>{-r, Cplx(1)});
  }
  return p;
}

double Poly::max_coeff_abs() const {
  double m = 0.0;
  for (Cplx c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Cplx Poly::eval(Cplx s) const {
  Cplx acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * s + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Cplx> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::compose_shift(Cplx alpha) const {
  // Horner in the linear factor (s - alpha).
  require_finite(alpha, "compose_shift");
  Poly lin(std::vector<Cplx>{-alpha, Cplx(1)});
  Poly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * lin + Poly(*it);
  return acc;
}

Poly Poly::compose_scale(double q) const {
  if (!(q > 0.0)) throw std::domain_error("compose_scale: q must be > 0");
  std::vector<Cplx> out(coeffs_);
  double f = 1.0;
  for (size_t k = 0; k < out.size(); ++k) {
    out[k] *= f;
    f /= q;
  }
  return Poly(std::move(out));
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (Cplx& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, Cplx(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(out));
}

Poly operator*(Cplx c, const Poly& p) {
  require_finite(c, "Poly scale");
  Poly r(p);
  for (Cplx& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Cplx> rem = a.coeffs_;
  std::vector<Cplx> quot(a.degree() - b.degree() + 1, Cplx(0));
  Cplx lead = b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Cplx q = rem[k + b.degree()] / lead;
    quot[k] = q;
    for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {

// One Aberth-Ehrlich sweep; returns the largest relative step taken.
double aberth_sweep(const Poly& p, const Poly& dp, std::vector<Cplx>& z) {
  double worst = 0.0;
  const size_t n = z.size();
  for (size_t i = 0; i < n; ++i) {
    Cplx pv = p.eval(z[i]);
    if (pv == Cplx(0)) continue;
    Cplx dv = dp.eval(z[i]);
    if (dv == Cplx(0)) {
      z[i] += Cplx(1e-6, 1e-6) * (1.0 + std::abs(z[i]));
      worst = 1.0;
      continue;
    }
    Cplx ratio = pv / dv;
    Cplx sum(0);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Cplx d = z[i] - z[j];
      if (std::abs(d) < 1e-300) d = Cplx(1e-300, 0);
      sum += Cplx(1) / d;
    }
    Cplx denom = Cplx(1) - ratio * sum;
    Cplx step = (std::abs(denom) < 1e-300) ? ratio : ratio / denom;
    z[i] -= step;
    worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
  }
  return worst;
}

// Newton refinement of a simple root of g, to machine precision.
Cplx newton_refine(const Poly& g, const Poly& dg, Cplx z) {
  for (int it = 0; it < 30; ++it) {
    Cplx gv = g.eval(z);
    Cplx dv = dg.eval(z);
    if (gv == Cplx(0) || dv == Cplx(0)) break;
    Cplx step = gv / dv;
    if (!is_finite(step)) break;
    z -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// Transitive chaining at a relative tolerance.
std::vector<std::vector<Cplx>> chain_points(const std::vector<Cplx>& pts,
                                            double rel_tol) {
  std::vector<std::vector<Cplx>> groups;
  std::vector<bool> used(pts.size(), false);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<Cplx> members{pts[i]};
    used[i] = true;
    for (size_t scan = 0; scan < members.size(); ++scan)
      for (size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(pts[j] - members[scan]) <=
            rel_tol * (1.0 + std::abs(members[scan]))) {
          used[j] = true;
          members.push_back(pts[j]);
        }
      }
    groups.push_back(std::move(members));
  }
  return groups;
}

std::vector<Cplx> aberth_solve(const Poly& monic) {
  const int n = monic.degree();
  const Poly dp = monic.derivative();
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::abs(monic.coeff(k)));
  radius = 1.0 + radius;
  std::vector<Cplx> z(n);
  for (int i = 0; i < n; ++i) {
    double theta = 2.0 * std::numbers::pi * i / n + 0.4;
    z[i] = radius * Cplx(std::cos(theta), std::sin(theta));
  }
  for (int it = 0; it < 400; ++it)
    if (aberth_sweep(monic, dp, z) < 1e-14) break;
  return z;
}

std::vector<Cplx> companion_roots(const Poly& monic);

// A simultaneous iteration cannot separate an m-fold root from rounding
// noise below ~eps^(1/m) (already 5e-3 relative for m = 6), so its raw
// output is only a stall cluster around each multiple root, possibly mixed
// with close-by distinct roots.  Structure is recovered by multiplicity
// descent with deflation: chain the stalled points coarsely, try the
// largest multiplicity first, pull the candidate through the (m-1)-th
// derivative (where an m-fold root is simple and Newton reaches machine
// precision), and accept it only if p and its first m-1 derivatives all
// vanish there to rounding accuracy.  Accepted roots are deflated out and
// the quotient is re-solved, which cleanly separates a lone neighbor from
// the cluster that swallowed it.  Returned multiple roots are exact
// copies, so the 1e-8 pole merge downstream is reliable.
class RootExtractor {
 public:
  explicit RootExtractor(const Poly& monic) : degree_(monic.degree()) {
    derivs_.push_back(monic);
    for (int k = 0; k < monic.degree(); ++k)
      derivs_.push_back(derivs_.back().derivative());
    for (const Poly& d : derivs_) {
      double n1 = 0.0;
      for (Cplx c : d.coeffs()) n1 += std::abs(c);
      norms_.push_back(std::max(n1, 1e-300));
    }
  }

  // True iff r is (at least) an m-fold root of the original polynomial up
  // to rounding.  A true m-fold root leaves ~1e-13 relative at worst; a
  // chain of distinct roots contaminates the middle derivatives by powers
  // of its separation.
  bool validate(Cplx r, int m) const {
    if (m > degree_) return false;
    const double x = std::max(1.0, std::abs(r));
    for (int j = 0; j < m; ++j) {
      double scale = norms_[j] * std::pow(x, derivs_[j].degree());
      if (std::abs(derivs_[j].eval(r)) > 1e-9 * scale) return false;
    }
    return true;
  }

  // True iff the m-th derivative is clearly nonzero at r, so the
  // multiplicity is exactly m at working resolution.  When this fails for
  // every validating m, the location carries structure finer than double
  // precision resolves; the largest validating m is then the stable call
  // (merging such twins perturbs coefficients only quadratically).
  bool exact_multiplicity(Cplx r, int m) const {
    if (m >= static_cast<int>(derivs_.size())) return true;
    const double x = std::max(1.0, std::abs(r));
    double scale = norms_[m] * std::pow(x, derivs_[m].degree());
    return std::abs(derivs_[m].eval(r)) > 1e-9 * scale;
  }

  // Where are the actual roots around a claim of "m-fold at r"?  Probe
  // growing discs with the argument principle until at least m roots are
  // inside (coefficient rounding scatters an exact m-fold root over a
  // radius ~(eps*kappa)^(1/m), which depends on conditioning, so the disc
  // must adapt).  This is what separates a genuine multiple root from a
  // critical point flanked by unresolved twins: the derivative flatness
  // checks cannot tell them apart, the winding number can.
  struct RootBall {
    int count = 0;       // roots in the accepted disc
    bool isolated = false;  // and none in the surrounding annulus
  };
  RootBall probe_roots(Cplx r, int m) const {
    static constexpr double kRadius[8] = {1e-9, 1e-6, 5e-5, 1e-3,
                                          3e-3,  1e-2, 2e-2, 3e-2};
    const double unit = 1.0 + std::abs(r);
    const double cap = 0.02 * unit;
    double rho = std::min(kRadius[std::clamp(m - 1, 0, 7)] * unit, cap);
    RootBall ball;
    for (int grow = 0; grow < 10; ++grow) {
      ball.count = winding_count(r, rho);
      if (ball.count >= m || rho >= cap) break;
      rho = std::min(rho * 3.7, cap);
    }
    if (ball.count == m)
      ball.isolated = winding_count(r, 3.0 * rho) == m;
    return ball;
  }

  int winding_count(Cplx center, double radius) const {
    int samples = 512;
    for (int attempt = 0; attempt < 3; ++attempt) {
      double total = 0.0;
      bool ok = true;
      Cplx prev = derivs_[0].eval(center + Cplx(radius, 0));
      for (int i = 1; i <= samples && ok; ++i) {
        double theta = 2.0 * std::numbers::pi * i / samples;
        Cplx v = derivs_[0].eval(center +
                                 radius * Cplx(std::cos(theta), std::sin(theta)));
        if (v == Cplx(0) || prev == Cplx(0)) {
          ok = false;
          break;
        }
        double delta = std::arg(v / prev);
        if (std::abs(delta) > 2.8) ok = false;  // step too coarse
        total += delta;
        prev = v;
      }
      if (ok) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
      samples *= 4;
      radius *= 1.017;  // nudge off any root sitting on the contour
    }
    return -1;
  }

  std::vector<Cplx> run(bool use_companion) const {
    Poly work = derivs_[0];
    std::vector<Cplx> out;
    while (work.degree() > 0) {
      if (work.degree() == 1) {
        out.push_back(-work.coeff(0) / work.coeff(1));
        break;
      }
      std::vector<Cplx> pts =
          use_companion ? companion_roots(work) : aberth_solve(work);
      // Coarse enough to keep a whole stall blob in one group even at high
      // multiplicity and condition; distinct roots wrongly chained are
      // separated again by the descent, at worst costing extra sweeps.
      auto groups = chain_points(pts, 0.15);
      std::sort(groups.begin(), groups.end(),
                [](const auto& a, const auto& b) { return a.size() > b.size(); });

      double wnorm = 0.0;
      for (Cplx c : work.coeffs()) wnorm += std::abs(c);

      bool accepted = false;
      for (const auto& group : groups) {
        Cplx center(0);
        for (Cplx z : group) center += z;
        center /= static_cast<double>(group.size());
        double spread = 0.0;
        for (Cplx z : group) spread = std::max(spread, std::abs(z - center));

        // Candidate starting points: the centroid plus the raw members,
        // which already sit next to whatever structure is there.
        std::vector<Cplx> starts{center};
        starts.insert(starts.end(), group.begin(), group.end());

        int ambiguous_m = 0;
        Cplx ambiguous_r;
        int exact_m = 0;
        Cplx exact_r;
        for (int m = static_cast<int>(group.size()); m >= 1; --m) {
          for (Cplx start : starts) {
            // Refine on the pristine original: deflation rounding in work
            // splits surviving multiple roots and poisons its derivatives.
            Cplx r = newton_refine(derivs_[m - 1], derivs_[m], start);
            if (std::abs(r - center) >
                4.0 * spread + 1e-6 * (1.0 + std::abs(center)))
              continue;  // wandered off the cluster
            if (!validate(r, m)) continue;
            // The deflated polynomial must still contain the root; guards
            // against re-accepting an already extracted location.
            if (std::abs(work.eval(r)) >
                1e-8 * wnorm *
                    std::pow(std::max(1.0, std::abs(r)), work.degree()))
              continue;
            RootBall ball = probe_roots(r, m);
            if (exact_multiplicity(r, m) && ball.count == m && ball.isolated) {
              exact_m = m;
              exact_r = r;
              break;
            }
            if (ambiguous_m == 0 && ball.count >= m) {
              ambiguous_m = m;
              ambiguous_r = r;
            }
            // keep scanning the other starts for an exact hit
          }
          if (exact_m) break;  // largest exactly-resolved multiplicity wins
        }
        int m = exact_m ? exact_m : ambiguous_m;
        Cplx r = exact_m ? exact_r : ambiguous_r;
        if (m > 0) {
          for (int k = 0; k < m; ++k) {
            out.push_back(r);
            work = deflate(work, r);
          }
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // No validated structure anywhere: emit Newton-polished raw points
        // and let the caller's residual gate decide.
        Poly dwork = work.derivative();
        for (Cplx z : pts) out.push_back(newton_refine(work, dwork, z));
        break;
      }
    }
    return out;
  }

 private:
  // Synthetic division by (z - r); the remainder is dropped.
  static Poly deflate(const Poly& p, Cplx r) {
    const int n = p.degree();
    if (n < 1) return Poly();
    std::vector<Cplx> q(n);
    Cplx carry = p.coeff(n);
    for (int k = n - 1; k >= 0; --k) {
      q[k] = carry;
      carry = p.coeff(k) + r * carry;
    }
    return Poly(std::move(q));
  }

  int degree_;
  std::vector<Poly> derivs_;
  std::vector<double> norms_;
};

double worst_residual(const Poly& p, const std::vector<Cplx>& z) {
  double worst = 0.0;
  for (Cplx r : z) worst = std::max(worst, std::abs(p.eval(r)));
  return worst;
}

std::vector<Cplx> companion_roots(const Poly& monic) {
  const int n = monic.degree();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic.coeff(i);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  std::vector<Cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = solver.eigenvalues()(i);
  return z;
}

}  // namespace

std::vector<Cplx> find_roots(const Poly& p) {
  if (p.degree() < 1) throw std::domain_error("find_roots: degree must be >= 1");
  const double target = 1e-9 * p.max_coeff_abs();

  Poly monic = (Cplx(1) / p.leading()) * p;
  if (monic.degree() == 1) return {-monic.coeff(0)};

  RootExtractor extractor(monic);
  std::vector<Cplx> z = extractor.run(false);
  double best = worst_residual(p, z);
  if (z.size() == static_cast<size_t>(monic.degree()) && best <= target)
    return z;

  // Companion-matrix fallback through the same extraction.
  std::vector<Cplx> zc = extractor.run(true);
  double res = worst_residual(p, zc);
  if (zc.size() == static_cast<size_t>(monic.degree()) && res <= target)
    return zc;

  throw numerical_error("find_roots: residual target not reached",
                        std::min(best, res));
}

}  // namespace opcalc
