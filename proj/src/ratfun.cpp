#include "opcalc/ratfun.hpp"

#include <complex>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opcalc {

namespace {

// Union of two factor lists; multiplicities of poles within the merge
// tolerance add up.
std::vector<PoleFactor> merge_factors(const std::vector<PoleFactor>& a,
                                      const std::vector<PoleFactor>& b) {
  std::vector<PoleFactor> out = a;
  for (const PoleFactor& f : b) {
    bool hit = false;
    for (PoleFactor& g : out)
      if (std::abs(g.pole - f.pole) <= kPoleMergeTol) {
        g.mult += f.mult;
        hit = true;
        break;
      }
    if (!hit) out.push_back(f);
  }
  return out;
}

std::optional<std::vector<PoleFactor>> merge_hints(
    const std::optional<std::vector<PoleFactor>>& a,
    const std::optional<std::vector<PoleFactor>>& b) {
  if (!a || !b) return std::nullopt;
  return merge_factors(*a, *b);
}

}  // namespace

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

RatFun::RatFun(Poly num, Poly den, std::vector<PoleFactor> den_factors)
    : num_(std::move(num)),
      den_(std::move(den)),
      den_factors_(std::move(den_factors)) {
  normalize();
}

void RatFun::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(Cplx(1));
    den_factors_ = std::vector<PoleFactor>{};
    return;
  }
  Cplx lead = den_.leading();
  num_ = (Cplx(1) / lead) * num_;
  den_ = (Cplx(1) / lead) * den_;
  if (den_.degree() == 0 && !den_factors_)
    den_factors_ = std::vector<PoleFactor>{};
}

RatFun RatFun::operator-() const {
  RatFun r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  RatFun r(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  if (!r.is_zero()) r.den_factors_ = merge_hints(a.den_factors_, b.den_factors_);
  return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  RatFun r(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  if (!r.is_zero()) r.den_factors_ = merge_hints(a.den_factors_, b.den_factors_);
  return r;
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  RatFun r(a.num_ * b.num_, a.den_ * b.den_);
  if (!r.is_zero()) r.den_factors_ = merge_hints(a.den_factors_, b.den_factors_);
  return r;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
  RatFun r(a.num_ * b.den_, a.den_ * b.num_);
  // A constant divisor numerator contributes no new denominator factors.
  if (!r.is_zero() && b.num_.degree() == 0) r.den_factors_ = a.den_factors_;
  return r;
}

RatFun operator*(Cplx c, const RatFun& r) {
  RatFun out(c * r.num_, r.den_);
  if (!out.is_zero()) out.den_factors_ = r.den_factors_;
  return out;
}

RatFun RatFun::subst_shift(Cplx alpha) const {
  RatFun r(num_.compose_shift(alpha), den_.compose_shift(alpha));
  if (!r.is_zero() && den_factors_) {
    std::vector<PoleFactor> shifted = *den_factors_;
    for (PoleFactor& f : shifted) f.pole += alpha;
    r.den_factors_ = std::move(shifted);
  }
  return r;
}

RatFun RatFun::subst_scale(double q) const {
  RatFun r(num_.compose_scale(q), den_.compose_scale(q));
  if (!r.is_zero() && den_factors_) {
    std::vector<PoleFactor> scaled = *den_factors_;
    for (PoleFactor& f : scaled) f.pole *= q;
    r.den_factors_ = std::move(scaled);
  }
  return r;
}

RatFun RatFun::dds() const {
  RatFun r(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  if (!r.is_zero() && den_factors_) {
    std::vector<PoleFactor> doubled = *den_factors_;
    for (PoleFactor& f : doubled) f.mult *= 2;
    r.den_factors_ = std::move(doubled);
  }
  return r;
}

namespace {

struct PoleCluster {
  Cplx centroid;
  int multiplicity = 0;
};

std::vector<PoleCluster> cluster_poles(const std::vector<Cplx>& roots) {
  std::vector<PoleCluster> clusters;
  for (Cplx r : roots) {
    PoleCluster* hit = nullptr;
    for (auto& c : clusters)
      if (std::abs(r - c.centroid) <= kPoleMergeTol) {
        hit = &c;
        break;
      }
    if (hit) {
      // Running mean keeps the centroid stable as members join.
      hit->centroid =
          (hit->centroid * static_cast<double>(hit->multiplicity) + r) /
          static_cast<double>(hit->multiplicity + 1);
      hit->multiplicity += 1;
    } else {
      clusters.push_back({r, 1});
    }
  }
  return clusters;
}

// The residue series divides by the other factors evaluated at the pole;
// when that product sits at rounding level relative to the residues it can
// support, the split poles cannot be resolved in double precision.
// Merging them into one cluster at the multiplicity-weighted centroid
// perturbs the denominator only quadratically in the separation, so it is
// the stable representation of such near-degenerate structures.  The
// criterion works in log magnitudes (the factored value can underflow).
void merge_unresolvable(std::vector<PoleCluster>& clusters) {
  bool merged = true;
  while (merged && clusters.size() > 1) {
    merged = false;
    for (size_t j = 0; j < clusters.size() && !merged; ++j) {
      double log_d0 = 0.0;
      for (size_t i = 0; i < clusters.size(); ++i) {
        if (i == j) continue;
        double sep = std::abs(clusters[i].centroid - clusters[j].centroid) /
                     (1.0 + std::abs(clusters[j].centroid));
        log_d0 +=
            clusters[i].multiplicity * std::log10(std::max(sep, 1e-300));
      }
      if (log_d0 >= -10.0) continue;
      size_t nearest = j == 0 ? 1 : 0;
      for (size_t i = 0; i < clusters.size(); ++i)
        if (i != j && std::abs(clusters[i].centroid - clusters[j].centroid) <
                          std::abs(clusters[nearest].centroid -
                                   clusters[j].centroid))
          nearest = i;
      int total = clusters[j].multiplicity + clusters[nearest].multiplicity;
      clusters[nearest].centroid =
          (clusters[j].centroid * static_cast<double>(clusters[j].multiplicity) +
           clusters[nearest].centroid *
               static_cast<double>(clusters[nearest].multiplicity)) /
          static_cast<double>(total);
      clusters[nearest].multiplicity = total;
      clusters.erase(clusters.begin() + j);
      merged = true;
    }
  }
}

// The residue pipeline runs in extended precision: Taylor-shifting the
// numerator at an outer pole amplifies rounding by ~(1+|pole|)^deg, which
// for deeply composed elements eats most of a double's mantissa.
using Cld = std::complex<long double>;

// Taylor coefficients of p about the pole (in-place Horner shift).
std::vector<Cld> shift_taylor(const Poly& p, Cld pole, int len) {
  std::vector<Cld> b;
  b.reserve(p.coeffs().size());
  for (Cplx c : p.coeffs()) b.emplace_back(c.real(), c.imag());
  const int n = static_cast<int>(b.size()) - 1;
  for (int k = 0; k < len && k <= n; ++k)
    for (int i = n - 1; i >= k; --i) b[i] += pole * b[i + 1];
  b.resize(len, Cld(0));
  return b;
}

// Taylor coefficients, about the pole, of 1/(s - lambda)^mult: the
// binomial series of (d + u)^{-mult} with d = pole - lambda.  Keeping the
// denominator in factored form here is what makes residues of
// high-multiplicity structures computable: expanding the cofactor into
// monomial coefficients first loses the structure to cancellation.
std::vector<Cld> inverse_factor_series(Cld pole, Cld lambda, int mult,
                                       int len) {
  const Cld d = pole - lambda;
  std::vector<Cld> c(len);
  Cld lead(1);
  for (int k = 0; k < mult; ++k) lead /= d;
  c[0] = lead;
  for (int k = 0; k + 1 < len; ++k)
    c[k + 1] = c[k] * Cld(-(mult + k)) / (Cld(k + 1.0L) * d);
  return c;
}

std::vector<Cld> mul_series(const std::vector<Cld>& a,
                            const std::vector<Cld>& b, int len) {
  std::vector<Cld> out(len, Cld(0));
  for (int i = 0; i < len; ++i)
    for (int j = 0; i + j < len && j < static_cast<int>(b.size()); ++j)
      if (i < static_cast<int>(a.size())) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

PartialFractions partial_fractions(const RatFun& r) {
  PartialFractions out;
  auto [quot, rem] = Poly::divrem(r.num(), r.den());
  out.poly_part = quot;
  if (rem.is_zero()) return out;

  std::vector<PoleCluster> clusters;
  if (r.den_factors()) {
    // Trust the carried factorization only if it reproduces the stored
    // denominator coefficientwise.
    Poly rebuilt(Cplx(1));
    for (const PoleFactor& f : *r.den_factors()) {
      Poly lin(std::vector<Cplx>{-f.pole, Cplx(1)});
      for (int k = 0; k < f.mult; ++k) rebuilt = rebuilt * lin;
    }
    double scale = std::max(1.0, r.den().max_coeff_abs());
    if ((rebuilt - r.den()).max_coeff_abs() <= 1e-9 * scale)
      for (const PoleFactor& f : *r.den_factors())
        clusters.push_back({f.pole, f.mult});
  }
  if (clusters.empty()) {
    std::vector<Cplx> roots = find_roots(r.den());
    clusters = cluster_poles(roots);
  }
  merge_unresolvable(clusters);

  for (size_t j = 0; j < clusters.size(); ++j) {
    const Cplx pole = clusters[j].centroid;
    const int m = clusters[j].multiplicity;

    // Taylor coefficients of g = rem / prod_other about the pole, to order
    // m-1, with the cofactor kept in factored form throughout.
    const Cld pole_ld(pole.real(), pole.imag());
    std::vector<Cld> g = shift_taylor(rem, pole_ld, m);
    for (size_t i = 0; i < clusters.size(); ++i) {
      if (i == j) continue;
      if (std::abs(clusters[i].centroid - pole) == 0.0)
        throw numerical_error("partial_fractions: pole clusters not separated",
                              0.0);
      Cld other(clusters[i].centroid.real(), clusters[i].centroid.imag());
      g = mul_series(
          g, inverse_factor_series(pole_ld, other, clusters[i].multiplicity, m),
          m);
    }
    // g_i/(s-pole)^(m-i): coefficient of the order-(m-i) term.
    for (int i = 0; i < m; ++i) {
      Cplx coeff(static_cast<double>(g[i].real()),
                 static_cast<double>(g[i].imag()));
      if (coeff != Cplx(0)) out.terms.push_back({pole, m - i, coeff});
    }
  }

  // Post-condition: the decomposition recombines to the input.  Root
  // structures blurred beyond double-precision resolution would otherwise
  // come back as silently wrong residues; better to refuse.  The mismatch
  // is judged against the precision either side can reach at the check
  // point (polynomial evaluation and residue summation both amplify
  // rounding by their term magnitudes), with a hard cap: anything worse
  // than 1e-3 relative is refused no matter how ill-conditioned.
  double pole_reach = 1.0;
  for (const PfTerm& t : out.terms)
    pole_reach = std::max(pole_reach, std::abs(t.pole));
  const double check_radius = 2.0 * pole_reach + 1.0;
  double worst_excess = 0.0;
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double theta = 0.3 + 6.283185307179586 * i / 8;
    const Cplx z = check_radius * Cplx(std::cos(theta), std::sin(theta));
    Cplx direct = r.eval(z);
    Cplx recombined = out.poly_part.eval(z);
    double sum_scale = std::abs(recombined);
    for (const PfTerm& t : out.terms) {
      Cplx term = t.coeff / std::pow(z - t.pole, t.order);
      recombined += term;
      sum_scale += std::abs(term);
    }
    double eval_scale = 0.0;
    double zpow = 1.0;
    for (Cplx c : r.num().coeffs()) {
      eval_scale += std::abs(c) * zpow;
      zpow *= std::abs(z);
    }
    eval_scale /= std::max(std::abs(r.den().eval(z)), 1e-300);
    const double denom = 1.0 + std::abs(direct);
    const double mismatch = std::abs(direct - recombined) / denom;
    const double allowed = std::min(
        1e-3, 1e-6 + 1e-13 * (eval_scale + sum_scale) / denom);
    worst = std::max(worst, mismatch);
    worst_excess = std::max(worst_excess, mismatch - allowed);
  }
  if (worst_excess > 0.0)
    throw numerical_error("partial_fractions: recombination check failed",
                          worst);
  return out;
}

RatFun pf_recombine(const PartialFractions& pf) {
  RatFun acc(pf.poly_part, Poly(Cplx(1)));
  for (const PfTerm& t : pf.terms) {
    Poly lin(std::vector<Cplx>{-t.pole, Cplx(1)});
    Poly den(Cplx(1));
    for (int k = 0; k < t.order; ++k) den = den * lin;
    acc = acc + RatFun(Poly(t.coeff), den);
  }
  return acc;
}

double ratfun_distance(const RatFun& a, const RatFun& b) {
  Poly x = a.num() * b.den();
  Poly y = b.num() * a.den();
  double scale = std::max({x.max_coeff_abs(), y.max_coeff_abs(), 1.0});
  return (x - y).max_coeff_abs() / scale;
}

}  // namespace opcalc
