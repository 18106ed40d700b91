#include "opcalc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace opcalc {

SampledFn SampledFn::sample(const std::function<Cplx(double)>& f, double T,
                            int N) {
  if (!(T > 0.0)) throw std::domain_error("sample: horizon must be > 0");
  if (N < 2) throw std::domain_error("sample: need at least 2 intervals");
  SampledFn out;
  out.horizon = T;
  out.count = N;
  out.values.resize(N + 1);
  const double dt = T / N;
  for (int i = 0; i <= N; ++i) {
    out.values[i] = f(i * dt);
    require_finite(out.values[i], "sample");
  }
  return out;
}

Cplx SampledFn::interp(double t) const {
  const double x = t / dt();
  if (x <= 0.0) return values.front();
  if (x >= count) return values.back();
  const double fl = std::floor(x);
  const double frac = x - fl;
  const int i = static_cast<int>(fl);
  if (frac < 1e-9) return values[i];
  if (frac > 1.0 - 1e-9) return values[i + 1];
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

namespace {

void require_same_grid(const SampledFn& a, const SampledFn& b,
                       const char* what) {
  if (a.count != b.count ||
      std::abs(a.horizon - b.horizon) > 1e-12 * std::max(a.horizon, b.horizon))
    throw std::domain_error(std::string(what) + ": grid mismatch");
}

}  // namespace

SampledFn conv_trapezoid(const SampledFn& a, const SampledFn& b) {
  require_same_grid(a, b, "conv_trapezoid");
  SampledFn out;
  out.horizon = a.horizon;
  out.count = a.count;
  out.values.assign(a.count + 1, Cplx(0));
  const double dt = a.dt();
  for (int k = 1; k <= a.count; ++k) {
    Cplx acc = 0.5 * (a.values[0] * b.values[k] + a.values[k] * b.values[0]);
    for (int j = 1; j < k; ++j) acc += a.values[j] * b.values[k - j];
    out.values[k] = dt * acc;
  }
  return out;
}

SampledFn mul_exp(Cplx alpha, const SampledFn& a) {
  require_finite(alpha, "mul_exp");
  SampledFn out = a;
  const double dt = a.dt();
  for (int i = 0; i <= a.count; ++i) out.values[i] *= std::exp(alpha * (i * dt));
  return out;
}

SampledFn mul_negt(const SampledFn& a) {
  SampledFn out = a;
  const double dt = a.dt();
  for (int i = 0; i <= a.count; ++i) out.values[i] *= -(i * dt);
  return out;
}

SampledFn dilate_sampled(double q, const SampledFn& a) {
  if (!(q > 0.0)) throw std::domain_error("dilate_sampled: q must be > 0");
  SampledFn out;
  const double dt = a.dt();
  out.count = (q > 1.0) ? static_cast<int>(std::floor(a.count / q)) : a.count;
  if (out.count < 2)
    throw std::domain_error("dilate_sampled: dilated horizon has no grid");
  out.horizon = out.count * dt;
  out.values.resize(out.count + 1);
  for (int i = 0; i <= out.count; ++i) out.values[i] = q * a.interp(q * i * dt);
  return out;
}

SampledFn shift_sampled(double lambda, const SampledFn& a) {
  if (lambda < 0.0) throw std::domain_error("shift_sampled: negative shift");
  SampledFn out = a;
  const double dt = a.dt();
  for (int i = 0; i <= a.count; ++i) {
    const double t = i * dt;
    out.values[i] = (t >= lambda) ? a.interp(t - lambda) : Cplx(0);
  }
  return out;
}

// --- special functions ----------------------------------------------------

namespace {

constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

Cplx gamma_lanczos(Cplx z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::numbers::pi /
           (std::sin(std::numbers::pi * z) * gamma_lanczos(Cplx(1) - z));
  }
  z -= Cplx(1);
  Cplx x(kLanczos[0]);
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + Cplx(i));
  Cplx t = z + Cplx(7.5);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + Cplx(0.5)) *
         std::exp(-t) * x;
}

}  // namespace

Cplx gamma_fn(Cplx z) {
  require_finite(z, "gamma_fn");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  return gamma_lanczos(z);
}

double gamma_fn(double x) { return gamma_fn(Cplx(x)).real(); }

double erf_fn(double x) {
  if (x < 0.0) return -erf_fn(-x);
  if (x == 0.0) return 0.0;
  const double rt_pi = std::sqrt(std::numbers::pi);
  if (x <= 3.0) {
    // erf(x) = 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1)).
    double sum = x;
    double pow_term = x;  // x^(2n+1)/n!
    for (int n = 1; n <= 200; ++n) {
      pow_term *= -x * x / n;
      const double term = pow_term / (2 * n + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return 2.0 / rt_pi * sum;
  }
  // Continued fraction for the complement (modified Lentz):
  // sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int n = 1; n <= 200; ++n) {
    const double an = (n == 1) ? 1.0 : (n - 1) / 2.0;
    const double bn = x;
    d = bn + an * d;
    if (std::abs(d) < tiny) d = tiny;
    c = bn + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  const double erfc = std::exp(-x * x) / rt_pi * f;
  return 1.0 - erfc;
}

double bessel_j0(double x) {
  if (!(std::abs(x) <= 12.0))
    throw std::range_error("bessel_j0: validated for |x| <= 12 only");
  // J0(x) = sum (-1)^k (x/2)^(2k) / (k!)^2.
  const double h = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 120; ++k) {
    term *= -h / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

// --- fractional powers ----------------------------------------------------

SampledFn frac_power_fn(Cplx alpha, double lambda, double T, int N) {
  require_finite(alpha, "frac_power_fn");
  if (!(lambda > 0.0))
    throw std::domain_error(
        "frac_power_fn: lambda must be > 0 (use the rational path otherwise)");
  const Cplx g = gamma_fn(Cplx(lambda));
  return SampledFn::sample(
      [&](double t) -> Cplx {
        if (t == 0.0) {
          if (lambda < 1.0) return Cplx(0);  // integrable singularity
          if (lambda == 1.0) return Cplx(1) / g;
          return Cplx(0);
        }
        return std::pow(t, lambda - 1.0) * std::exp(alpha * t) / g;
      },
      T, N);
}

SampledFn conv_frac_power(Cplx alpha, double lambda, const SampledFn& b) {
  if (!(lambda > 0.0)) throw std::domain_error("conv_frac_power: lambda <= 0");
  const Cplx g = gamma_fn(Cplx(lambda));
  const double dt = b.dt();
  const int head_max = 10;  // subintervals handled by the substitution
  const int sub_nodes = 64;

  SampledFn out;
  out.horizon = b.horizon;
  out.count = b.count;
  out.values.assign(b.count + 1, Cplx(0));

  auto kernel = [&](double tau) -> Cplx {
    return std::pow(tau, lambda - 1.0) * std::exp(alpha * tau) / g;
  };

  for (int k = 1; k <= b.count; ++k) {
    const double t = k * dt;
    const int head = std::min(k, head_max);
    // Head [0, head*dt]: substitute tau = u^(1/lambda), regular in u.
    const double u_max = std::pow(head * dt, lambda);
    const double du = u_max / sub_nodes;
    Cplx head_acc(0);
    for (int m = 0; m <= sub_nodes; ++m) {
      const double u = m * du;
      const double tau = std::pow(u, 1.0 / lambda);
      const Cplx v = std::exp(alpha * tau) * b.interp(t - tau);
      head_acc += (m == 0 || m == sub_nodes) ? 0.5 * v : v;
    }
    Cplx acc = head_acc * du / (lambda * g);
    // Tail [head*dt, t]: composite trapezoid on the grid.
    if (head < k) {
      Cplx tail =
          0.5 * (kernel(head * dt) * b.values[k - head] + kernel(t) * b.values[0]);
      for (int j = head + 1; j < k; ++j)
        tail += kernel(j * dt) * b.values[k - j];
      acc += tail * dt;
    }
    out.values[k] = acc;
  }
  return out;
}

double compare(const SampledFn& a, const SampledFn& b,
               std::span<const double> exclude_knots) {
  const double dt = a.dt();
  if (std::abs(b.dt() - dt) > 1e-9 * dt)
    throw std::domain_error("compare: incompatible grid spacing");
  const int n = std::min(a.count, b.count);
  if (n < 1) throw std::domain_error("compare: empty overlap");
  double worst = 0.0;
  bool any = false;
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    bool near_knot = false;
    for (double knot : exclude_knots)
      if (std::abs(t - knot) <= dt) {
        near_knot = true;
        break;
      }
    if (near_knot) continue;
    any = true;
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  if (!any) throw std::domain_error("compare: all points excluded");
  return worst;
}

void write_csv(const SampledFn& f, std::ostream& os) {
  os << "t,re,im\n";
  const double dt = f.dt();
  char line[128];
  for (int i = 0; i <= f.count; ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", i * dt,
                  f.values[i].real(), f.values[i].imag());
    os << line;
  }
}

}  // namespace opcalc
