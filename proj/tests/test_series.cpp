#include <doctest.h>

#include "opcalc/delay.hpp"
#include "opcalc/numeric.hpp"
#include "opcalc/series.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace opcalc;
using testutil::rand_disk;
using testutil::rand_series;

namespace {

SeriesL exp_coeffs(int order) {  // 1/n! at l^n
  std::vector<Cplx> c(order + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n >= 2) f *= n;
    c[n] = Cplx(1.0 / f);
  }
  return SeriesL(std::move(c));
}

}  // namespace

TEST_CASE("Cauchy product") {
  SeriesL onepl(std::vector<Cplx>{1, 1, 0, 0});
  SeriesL sq = onepl * onepl;
  CHECK(sq.coeff(0) == Cplx(1));
  CHECK(sq.coeff(1) == Cplx(2));
  CHECK(sq.coeff(2) == Cplx(1));
  CHECK(sq.coeff(3) == Cplx(0));

  // exp-coefficients squared give 2^n/n!.
  SeriesL e = exp_coeffs(12);
  SeriesL e2 = e * e;
  double f = 1.0, p = 1.0;
  for (int n = 0; n <= 12; ++n) {
    if (n >= 2) f *= n;
    CHECK(std::abs(e2.coeff(n) - Cplx(p / f)) <= 1e-12);
    p *= 2.0;
  }

  std::mt19937 rng(501);
  SeriesL a = rand_series<'l'>(rng, 9);
  CHECK(ser_distance(a * SeriesL::constant(Cplx(1), 9), a) == 0);
}

TEST_CASE("dilation on C{l}") {
  SeriesL l = SeriesL::generator(8);
  CHECK(ser_distance(dilate(0.5, l), Cplx(0.5) * l) == 0);
  std::mt19937 rng(502);
  SeriesL a = rand_series<'l'>(rng, 10);
  CHECK(ser_distance(dilate(1.0, a), a) == 0);
  // Homomorphism.
  SeriesL b = rand_series<'l'>(rng, 10);
  double q = 1.6;
  CHECK(ser_distance(dilate(q, a * b), dilate(q, a) * dilate(q, b)) <= 1e-10);
  CHECK_THROWS_AS(dilate(0.0, a), std::domain_error);
}

TEST_CASE("the derivation D on C{l} is d/dl") {
  CHECK(ser_distance(d_dl(SeriesL::generator(4)),
                     SeriesL::constant(Cplx(1), 3)) == 0);
  // D of exp-coefficients reproduces them (shift invariance of 1/n!).
  SeriesL e = exp_coeffs(10);
  SeriesL de = d_dl(e);
  for (int n = 0; n <= de.order(); ++n)
    CHECK(std::abs(de.coeff(n) - e.coeff(n)) <= 1e-12);
  CHECK(ser_distance(d_dl(SeriesL::constant(Cplx(5), 6)),
                     SeriesL::zero(5)) == 0);
}

TEST_CASE("d/ds on C{l} and the identity d/ds = -l^2 D") {
  SeriesL l = SeriesL::generator(6);
  SeriesL d = dds(l);
  CHECK(d.coeff(1) == Cplx(0));
  CHECK(d.coeff(2) == Cplx(-1));  // d/ds l = -l^2
  CHECK(ser_distance(dds(SeriesL::constant(Cplx(3), 6)), SeriesL::zero(6)) == 0);

  std::mt19937 rng(503);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 12);
    SeriesL l2 = SeriesL::generator(12) * SeriesL::generator(12);
    CHECK(ser_distance(dds(a), -(l2 * d_dl(a))) <= 1e-12);
  }
}

TEST_CASE("exponential shift on C{l}: special case l") {
  Cplx alpha(0.6, -0.4);
  SeriesL image = exp_shift(alpha, SeriesL::generator(12));
  Cplx expect(1);
  for (int n = 1; n <= 12; ++n) {
    CHECK(std::abs(image.coeff(n) - expect) <= 1e-12);  // beta_n = alpha^(n-1)
    expect *= alpha;
  }
  std::mt19937 rng(504);
  SeriesL a = rand_series<'l'>(rng, 10);
  CHECK(ser_distance(exp_shift(Cplx(0), a), a) == 0);
}

TEST_CASE("exponential shift against the generic composition oracle") {
  std::mt19937 rng(505);
  for (int rep = 0; rep < 25; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 16);
    Cplx alpha = rand_disk(rng, 1.0);
    SeriesL mine = exp_shift(alpha, a);
    SeriesL composed =
        oracles::compose_series(a, oracles::mobius_series<'l'>(alpha, 16));
    CHECK(ser_distance(mine, composed) <= 1e-9);
  }
}

TEST_CASE("T^alpha T^{-alpha} is the identity up to truncation") {
  std::mt19937 rng(506);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 14);
    Cplx alpha = rand_disk(rng, 1.0);
    CHECK(ser_distance(exp_shift(-alpha, exp_shift(alpha, a)), a) <= 1e-8);
  }
}

TEST_CASE("realization of l-series") {
  SeriesRealization r1 = realize(SeriesL(std::vector<Cplx>{0, 1}));
  CHECK(std::abs(r1.const_part) == 0.0);
  CHECK(std::abs(r1.eval(2.0) - Cplx(1)) <= 1e-15);  // l = {1}

  SeriesRealization r2 = realize(SeriesL(std::vector<Cplx>{0, 0, 1}));
  CHECK(std::abs(r2.eval(3.0) - Cplx(3.0)) <= 1e-15);  // l^2 = {t}

  // Value at 0 picks out the l^1 coefficient.
  std::mt19937 rng(507);
  SeriesL a = rand_series<'l'>(rng, 8);
  CHECK(std::abs(realize(a).eval(0.0) - a.coeff(1)) <= 1e-15);
}

TEST_CASE("uniqueness: realization of a nonzero series is nonzero somewhere") {
  std::mt19937 rng(508);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 6);
    SeriesRealization r = realize(a);
    bool nonzero = std::abs(r.const_part) > 0;
    for (int i = 0; i <= 50 && !nonzero; ++i)
      nonzero = std::abs(r.eval(0.1 * i)) > 1e-12;
    CHECK(nonzero);
  }
}

TEST_CASE("Bessel coefficients") {
  SeriesL b = bessel_coeffs(Cplx(2), 4);
  CHECK(b.coeff(0) == Cplx(0));
  CHECK(b.coeff(1) == Cplx(1));                    // leading term l
  CHECK(std::abs(b.coeff(3) - Cplx(-2.0)) <= 1e-12);  // C(-1/2,1) alpha^2 = -4/2
  CHECK(b.coeff(2) == Cplx(0));

  // Realized truncation matches the independent power-series J0 on [0,10].
  SeriesRealization r = realize(bessel_coeffs(Cplx(1), 30));
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double t = 10.0 * i / 400;
    worst = std::max(worst, std::abs(r.eval(t) - Cplx(bessel_j0(t))));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Mahler operator on C[[h]]") {
  SeriesH h = SeriesH::generator(4);
  SeriesH h2 = mahler(2, h);
  CHECK(h2.order() == 8);
  CHECK(h2.coeff(2) == Cplx(1));
  CHECK(h2.coeff(1) == Cplx(0));
  CHECK(ser_distance(mahler(2, SeriesH::constant(Cplx(1), 4)),
                     SeriesH::constant(Cplx(1), 8)) == 0);

  // Homomorphism through both routes.
  SeriesH oneph(std::vector<Cplx>{1, 1, 0, 0, 0});
  SeriesH onemh(std::vector<Cplx>{1, -1, 0, 0, 0});
  CHECK(ser_distance(mahler(2, oneph) * mahler(2, onemh),
                     mahler(2, oneph * onemh)) == 0);
}

TEST_CASE("the Mahler derivation D' on C[[h]] is d/dh") {
  CHECK(ser_distance(d_dh(SeriesH::generator(5)),
                     SeriesH::constant(Cplx(1), 4)) == 0);
  CHECK(ser_distance(d_dh(SeriesH::constant(Cplx(2), 5)), SeriesH::zero(4)) ==
        0);
  std::mt19937 rng(509);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesH a = rand_series<'h'>(rng, 10);
    SeriesH b = rand_series<'h'>(rng, 10);
    SeriesH lhs = d_dh(a * b);
    SeriesH rhs = d_dh(a) * b.truncated(9) + a.truncated(9) * d_dh(b);
    CHECK(ser_distance(lhs, rhs) <= 1e-11);
  }
}

TEST_CASE("d/ds on C[[h]] and D' = -h^{-1} d/ds") {
  SeriesH h = SeriesH::generator(5);
  SeriesH d = dds(h);
  CHECK(d.coeff(1) == Cplx(-1));  // d/ds h = -h
  CHECK(ser_distance(dds(SeriesH::constant(Cplx(1), 5)), SeriesH::zero(5)) == 0);

  std::mt19937 rng(510);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesH a = rand_series<'h'>(rng, 10);
    SeriesH via_dds = dds(a);
    // -h^{-1} shifts indices down by one and negates.
    std::vector<Cplx> shifted(via_dds.order(), Cplx(0));
    for (int n = 1; n <= via_dds.order(); ++n)
      shifted[n - 1] = -via_dds.coeff(n);
    CHECK(ser_distance(SeriesH(std::move(shifted)), d_dh(a)) <= 1e-12);
  }
}

TEST_CASE("unit inversion") {
  // (1 - c h)^{-1} = sum c^n h^n.
  Cplx c(0.4, 0.2);
  SeriesH unit(std::vector<Cplx>{1, -c, 0, 0, 0, 0, 0, 0});
  SeriesH inv = invert_unit(unit);
  Cplx p(1);
  for (int n = 0; n <= inv.order(); ++n) {
    CHECK(std::abs(inv.coeff(n) - p) <= 1e-12);
    p *= c;
  }
  CHECK(ser_distance(invert_unit(SeriesH::constant(Cplx(1), 6)),
                     SeriesH::constant(Cplx(1), 6)) == 0);

  std::mt19937 rng(511);
  for (int rep = 0; rep < 20; ++rep) {
    SeriesH a = rand_series<'h'>(rng, 9);
    if (std::abs(a.coeff(0)) < 0.1) continue;
    SeriesH prod = a * invert_unit(a);
    CHECK(ser_distance(prod, SeriesH::constant(Cplx(1), 9)) <= 1e-10);
  }
  CHECK_THROWS_AS(invert_unit(SeriesH::generator(3)), std::domain_error);
}

TEST_CASE("commutation D tau_q = q tau_q D on C{l} (exact)") {
  std::mt19937 rng(512);
  for (int rep = 0; rep < 100; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 32);
    double q = testutil::rand_real(rng, 0.3, 2.0);
    SeriesL lhs = d_dl(dilate(q, a));
    SeriesL rhs = Cplx(q) * dilate(q, d_dl(a));
    // Exact up to reassociation of the same products; q^32 sets the scale.
    double scale = 0.0;
    for (int n = 0; n <= lhs.order(); ++n)
      scale = std::max(scale, std::abs(lhs.coeff(n)));
    CHECK(ser_distance(lhs, rhs) <= 1e-13 * std::max(1.0, scale));
  }
}

TEST_CASE("commutation d/ds T^alpha = T^alpha d/ds on C{l}") {
  std::mt19937 rng(513);
  for (int rep = 0; rep < 100; ++rep) {
    SeriesL a = rand_series<'l'>(rng, 16);
    Cplx alpha = rand_disk(rng, 1.0);
    SeriesL lhs = dds(exp_shift(alpha, a));
    SeriesL rhs = exp_shift(alpha, dds(a));
    CHECK(ser_distance(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("commutation D' sigma_d = d h^{d-1} sigma_d D' on C[[h]] (exact)") {
  std::mt19937 rng(514);
  for (int d : {2, 3}) {
    for (int rep = 0; rep < 50; ++rep) {
      SeriesH a = rand_series<'h'>(rng, 8);
      SeriesH lhs = d_dh(mahler(d, a));
      SeriesH hpow = SeriesH::generator(8 * d).pow(d - 1);
      SeriesH rhs = Cplx(d) * (hpow * mahler(d, d_dh(a)));
      CHECK(ser_distance(lhs.truncated(rhs.order()), rhs) <= 1e-12);
    }
  }
}

TEST_CASE("series arithmetic agrees with delay elements under h^n -> h_pow(n)") {
  std::mt19937 rng(515);
  auto embed = [](const SeriesH& s) {
    DelayElement e;
    for (int n = 0; n <= s.order(); ++n)
      if (s.coeff(n) != Cplx(0))
        e += s.coeff(n) * DelayElement::h_pow(static_cast<double>(n));
    return e;
  };
  for (int rep = 0; rep < 20; ++rep) {
    SeriesH a = rand_series<'h'>(rng, 5);
    SeriesH b = rand_series<'h'>(rng, 5);
    // Compare only the common truncation: drop the delay parts beyond order 5.
    DelayElement prod = embed(a) * embed(b);
    DelayElement truncated;
    for (const auto& part : prod.parts())
      if (part.delay <= 5.0 + kDelayMergeTol)
        truncated.add_part(part.delay, part.fn);
    CHECK(de_distance(truncated, embed(a * b)) <= 1e-12);
  }
}

TEST_CASE("uniqueness: jump extraction recovers h-series coefficients") {
  std::mt19937 rng(516);
  for (int rep = 0; rep < 10; ++rep) {
    SeriesH a = rand_series<'h'>(rng, 7);
    JumpSeries j;
    for (int n = 0; n <= a.order(); ++n) {
      j.coeffs.push_back(a.coeff(n));
      j.delays.push_back(n);
    }
    auto back = jump_extract(jump_realize(j), a.order());
    for (int n = 0; n <= a.order(); ++n)
      CHECK(std::abs(back[n] - a.coeff(n)) <= 1e-10);
  }
}
