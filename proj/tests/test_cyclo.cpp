#include <doctest.h>

#include <cmath>

#include "spb/cyclo.hpp"

using namespace spb;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>({-1, 1}));
  CHECK(cyclotomic_poly(2) == std::vector<i64>({1, 1}));
  CHECK(cyclotomic_poly(4) == std::vector<i64>({1, 0, 1}));
  CHECK(cyclotomic_poly(5) == std::vector<i64>({1, 1, 1, 1, 1}));
  CHECK(cyclotomic_poly(6) == std::vector<i64>({1, -1, 1}));
  CHECK(cyclotomic_poly(12) == std::vector<i64>({1, 0, -1, 0, 1}));
  CHECK(cyclotomic_poly(40).size() == euler_phi(40) + 1);
  CHECK(euler_phi(1320) == 320);
}

TEST_CASE("CycInt arithmetic and reduction") {
  // 1 + z5 + z5^2 + z5^3 + z5^4 = 0
  CycInt s = CycInt::integer(1);
  for (unsigned k = 1; k < 5; ++k) s = s + CycInt::root(5, k);
  CHECK(s.is_zero());

  // z4^2 = -1
  CycInt i = CycInt::root(4, 1);
  CHECK((i * i).equals(CycInt::integer(-1)));

  // conj(z)*z = 1
  CycInt z = CycInt::root(12, 5);
  CHECK((z * z.conj()).equals(CycInt::integer(1)));

  // mixed conductors
  CycInt a = CycInt::root(4, 1) + CycInt::root(6, 1);
  CycInt b = CycInt::root(6, 1) + CycInt::root(4, 1);
  CHECK(a.equals(b));
  CHECK_FALSE(a.equals(a + CycInt::integer(1)));

  i64 val;
  CHECK((CycInt::root(8, 1) * CycInt::root(8, 7)).is_integer(&val));
  CHECK(val == 1);
}

TEST_CASE("CycInt exact division") {
  CycInt v = (CycInt::root(5, 1) + CycInt::root(5, 4)).scaled(6);
  CycInt w = v.divided_exact(3);
  CHECK(w.equals((CycInt::root(5, 1) + CycInt::root(5, 4)).scaled(2)));
  CHECK_THROWS_AS(v.divided_exact(4), std::domain_error);
}

TEST_CASE("CycInt equality agrees with the numerical embedding") {
  // Gauss sum flavored identity: (2 z8 + 2 z8^7)^2 = 8
  CycInt t = (CycInt::root(8, 1) + CycInt::root(8, 7)).scaled(2);
  CHECK((t * t).equals(CycInt::integer(8)));
  auto z = (t * t).eval();
  CHECK(std::abs(z.real() - 8.0L) < 1e-9L);
  CHECK(std::abs(z.imag()) < 1e-9L);

  CycInt a = CycInt::root(12, 1) + CycInt::root(12, 11);  // 2 cos(pi/6) = sqrt(3)
  CHECK(std::abs((a * a).eval().real() - 3.0L) < 1e-9L);
  CHECK((a * a).equals(CycInt::integer(3)));
}

TEST_CASE("CycAcc matches term arithmetic") {
  CycInt a = CycInt::root(40, 3).scaled(2) + CycInt::root(40, 11);
  CycInt b = CycInt::root(40, 7) - CycInt::root(40, 1).scaled(5);
  CycAcc acc(40);
  acc.add_product(a, b, 3, false);
  auto direct = (a * b).scaled(3).reduced(40);
  CHECK(acc.reduced() == direct);

  CycAcc acc2(40);
  acc2.add_product(a, a, 1, true);
  auto d2 = (a * a.conj()).reduced(40);
  CHECK(acc2.reduced() == d2);
}

TEST_CASE("reduction mod ell: fixed images") {
  // zeta_4 -> a fixed square root of -1 in F_5
  CycModContext c5(5, 4);
  unsigned im = c5.reduce(CycInt::root(4, 1));
  const FqField& F5 = c5.field();
  CHECK(F5.q == 5);
  CHECK((im == 2 || im == 3));
  CHECK(F5.mul(im, im) == F5.from_int(-1));
  // deterministic
  CycModContext c5b(5, 4);
  CHECK(c5b.reduce(CycInt::root(4, 1)) == im);

  // zeta_5 -> 1 at ell = 5
  CycModContext cz(5, 5);
  CHECK(cz.reduce(CycInt::root(5, 1)) == 1);
  CHECK(cz.reduce(CycInt::root(5, 3)) == 1);

  // integers reduce mod ell
  CycModContext ci(5, 1);
  CHECK(ci.reduce(CycInt::integer(7)) == 2);
}

TEST_CASE("reduction mod ell is a ring map") {
  CycModContext ctx(5, 40);
  const FqField& F = ctx.field();
  // ord(5 mod 8) = 2, so the residue field is F_25.
  CHECK(F.q == 25);
  std::vector<CycInt> vals = {
      CycInt::integer(3), CycInt::root(40, 1), CycInt::root(40, 35),
      CycInt::root(8, 3) + CycInt::integer(2), CycInt::root(10, 1).scaled(-4),
  };
  for (auto& x : vals)
    for (auto& y : vals) {
      CHECK(ctx.reduce(x + y) == F.add(ctx.reduce(x), ctx.reduce(y)));
      CHECK(ctx.reduce(x * y) == F.mul(ctx.reduce(x), ctx.reduce(y)));
    }
  // ell-power part collapses: zeta_40^8 has order 5 -> image 1
  CHECK(ctx.reduce(CycInt::root(40, 8)) == 1);
  // the 8th root part survives with full order
  unsigned w = ctx.reduce(CycInt::root(40, 5));  // order 8
  unsigned x = w, ord = 1;
  while (x != 1) { x = F.mul(x, w); ++ord; }
  CHECK(ord == 8);
}

TEST_CASE("alternative root choices exist and differ") {
  CycModContext c0(5, 4, 0), c1(5, 4, 1);
  unsigned a = c0.reduce(CycInt::root(4, 1)), b = c1.reduce(CycInt::root(4, 1));
  CHECK(a != b);
  CHECK(c0.field().mul(b, b) == c0.field().from_int(-1));
}

TEST_CASE("prime ideal reduction at small residue degree") {
  CycIdeal I(5, 40);
  CHECK(I.residue_degree() == 2);  // ord(5 mod 8) = 2
  CHECK(I.ideal_count() == 2);     // phi(8)/2

  // the 5-power part of every root collapses to 1
  CHECK(I.in_ideal(CycInt::root(40, 8) - CycInt::integer(1)));
  // the 8th-root part keeps full order
  for (unsigned k = 1; k < 8; ++k)
    CHECK_FALSE(I.in_ideal(CycInt::root(8, k) - CycInt::integer(1)));

  // reduction is additive and the target is an ideal
  std::vector<CycInt> vals = {CycInt::integer(3), CycInt::root(40, 1),
                              CycInt::root(8, 3) + CycInt::integer(2),
                              CycInt::root(10, 1).scaled(-4)};
  for (auto& x : vals)
    for (auto& y : vals) {
      auto rx = I.reduce(x), ry = I.reduce(y), rs = I.reduce(x + y);
      for (unsigned i = 0; i < I.residue_degree(); ++i)
        CHECK(rs[i] == (rx[i] + ry[i]) % 5);
      CHECK(I.in_ideal((CycInt::root(5, 1) - CycInt::integer(1)) * x));
    }
}

TEST_CASE("prime ideal reduction at residue degree ten") {
  // conductor 660 = exponent of SL_2(11); ell = 5 leaves Eprime = 132 and
  // ord(5 mod 132) = 10, far beyond any table-based field.
  CycIdeal I(5, 660);
  CHECK(I.residue_degree() == 10);
  CHECK(I.ideal_count() == 4);  // phi(132)/10
  CHECK(I.in_ideal(CycInt::root(660, 132) - CycInt::integer(1)));  // order-5 root -> 1
  CHECK_FALSE(I.in_ideal(CycInt::root(660, 5) - CycInt::integer(1)));  // order-132 root
  CHECK_FALSE(I.in_ideal(CycInt::root(660, 60) - CycInt::integer(1)));  // order-11 root
  CHECK_FALSE(I.in_ideal(CycInt::integer(3)));
  CHECK(I.in_ideal(CycInt::integer(10)));

  // deterministic, and distinct ideals really differ
  CycIdeal J(5, 660, 0), K(5, 660, 1);
  CHECK(J.reduce(CycInt::root(660, 1)) == I.reduce(CycInt::root(660, 1)));
  CHECK(K.reduce(CycInt::root(660, 1)) != I.reduce(CycInt::root(660, 1)));
  CHECK(K.residue_degree() == 10);
}
