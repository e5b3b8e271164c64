#include <doctest.h>

#include "spb/numeric.hpp"

using namespace spb;

TEST_CASE("lpart basics") {
  auto r = lpart(161050, 5);
  CHECK(r.ell_part == 25);
  CHECK(r.valuation == 2);
  CHECK(r.ell_prime_part == 161050 / 25);

  r = lpart(1, 7);
  CHECK(r.valuation == 0);
  CHECK(r.ell_part == 1);
  CHECK(r.ell_prime_part == 1);

  r = lpart(800, 5);
  CHECK(r.ell_part == 25);
  CHECK(r.ell_prime_part == 32);

  CHECK_THROWS_AS(lpart(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(lpart(10, 6), std::invalid_argument);
}

TEST_CASE("lpart multiplicativity") {
  u64 vals[] = {2, 3, 4, 5, 7, 10, 12, 25, 99, 11250};
  for (u64 a : vals)
    for (u64 b : vals) {
      auto ra = lpart(a, 5), rb = lpart(b, 5), rab = lpart((u128)a * b, 5);
      CHECK(rab.valuation == ra.valuation + rb.valuation);
      CHECK(rab.ell_part == (u128)ra.ell_part * rb.ell_part);
    }
}

TEST_CASE("valuation of q^k - 1 without big integers") {
  CHECK(val_of_power_minus_one(11, 5, 5) == 2);
  CHECK(val_of_power_minus_one(11, 25, 5) == 3);
  CHECK(val_of_power_minus_one(11, 125, 5) == 4);
  CHECK(val_of_power_minus_one(29, 7, 7) == 2);
  // cross-check against direct factorization where the power fits
  auto direct = lpart(ipow128(11, 25) - 1, 5);
  CHECK(direct.valuation == 3);
  auto d2 = lpart(ipow128(29, 7) - 1, 7);
  CHECK(d2.valuation == 2);
  CHECK(d2.ell_part == 49);
}

TEST_CASE("prime fields") {
  const FqField& F3 = FqField::get(3, 1);
  CHECK(F3.q == 3);
  CHECK(F3.inv(2) == 2);
  CHECK(F3.add(2, 2) == 1);
  const FqField& F11 = FqField::get(11, 1);
  CHECK(F11.mul(6, 2) == 1);
  CHECK(F11.inv(6) == 2);
  for (unsigned a = 1; a < 11; ++a) CHECK(F11.mul(a, F11.inv(a)) == 1);
  CHECK(F11.order_of(F11.gen) == 10);
}

TEST_CASE("quadratic extension F_9") {
  const FqField& F9 = FqField::get(3, 2);
  CHECK(F9.q == 9);
  CHECK(F9.mod == std::vector<unsigned>({1, 0, 1}));  // x^2 + 1
  // x^2 = -1: code of x is 3 (digits 0,1), so 3 * 3 = 2 (= -1 mod 3).
  CHECK(F9.mul(3, 3) == 2);
  // Frobenius is x -> x^3 and fixes exactly F_3.
  unsigned g = F9.gen;
  CHECK(F9.frob(g) == F9.pow(g, 3));
  unsigned fixed = 0;
  for (unsigned a = 0; a < 9; ++a)
    if (F9.frob(a) == a) ++fixed;
  CHECK(fixed == 3);
  // frob has order 2
  for (unsigned a = 0; a < 9; ++a) CHECK(F9.frob(F9.frob(a)) == a);
  CHECK(F9.order_of(g) == 8);
}

TEST_CASE("field arithmetic laws, all table fields") {
  for (auto [p, m] : {std::pair<unsigned, unsigned>{3, 2}, {5, 2}, {7, 2}, {11, 2}, {13, 2}}) {
    const FqField& F = FqField::get(p, m);
    for (unsigned a = 0; a < F.q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      for (unsigned b = 0; b < F.q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        CHECK(F.mul(a, F.add(b, 1)) == F.add(F.mul(a, b), a));
      }
    }
    // Frobenius is additive and multiplicative.
    for (unsigned a = 0; a < F.q; ++a)
      for (unsigned b = 0; b < F.q; ++b) {
        CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
        CHECK(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)));
      }
  }
}

TEST_CASE("is_square and generator determinism") {
  const FqField& F11 = FqField::get(11, 1);
  unsigned squares = 0;
  for (unsigned a = 1; a < 11; ++a)
    if (F11.is_square(a)) ++squares;
  CHECK(squares == 5);
  CHECK(FqField::get(11, 1).gen == FqField::get(11, 1).gen);
  const FqField& F121 = FqField::get(11, 2);
  CHECK(F121.q == 121);
  CHECK(F121.order_of(F121.gen) == 120);
}
