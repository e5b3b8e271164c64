#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spb {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
u64 powmod(u64 b, u64 e, u64 m);
u128 ipow128(u64 b, unsigned e);
std::string u128_str(u128 v);

// n = ell_part * ell_prime_part with ell_part = ell^valuation.
struct LPartResult {
  u64 ell;
  unsigned valuation;
  u128 ell_part;
  u128 ell_prime_part;
};

// Requires n >= 1 and ell prime; throws std::invalid_argument otherwise.
LPartResult lpart(u128 n, u64 ell);

// v_ell(q^k - 1), computed by lifting q^k through powers of ell.
// No big-integer arithmetic; q^k itself is never formed.
unsigned val_of_power_minus_one(u64 q, u64 k, u64 ell);

// F_{p^m} with a fixed monic irreducible modulus per (p, m).
// Elements are codes in [0, q): the base-p digit encoding of the
// coefficient vector c_0 + c_1 x + ... + c_{m-1} x^{m-1}.
class FqField {
 public:
  unsigned p = 0;
  unsigned m = 0;
  unsigned q = 0;              // p^m
  std::vector<unsigned> mod;   // monic modulus, coeffs c_0..c_m, c_m = 1 (m >= 2)
  unsigned gen = 0;            // code of a fixed multiplicative generator

  // Singleton per (p, m); references stay valid for the program lifetime.
  static const FqField& get(unsigned p, unsigned m);

  unsigned add(unsigned a, unsigned b) const;
  unsigned sub(unsigned a, unsigned b) const;
  unsigned neg(unsigned a) const;
  unsigned mul(unsigned a, unsigned b) const;
  unsigned inv(unsigned a) const;  // throws on 0
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }
  unsigned pow(unsigned a, i64 e) const;
  unsigned frob(unsigned a) const { return pow(a, p); }
  unsigned frob_k(unsigned a, unsigned k) const;
  unsigned from_int(i64 v) const;

  // Discrete log base gen; requires a != 0.
  unsigned dlog(unsigned a) const;
  // gen^e (e may be negative).
  unsigned gpow(i64 e) const;
  unsigned order_of(unsigned a) const;
  bool is_square(unsigned a) const;
  std::string str(unsigned a) const;

  bool operator==(const FqField& o) const { return this == &o; }

 private:
  FqField(unsigned p, unsigned m);
  std::vector<unsigned> exp_;  // gen^i, i in [0, q-1)
  std::vector<unsigned> log_;  // inverse of exp_, log_[0] invalid
  std::vector<unsigned> poly_mul(const std::vector<unsigned>& a,
                                 const std::vector<unsigned>& b) const;
  unsigned raw_mul(unsigned a, unsigned b) const;
};

// A field element paired with its field, for call sites where carrying the
// field by hand is error-prone. Matrix internals use raw codes instead.
struct FqElem {
  const FqField* F = nullptr;
  unsigned code = 0;

  FqElem() = default;
  FqElem(const FqField& f, unsigned c) : F(&f), code(c) {}

  friend FqElem operator+(FqElem a, FqElem b) { a.chk(b); return {*a.F, a.F->add(a.code, b.code)}; }
  friend FqElem operator-(FqElem a, FqElem b) { a.chk(b); return {*a.F, a.F->sub(a.code, b.code)}; }
  friend FqElem operator*(FqElem a, FqElem b) { a.chk(b); return {*a.F, a.F->mul(a.code, b.code)}; }
  friend FqElem operator/(FqElem a, FqElem b) { a.chk(b); return {*a.F, a.F->div(a.code, b.code)}; }
  FqElem operator-() const { return {*F, F->neg(code)}; }
  bool operator==(const FqElem& o) const { return F == o.F && code == o.code; }
  bool is_zero() const { return code == 0; }

 private:
  void chk(const FqElem& o) const {
    if (F != o.F) throw std::logic_error("FqElem: mixed fields");
  }
};

}  // namespace spb
