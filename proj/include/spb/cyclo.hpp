#pragma once

#include <complex>
#include <utility>

#include "spb/numeric.hpp"

namespace spb {

unsigned euler_phi(unsigned e);
// Coefficients of the e-th cyclotomic polynomial, low degree first, monic.
// Cached for the program lifetime.
const std::vector<i64>& cyclotomic_poly(unsigned e);

// Element of Z[zeta_e]: an integer combination of e-th roots of unity,
// stored as sparse (exponent, coefficient) terms. Equality and canonical
// coordinates go through reduction mod Phi_e; the power basis
// 1, z, ..., z^{phi(e)-1} is an integral basis, so reduced coordinates are
// a faithful normal form.
class CycInt {
 public:
  CycInt() = default;  // zero, conductor 1

  static CycInt integer(i64 v);
  static CycInt root(unsigned e, i64 k, i64 coeff = 1);

  unsigned conductor() const { return e_; }
  const std::vector<std::pair<unsigned, i64>>& terms() const { return terms_; }

  CycInt rebased(unsigned new_e) const;  // requires conductor | new_e

  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt operator-() const { return scaled(-1); }
  CycInt scaled(i64 c) const;
  CycInt conj() const;  // zeta -> zeta^{-1}

  // Canonical power-basis coordinates at conductor e (conductor must divide e).
  std::vector<i64> reduced(unsigned e) const;
  bool is_zero() const;
  bool equals(const CycInt& o) const;
  bool is_integer(i64* out = nullptr) const;
  // Exact division by a nonzero integer; throws std::domain_error when the
  // reduced coordinates are not all divisible.
  CycInt divided_exact(i64 d) const;

  std::complex<long double> eval() const;  // numerical embedding (sanity only)
  std::string str() const;

  // Total order on reduced coordinates at a shared conductor; deterministic.
  static int cmp(const CycInt& a, const CycInt& b);

 private:
  unsigned e_ = 1;
  std::vector<std::pair<unsigned, i64>> terms_;  // sorted, coeff != 0
  void normalize();
};

// Dense accumulator over a fixed conductor for inner-product style sums;
// avoids re-sorting sparse terms on every update.
class CycAcc {
 public:
  explicit CycAcc(unsigned e) : e_(e), v_(e, 0) {}
  // v += scale * a * (conj_b ? conj(b) : b)
  void add_product(const CycInt& a, const CycInt& b, i64 scale, bool conj_b);
  void add(const CycInt& a, i64 scale);
  std::vector<i64> reduced() const;
  bool is_integer_value(i64 expect) const;
 private:
  unsigned e_;
  std::vector<i64> v_;
};

// Reduction of Z[zeta_E] modulo a prime ideal over ell, realized as
// F_ell[y]/(g) for an irreducible factor g of the Eprime-th cyclotomic
// polynomial mod ell (Eprime = ell'-part of E). Unlike CycModContext this
// places no bound on the residue degree. root_choice indexes the factor of
// Phi_Eprime used, i.e. the prime ideal (taken mod the factor count, so any
// index is valid); derived partitions must not depend on it. Only odd ell is
// supported: the factor search splits with quadratic residues, which
// degenerate in characteristic 2.
class CycIdeal {
 public:
  CycIdeal(u64 ell, unsigned E, unsigned root_choice = 0);

  u64 ell() const { return ell_; }
  unsigned conductor() const { return E_; }
  unsigned residue_degree() const { return unsigned(g_.size()) - 1; }
  unsigned ideal_count() const { return count_; }

  // Residue of v as coefficients of 1, y, .., y^{deg-1}; v's conductor must
  // divide E. Equal vectors <=> congruent mod the ideal.
  std::vector<unsigned> reduce(const CycInt& v) const;
  bool in_ideal(const CycInt& v) const { return reduce(v) == std::vector<unsigned>(residue_degree(), 0); }

 private:
  u64 ell_;
  unsigned E_, Eprime_, a_, count_;
  u64 c_;                   // inverse of ell^a mod Eprime
  std::vector<unsigned> g_;  // monic irreducible factor of Phi_Eprime mod ell
};

// Ring map Z[zeta_E] -> F_{ell^m}: the ell-power part of each root of unity
// maps to 1 and the ell'-part maps through a fixed primitive root of the
// residue field. root_choice selects among the primitive roots (0 is the
// default; other values certify choice-independence of derived partitions).
class CycModContext {
 public:
  CycModContext(u64 ell, unsigned E, unsigned root_choice = 0);
  const FqField& field() const { return *F_; }
  u64 ell() const { return ell_; }
  unsigned conductor() const { return E_; }
  unsigned omega() const { return omega_; }
  unsigned reduce(const CycInt& v) const;  // v's conductor must divide E
  unsigned reduce_int(i64 v) const { return F_->from_int(v); }

 private:
  u64 ell_;
  unsigned E_, Eprime_, a_;
  const FqField* F_;
  unsigned omega_;
};

}  // namespace spb
