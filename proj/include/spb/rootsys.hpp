#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spb/numeric.hpp"

namespace spb {

constexpr unsigned kMaxRank = 8;

// Root of type C_l in e_1..e_l coordinates: +-2e_i or +-e_i +- e_j.
struct Root {
  unsigned l = 0;
  std::array<std::int8_t, kMaxRank> c{};

  bool is_long() const;
  bool is_zero() const;
  int dot(const Root& o) const;
  Root negated() const;
  bool operator==(const Root& o) const { return l == o.l && c == o.c; }
  bool operator<(const Root& o) const;
  std::string str() const;

  static Root e(unsigned l, unsigned i, int coeff);                 // coeff * e_i
  static Root ee(unsigned l, unsigned i, int ci, unsigned j, int cj);
};

struct RootSystem {
  unsigned l = 0;
  std::vector<Root> roots;   // all 2 l^2 roots, sorted
  std::vector<Root> simple;  // a_1 = 2 e_1, a_i = e_i - e_{i-1} for i >= 2
  int index_of(const Root& r) const;
};

RootSystem build_root_system(unsigned l);

// Signed permutation of {1..l}; img[i-1] = w(i), sign carried on the image.
struct SignedPerm {
  unsigned l = 0;
  std::array<std::int8_t, kMaxRank> img{};

  static SignedPerm identity(unsigned l);
  SignedPerm operator*(const SignedPerm& o) const;  // (a*b)(x) = a(b(x))
  SignedPerm inverse() const;
  int apply(int x) const;  // x in {+-1 .. +-l}
  Root apply(const Root& r) const;
  bool is_identity() const;
  bool operator==(const SignedPerm& o) const { return l == o.l && img == o.img; }
  bool operator<(const SignedPerm& o) const;
  u64 key() const;  // packed encoding, injective for l <= 8
  std::string str() const;
};

SignedPerm reflection(const Root& alpha);

// All of W(C_l) in a fixed deterministic order (identity first).
std::vector<SignedPerm> weyl_group(unsigned l);
u64 weyl_order(unsigned l);  // 2^l l!

// Closure of a generating set inside the signed permutation group.
std::vector<SignedPerm> perm_closure(unsigned l, std::vector<SignedPerm> gens);

// Levi decomposition data for Phi' = Phi cap span(delta'), delta' a subset of
// the simple roots given by indices in {1..l}. Components with a long root
// form the J_{-1} part; type A_{d-1} short components are grouped by d, with
// O_d the list of their supports and J_d the union. J_1 holds the untouched
// coordinates as singleton orbits.
struct LeviDatum {
  unsigned l = 0;
  std::vector<unsigned> delta;
  std::vector<Root> phi_sub;
  std::vector<unsigned> jminus;
  // orbits_of_d[d] = O_d (sorted supports, sorted by first element); entry 0 unused.
  std::vector<std::vector<std::vector<unsigned>>> orbits_of_d;

  std::vector<unsigned> j_of_d(unsigned d) const;
  unsigned a_of_d(unsigned d) const;
  std::vector<unsigned> dset() const;  // all d >= 1 with a_d > 0
  std::string str() const;
};

LeviDatum levi_decompose(unsigned l, const std::vector<unsigned>& delta);

// N_W(W_{Phi'}) / W_{Phi'} with explicit-isomorphism certification against
// prod_d W(C_{a_d}): the relabeling homomorphism's kernel must equal W_{Phi'}
// as a set and its image must exhaust the product.
struct QuotientPresentation {
  u64 w_phi_order = 0;
  u64 normalizer_order = 0;
  u64 quotient_order = 0;
  u64 expected_order = 0;
  bool kernel_matches = false;
  bool image_full = false;
  bool hom_checked = false;
  bool certified() const { return kernel_matches && image_full && hom_checked; }
};

QuotientPresentation normalizer_quotient(const LeviDatum& ld);

// Literal stabilizer formula for one d >= 2:
// Stab_{W(Phibar_d)}(Phi_d) = (W(Phi_d) x <coordinate flips per orbit>) : S_{O_d}.
struct StabCertificate {
  unsigned d = 0;
  u64 stab_order = 0;
  u64 expected_order = 0;
  bool set_equal = false;          // literal stabilizer == generated subgroup
  bool direct_factor_checks = false;  // A cap B = 1, [A, B] = 1
  bool complement_checks = false;     // AB normal, AB cap C = 1, |ABC| = |stab|
  bool certified() const { return set_equal && direct_factor_checks && complement_checks; }
};

StabCertificate subgroup_stabilizer(const LeviDatum& ld, unsigned d);

// Signed-permutation action on exponent labels mod n (coordinates permuted,
// negated coordinates negate the label entry).
std::vector<int> apply_to_label(const SignedPerm& w, const std::vector<int>& label, unsigned n);

}  // namespace spb
