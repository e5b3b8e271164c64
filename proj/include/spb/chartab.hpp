#pragma once

#include <optional>

#include "spb/cyclo.hpp"
#include "spb/group.hpp"
#include "spb/report.hpp"

namespace spb {

// An irreducible character: exact cyclotomic values, one per conjugacy class
// of the owning table's group (class 0 is the identity class).
struct Character {
  std::vector<CycInt> values;
  i64 degree() const;
};

// A class function on a table, aligned with its class list.
using ClassFn = std::vector<CycInt>;

// Exact character table of an enumerated finite group, computed by the
// Dixon-Schneider method: class-sum matrices are simultaneously diagonalized
// over a prime field F_P with P = 1 (mod exponent), the central-character
// eigenvectors are converted to degrees and mod-P character values, and the
// values are lifted to Z[zeta] through discrete Fourier sums of eigenvalue
// multiplicities. Everything is integer arithmetic; the result is exact and
// deterministic (characters sorted by degree, then value vector).
class CharTable {
 public:
  static constexpr u64 kDefaultCeiling = 200000;

  explicit CharTable(const FinGroup& g, u64 ceiling = kDefaultCeiling);
  // the table keeps a pointer to g, so a temporary group is an error
  explicit CharTable(const FinGroup&& g, u64 ceiling = kDefaultCeiling) = delete;

  const FinGroup& group() const { return *g_; }
  const FinGroup::Classes& classes() const { return g_->classes(); }
  unsigned class_count() const { return classes().count(); }
  unsigned size() const { return (unsigned)irr_.size(); }
  const std::vector<Character>& irreducibles() const { return irr_; }
  const Character& at(unsigned i) const { return irr_[i]; }
  unsigned exponent() const { return classes().exponent; }
  u64 dixon_prime() const { return prime_; }
  unsigned trivial_index() const;

  // power_map()[k][s] = class of rep_k^s, s in [0, order of rep_k)
  const std::vector<std::vector<std::uint32_t>>& power_map() const { return pm_; }

  // sum_k |C_k| a_k conj(b_k) = |G| <a, b>
  CycInt inner_scaled(const ClassFn& a, const ClassFn& b) const;
  i64 multiplicity(const ClassFn& f, unsigned chi) const;  // <f, chi>
  std::vector<i64> decompose(const ClassFn& f) const;

  CheckList verify() const;  // orthogonality, degree sum, divisibility

 private:
  const FinGroup* g_;
  u64 prime_ = 0;
  std::vector<Character> irr_;
  std::vector<std::vector<std::uint32_t>> pm_;

  bool solve(u64 prime);
};

// h-class -> g-class map for a subgroup's table; throws std::invalid_argument
// when h is not contained in g.
std::vector<std::uint32_t> class_fusion(const CharTable& g, const CharTable& h);

ClassFn restrict_to(const CharTable& g, const CharTable& h, const ClassFn& f);
ClassFn induce(const CharTable& g, const CharTable& h, const ClassFn& f);

// A linear (degree-1) character, stored as the exponent of a fixed root of
// unity per element index of its group.
struct LinearChar {
  unsigned modulus = 1;
  std::vector<unsigned> exp;
  CycInt value(std::uint32_t i) const { return CycInt::root(modulus, (i64)exp[i]); }
  bool trivial() const {
    for (unsigned e : exp)
      if (e) return false;
    return true;
  }
  bool operator==(const LinearChar& o) const;
};

// All degree-1 characters, via the abelianization: the derived subgroup is
// the normal closure of generator commutators, and the dual of the coset
// group is enumerated along a greedy invariant-factor generating sequence.
// Deterministic order; first entry is the trivial character.
std::vector<LinearChar> linear_characters(const FinGroup& g);

ClassFn as_class_fn(const CharTable& t, const LinearChar& l);

// Induction of a linear character of an arbitrary subgroup s <= g directly
// from element data (no table of s needed).
ClassFn induce_linear(const CharTable& g, const FinGroup& s, const LinearChar& f);

// Partition of Irr(G) into ell-blocks by central-character congruence: chi
// and psi share a block iff omega_chi(C) = |C| chi(g_C) / chi(1) agrees with
// omega_psi(C) modulo a fixed prime ideal over ell, for every class C.
struct BlockPartition {
  u64 ell = 0;
  std::vector<unsigned> block_of;             // per character
  std::vector<std::vector<unsigned>> blocks;  // member character indices
  std::vector<unsigned> defect;               // per block
  std::vector<u64> defect_order;              // ell^defect
  std::vector<unsigned> height;               // per character
  unsigned principal = 0;                     // block of the trivial character
  CheckList checks;

  unsigned count() const { return (unsigned)blocks.size(); }
  bool height_zero(unsigned chi) const { return height[chi] == 0; }
  std::vector<unsigned> height_zero_of(unsigned block) const;
};

// Requires odd ell (the prime-ideal arithmetic excludes characteristic 2).
BlockPartition ell_blocks(const CharTable& t, u64 ell, unsigned root_choice = 0);

// Brauer induced block b^G: the induced central character
//   lambda_b^G(C) = sum over h-classes D inside C of |D| psi(d) / psi(1)
// is reduced modulo the shared prime ideal; returns the unique g-block whose
// central character matches on every class, or nullopt when none does.
std::optional<unsigned> brauer_map(const CharTable& h, const BlockPartition& bh,
                                   unsigned block, const CharTable& g,
                                   const BlockPartition& bg,
                                   unsigned root_choice = 0);

// All extensions of a linear character lambda of k to its stabilizer in m
// (k normal in m). An empty extension list is a valid outcome.
struct ExtensionRecord {
  LinearChar base;                     // on k
  FinGroup stab;                       // stabilizer M_lambda
  std::vector<LinearChar> extensions;  // on stab, each restricting to base
  u64 gallagher_count = 0;             // linear characters of stab trivial on k
};

ExtensionRecord extension_search(const FinGroup& k, const FinGroup& m,
                                 const LinearChar& lambda);

// Equivariant extension map: for an m-conjugation-stable (and external-act
// stable) family of linear characters of k, choose extensions on orbit
// representatives and transport them so that Lambda(lambda^a) = Lambda(lambda)^a
// for every conjugation a in m, and for every supplied external automorphism
// at the characters it moves. At a fixed character an external act may twist
// the chosen extension by a linear character of the stabilizer (the defect
// delta_{lambda,sigma}); that is data, not an obstruction, so it is not
// constrained here. External acts are element-index permutations
// i -> index of sigma(m_i).
struct EquivariantEntry {
  FinGroup stab;
  LinearChar ext;
};

struct EquivariantMap {
  std::vector<EquivariantEntry> entries;  // aligned with the input family
  CheckList checks;
  bool ok() const { return checks.pass(); }
};

EquivariantMap equivariant_extension_map(
    const FinGroup& k, const FinGroup& m, const std::vector<LinearChar>& family,
    const std::vector<std::vector<std::uint32_t>>& external_acts_on_m);

}  // namespace spb
