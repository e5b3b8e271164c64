#pragma once

#include <map>
#include <memory>

#include "spb/chartab.hpp"
#include "spb/chevalley.hpp"

namespace spb {

// Exponent label of a linear character of the split torus T = (F_q^x)^l:
// label a sends prod_i h_{2e_i}(t_i) to zeta_{q-1}^{sum_i a_i dlog(t_i)}.
// Entries live in Z/(q-1); the Weyl group acts by signed coordinate
// permutation (a negated coordinate negates the entry).
using TorusLabel = std::vector<unsigned>;

unsigned label_order(const TorusLabel& a, unsigned qm1);
TorusLabel label_ell_part(const TorusLabel& a, unsigned qm1, u64 ell);
TorusLabel label_ellprime_part(const TorusLabel& a, unsigned qm1, u64 ell);
TorusLabel act_label(const SignedPerm& w, const TorusLabel& a, unsigned qm1);
TorusLabel orbit_min(const TorusLabel& a, const std::vector<SignedPerm>& ws,
                     unsigned qm1);
std::vector<SignedPerm> label_stabilizer(const TorusLabel& a,
                                         const std::vector<SignedPerm>& ws,
                                         unsigned qm1);

// An ell-block of the torus: the labels sharing one ell'-part. The member
// set is rep * (ell-power-order labels), and its setwise Weyl stabilizer
// coincides with the stabilizer of rep alone (checked in torus_blocks).
struct BlockLabel {
  unsigned l = 0;
  u64 q = 0;
  u64 ell = 0;
  TorusLabel rep;                   // the unique ell'-order member
  std::vector<TorusLabel> members;  // sorted
  std::vector<SignedPerm> wb;       // N_b/T as signed permutations

  bool principal() const;
};

// All torus blocks, sorted by rep; they partition the (q-1)^l labels into
// ((q-1)_{ell'})^l classes. Requires ell coprime to q.
std::vector<BlockLabel> torus_blocks(unsigned l, u64 q, u64 ell);
const BlockLabel& block_of_label(const std::vector<BlockLabel>& bs,
                                 const TorusLabel& a);

// W(psi) = N_psi/T together with the index data of psi inside its block.
struct RelativeWeyl {
  std::vector<SignedPerm> wpsi;
  u64 wb_order = 0;      // |N_b/T| for the block containing psi
  u64 nb_index = 0;      // [N_b : N_psi]
  u64 nb_index_ell = 1;  // ell-part of the index
};

RelativeWeyl relative_weyl(const TorusLabel& psi, unsigned l, u64 q, u64 ell);

// Hypotheses of the counting pipeline: ell an odd prime, ell >= 5,
// ell != p, ell | q-1. Violations come back as refused records.
CheckList am_hypotheses(unsigned l, u64 q, u64 ell);
bool am_admissible(unsigned l, u64 q, u64 ell);

// Shared data for the height-zero pipeline at one (l, q, ell): the Chevalley
// context, the enumerated subgroup chain with character tables of T and
// N = T.W, their block partitions, torus character labels, and the
// equivariant extension map for T normal in N. Tables keep pointers into the
// bundle, so a context is pinned to one address; build() returns a
// unique_ptr and the class is non-copyable.
class AmContext {
 public:
  static std::unique_ptr<AmContext> build(unsigned l, u64 q, u64 ell,
                                          u64 budget = 0);

  AmContext(const AmContext&) = delete;
  AmContext& operator=(const AmContext&) = delete;

  unsigned l = 0;
  u64 q = 0;
  u64 ell = 0;
  unsigned qm1 = 0;
  const FqField* F = nullptr;
  LeviDatum ld;
  std::vector<SignedPerm> W;
  ChevCtx ctx;
  SubgroupBundle bun;
  std::vector<ConformalCoset> cosets;
  std::vector<BlockLabel> blocks;

  const FinGroup& T() const { return bun.T.group; }
  const FinGroup& N() const { return bun.N.group; }
  const CharTable& tt() const { return *tt_; }
  const CharTable& tn() const { return *tn_; }
  const BlockPartition& bt() const { return bt_; }
  const BlockPartition& bn() const { return bn_; }
  const std::vector<LinearChar>& family() const { return fam_; }
  const std::vector<TorusLabel>& family_labels() const { return fam_label_; }
  const EquivariantMap& lambda_map() const { return lam_; }

  LinearChar label_char(const TorusLabel& a) const;  // on T, by element index
  TorusLabel char_label(const LinearChar& f) const;
  unsigned family_index(const TorusLabel& a) const;
  unsigned tt_index(const TorusLabel& a) const;  // irreducible index in tt()
  // Label of ^sigma(lambda_a) = lambda_a after the automorphism, probed on
  // torus generators. sigma must normalize T.
  TorusLabel sigma_label(const TorusLabel& a, const AutAction& s) const;
  // Conjugation action of N on torus labels, as a check against act_label.
  TorusLabel conj_label(const TorusLabel& a, const FqMatrix& n) const;

  // Rank-one split Levi L_alpha = <T, x_alpha, x_-alpha> with its Borel
  // B_alpha = <T, x_alpha> and character table; built on first use and
  // cached per positive root.
  struct RankOne {
    FinGroup levi;
    FinGroup borel;
    std::unique_ptr<CharTable> table;
  };
  const RankOne& rank_one(const Root& alpha);

 private:
  AmContext(unsigned l_, u64 q_, u64 ell_, u64 budget);

  std::unique_ptr<CharTable> tt_, tn_;
  BlockPartition bt_, bn_;
  std::vector<LinearChar> fam_;
  std::vector<TorusLabel> fam_label_;
  EquivariantMap lam_;
  std::map<Root, std::unique_ptr<RankOne>> rank_one_;
};

// One global/local character label (psi-orbit, eta in Irr(W(psi))) with the
// height-zero criteria. psi itself is always height zero in its torus block,
// so the flags cover the remaining two criteria.
struct HZRecord {
  TorusLabel psi;     // N_b-orbit representative, lexicographically least
  u64 orbit = 1;      // orbit length [W_b : W(psi)]
  unsigned eta = 0;   // index into the canonical table of W(psi)
  i64 eta_degree = 1;
  bool eta_ell_ok = false;    // eta(1)_ell == 1
  bool index_ell_ok = false;  // [N_b : N_psi]_ell == 1
  u128 global_ell_part = 1;   // [G : N_psi]_ell * eta(1)_ell
  u64 local_degree = 0;       // [N : N_psi] * eta(1)
  bool height_zero = false;
  // filled by the local route only
  int local_index = -1;   // irreducible index in the N table
  int local_height = -1;
};

// Global route: pure label arithmetic. Counts records passing the two
// criteria and cross-checks that they are exactly the records of minimal
// degree ell-part [G:N_psi]_ell * eta(1)_ell within the block.
struct GlobalCount {
  BlockLabel block;
  std::vector<HZRecord> records;
  u64 count = 0;
  CheckList checks;
};

GlobalCount count_global_hz(const AmContext& cx, const BlockLabel& b);

// Local route: every (psi, eta) label is realized as an induced character
// Ind_{N_psi}^N(psi~ eta), identified in the N table; heights are read off
// the table. brute counts the height-zero characters of the unique block
// btilde of N over b, and the identified set is checked to exhaust Irr(btilde).
struct LocalCount {
  BlockLabel block;
  std::vector<HZRecord> records;
  u64 count = 0;        // table heights of the identified characters
  u64 brute = 0;        // |Irr_0(btilde)| straight from the partition
  unsigned btilde = 0;  // block index in bn()
  CheckList checks;
};

LocalCount count_local_hz(AmContext& cx, const BlockLabel& b);

// The bijection: height-zero global labels paired with their induced
// characters, plus certificates (bijectivity, block membership, degree
// formula, equivariance under the conformal-torus and Frobenius label
// actions).
struct OmegaRow {
  TorusLabel psi;
  unsigned eta = 0;
  i64 eta_degree = 1;
  u64 orbit = 1;
  unsigned local_index = 0;
  i64 local_degree = 0;
};

struct OmegaTable {
  BlockLabel block;
  unsigned btilde = 0;
  std::vector<OmegaRow> rows;
  CheckList checks;
};

OmegaTable omega_table(AmContext& cx, const BlockLabel& b);

// Rank-one evidence for R(lambda): alpha qualifies when the Harish-Chandra
// induction of lambda to L_alpha has two constituents of different degrees.
struct RankOneEvidence {
  Root alpha;
  std::vector<i64> degrees;  // constituent degrees, ascending
  bool in_phi = false;
};

struct ReflectionDatum {
  TorusLabel label;
  std::vector<SignedPerm> wlambda;
  std::vector<RankOneEvidence> evidence;  // positive alpha, s_alpha in W(lambda)
  std::vector<SignedPerm> r_lambda;       // <s_alpha : alpha qualifies>
  CheckList checks;
};

ReflectionDatum compute_R_lambda(AmContext& cx, const TorusLabel& lambda);

// Gallagher quotient delta of the two extensions Lambda(lambda)^sigma and
// Lambda(^sigma lambda), a linear character of the stabilizer of
// ^sigma lambda in N; verified linear, trivial on T, and trivial on
// R(^sigma lambda).
struct DeltaResult {
  TorusLabel lambda;
  TorusLabel sigma_lambda;
  LinearChar delta;  // on the stabilizer of ^sigma lambda, by element index
  bool linear_ok = false;
  bool trivial_on_t = false;
  bool kernel_ok = false;
  CheckList checks;
};

DeltaResult compute_delta(AmContext& cx, const TorusLabel& lambda,
                          const AutAction& sigma,
                          const ReflectionDatum& r_sigma_lambda);

}  // namespace spb
