#pragma once

#include <map>
#include <string>
#include <vector>

#include "spb/fqmat.hpp"
#include "spb/group.hpp"
#include "spb/report.hpp"
#include "spb/rootsys.hpp"

namespace spb {

u128 sp_order(unsigned m, u64 q);  // |Sp_{2m}(q)|, m = 0 gives 1
u128 gl_order(unsigned d, u64 q);  // |GL_d(q)|, d = 0 gives 1

// Chevalley generators of Sp_{2l}(q) in the basis e_1..e_l, f_l..f_1 with
// Gram matrix antidiagonal (+1 above, -1 below). Position i pairs with
// i' = 2l+1-i. All root/coordinate indices are 1-based.
class ChevCtx {
 public:
  ChevCtx(unsigned l, const FqField& F);

  unsigned rank() const { return l_; }
  unsigned dim() const { return 2 * l_; }
  const FqField& field() const { return *F_; }
  const RootSystem& roots() const { return rs_; }
  const FqMatrix& gram() const { return J_; }

  FqMatrix x(const Root& a, unsigned t) const;
  FqMatrix n_of(const Root& a, unsigned t) const;  // x_a(t) x_{-a}(-1/t) x_a(t)
  FqMatrix h_of(const Root& a, unsigned t) const;  // n_a(t) n_a(-1)
  FqMatrix n_simple(unsigned i) const;             // n_{alpha_i}(-1)

  std::vector<FqMatrix> torus_gens() const;  // h_{2e_i}(g), i = 1..l
  FqMatrix h_long(unsigned i, unsigned t) const;  // h_{2e_i}(t)
  FqMatrix h_set(const std::vector<unsigned>& I, unsigned t) const;  // prod h_{2e_i}(t)
  std::vector<unsigned> field_basis() const;  // codes of 1, g, .., g^{m-1}

  bool is_monomial(const FqMatrix& m) const;
  SignedPerm rho(const FqMatrix& m) const;  // coordinate signed perm; throws if not monomial

  // Solves m == x_a(t); returns true and sets t on success.
  bool match_root_elt(const FqMatrix& m, const Root& a, unsigned& t) const;

  FqMatrix conformal_rep(unsigned mu) const;  // diag(mu..mu, 1..1)

 private:
  unsigned l_;
  const FqField* F_;
  RootSystem rs_;
  FqMatrix J_;
};

struct SteinbergReport {
  unsigned l = 0;
  u64 q = 0;
  u64 pairs = 0;      // unordered {a,b} commutator pairs checked
  u64 relations = 0;  // individual matrix identities verified
  CheckList checks;
  bool pass() const { return checks.pass(); }
};

// Exhaustive Chevalley-relation verification over F_q: additivity of each
// x_a, commutator formulas with inferred structure constants, torus weights,
// h-multiplicativity, n-identities, and isometry of every generator.
SteinbergReport verify_steinberg(unsigned l, const FqField& F, CheckList* trace = nullptr);

struct BuiltGroup {
  std::string key;
  std::vector<FqMatrix> gens;
  u128 expected_order = 0;  // 0 = no closed formula recorded
  bool enumerated = false;
  FinGroup group;  // valid only when enumerated
  u64 order() const { return enumerated ? group.order() : 0; }
};

struct SubgroupBundle {
  LeviDatum ld;
  const FqField* F = nullptr;
  u64 budget = 0;

  BuiltGroup T, L, H, V, N;
  std::vector<BuiltGroup> g_factors;             // G_I, one per orbit in O
  std::vector<std::vector<unsigned>> g_supports; // aligned with g_factors
  std::vector<int> g_ds;                         // aligned; the d of each factor (-1 for J_{-1})
  std::map<int, BuiltGroup> h_parts;             // d -> H_d (d in D)
  std::map<int, BuiltGroup> v_parts;             // d -> V_d (d >= 1; V_{-1} trivial, omitted)
  std::map<int, std::vector<FqMatrix>> njd;      // d -> [n_1^{(d)}, .., n_{a_d}^{(d)}]
  std::map<int, std::vector<FqMatrix>> mk;       // d -> [m_1, .., m_d]
  BuiltGroup monomial_L;                         // N_L(T) = <T, n_a(1): a in Phi'>

  const BuiltGroup* factor(const std::vector<unsigned>& support) const;
};

// Builds T, G_I, L, H_d, H, V_d, V, N from the Levi datum. Groups whose BFS
// closure would exceed the element budget are left un-enumerated (generators
// and expected orders are still recorded); callers decide whether that is an
// error. Budget 0 means the compiled default.
SubgroupBundle build_subgroups(const LeviDatum& ld, const FqField& F, u64 budget = 0);

constexpr u64 kDefaultBudget = 1000000;

// Verifies the structural claims about the bundle: direct-product shape of L
// and H, centrality of H, the closed form of the n_j^{(d)}, braid relations,
// commutation between the V_d, N = LV with V cap L = H, and the interchange
// action of the n_{I,I'}. Set-level checks on groups over budget degrade to
// generator-level certificates and are recorded as skipped.
CheckList verify_structure(const SubgroupBundle& b);

// Field/diagonal outer actions. apply(m) = C . m^(p^k) . C^{-1}.
struct AutAction {
  FqMatrix conj;
  unsigned frob_k = 0;
  FqMatrix apply(const FqMatrix& m) const;
  AutAction compose(const AutAction& other) const;  // this after other
};

struct ConformalCoset {
  bool inner = false;
  unsigned mu = 1;  // similitude multiplier (field code)
  FqMatrix rep;
};

// Coset representatives of the conformal diagonal torus over inner-diagonal:
// exactly two for odd q, represented by 1 and diag(mu..mu,1..1) with mu a
// non-square. Conjugation by either fixes the diagonal torus pointwise, so
// the induced map on its character labels is the identity.
std::vector<ConformalCoset> conformal_torus_action(unsigned l, const FqField& F);

struct CentralizerReport {
  u64 zl_order = 0;       // |Z(L)^F| (inside the diagonal torus)
  u64 zl_ell_order = 0;   // |Z(L)^F_ell|
  u64 zl_ell_exponent = 1;
  std::vector<std::vector<unsigned>> pattern;  // joint eigenvalue blocks of Z(L)_ell, 1-based positions
  std::string shape;                           // centralizer shape, e.g. "Sp_4 x GL_2"
  bool equals_levi = false;
  CheckList checks;
};

// Computes Z(L)^F_ell from torus exponent lattices (no enumeration of G) and
// decides C_G(Z(L)_ell) = L by comparing the joint eigenvalue pattern with
// the Levi block pattern.
CentralizerReport centralizer_of_torus_ellpart(const LeviDatum& ld, const FqField& F, u64 ell);

}  // namespace spb
