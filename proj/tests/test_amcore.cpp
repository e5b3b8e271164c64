#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

#include "spb/amcore.hpp"

using namespace spb;

namespace {

// the Sp_4(11) and SL_2(11) pipelines at ell = 5, shared across cases
AmContext& cx2() {
  static std::unique_ptr<AmContext> p = AmContext::build(2, 11, 5);
  return *p;
}

AmContext& cx1() {
  static std::unique_ptr<AmContext> p = AmContext::build(1, 11, 5);
  return *p;
}

std::multiset<i64> degree_multiset(const OmegaTable& ot) {
  std::multiset<i64> out;
  for (const OmegaRow& r : ot.rows) out.insert(r.local_degree);
  return out;
}

bool has_refused(const CheckList& cl) {
  for (const CheckRecord& c : cl.checks)
    if (c.status == "refused") return true;
  return false;
}

}  // namespace

TEST_CASE("torus label arithmetic") {
  const unsigned qm1 = 10;
  CHECK(label_order({0, 0}, qm1) == 1);
  CHECK(label_order({5, 0}, qm1) == 2);
  CHECK(label_order({2, 5}, qm1) == 10);
  CHECK(label_order({4, 6}, qm1) == 5);

  for (unsigned a = 0; a < qm1; ++a) {
    TorusLabel lp = label_ell_part({a}, qm1, 5);
    TorusLabel lq = label_ellprime_part({a}, qm1, 5);
    CHECK((lp[0] + lq[0]) % qm1 == a);
    CHECK(label_order(lp, qm1) == lpart(label_order({a}, qm1), 5).ell_part);
    CHECK(label_order(lq, qm1) ==
          lpart(label_order({a}, qm1), 5).ell_prime_part);
  }
  CHECK(label_ellprime_part({1, 0}, qm1, 5) == TorusLabel{5, 0});
  CHECK(label_ellprime_part({2, 7}, qm1, 5) == TorusLabel{0, 5});

  // signed permutations act on the left
  std::vector<SignedPerm> W = weyl_group(2);
  TorusLabel a{3, 7};
  for (const SignedPerm& w : W) {
    for (const SignedPerm& v : W)
      CHECK(act_label(w, act_label(v, a, qm1), qm1) ==
            act_label(w * v, a, qm1));
    CHECK(act_label(w, label_ellprime_part(a, qm1, 5), qm1) ==
          label_ellprime_part(act_label(w, a, qm1), qm1, 5));
  }
  CHECK(orbit_min(a, W, qm1) <= a);
  CHECK(label_stabilizer({0, 0}, W, qm1).size() == 8);
  CHECK(label_stabilizer({1, 0}, W, qm1).size() == 2);
  CHECK(label_stabilizer({1, 2}, W, qm1).size() == 1);
  CHECK(label_stabilizer({5, 5}, W, qm1).size() == 8);
}

TEST_CASE("torus blocks partition the labels") {
  std::vector<BlockLabel> bs = torus_blocks(2, 11, 5);
  REQUIRE(bs.size() == 4);  // ((q-1)_{ell'})^l = 2^2
  std::set<TorusLabel> all;
  for (const BlockLabel& b : bs) {
    CHECK(b.members.size() == 25);
    CHECK(label_order(b.rep, 10) % 5 != 0);
    CHECK(std::count(b.members.begin(), b.members.end(), b.rep) == 1);
    unsigned ellorder = 0;
    for (const TorusLabel& m : b.members) {
      CHECK(all.insert(m).second);
      if (label_order(m, 10) % 5 != 0) ++ellorder;  // ell'-order members
    }
    CHECK(ellorder == 1);
  }
  CHECK(all.size() == 100);

  const BlockLabel& bp = block_of_label(bs, {4, 8});
  CHECK(bp.principal());
  CHECK(bp.wb.size() == 8);
  for (const TorusLabel& m : bp.members) {
    CHECK(m[0] % 2 == 0);
    CHECK(m[1] % 2 == 0);
  }
  CHECK(block_of_label(bs, {7, 2}).rep == TorusLabel{5, 0});
  CHECK(block_of_label(bs, {5, 0}).wb.size() == 4);
  CHECK(block_of_label(bs, {5, 5}).wb.size() == 8);

  // ell coprime to q-1: singleton blocks
  std::vector<BlockLabel> b7 = torus_blocks(2, 11, 7);
  CHECK(b7.size() == 100);
  for (const BlockLabel& b : b7) CHECK(b.members.size() == 1);

  CHECK_THROWS_AS(torus_blocks(2, 11, 11), std::invalid_argument);
}

TEST_CASE("relative Weyl groups and indices") {
  RelativeWeyl full = relative_weyl({0, 0}, 2, 11, 5);
  CHECK(full.wpsi.size() == 8);
  CHECK(full.wb_order == 8);
  CHECK(full.nb_index == 1);

  RelativeWeyl one = relative_weyl({1, 0}, 2, 11, 5);
  CHECK(one.wpsi.size() == 2);
  CHECK(one.wb_order == 4);  // block label (5,0)
  CHECK(one.nb_index == 2);
  CHECK(one.nb_index_ell == 1);

  RelativeWeyl triv = relative_weyl({1, 2}, 2, 11, 5);
  CHECK(triv.wpsi.size() == 1);
  CHECK(triv.nb_index == 4);
}

TEST_CASE("hypothesis gate") {
  CHECK(am_admissible(2, 11, 5));
  CHECK(am_admissible(1, 11, 5));
  CHECK_FALSE(am_admissible(2, 3, 5));    // ell does not divide q-1
  CHECK_FALSE(am_admissible(2, 11, 2));   // ell below 5
  CHECK_FALSE(am_admissible(2, 11, 3));
  CHECK_FALSE(am_admissible(2, 11, 11));  // ell = p
  CHECK_FALSE(am_admissible(2, 9, 5));

  CheckList cl = am_hypotheses(2, 3, 5);
  CHECK(has_refused(cl));
  CHECK(cl.pass());  // refused is not a failure
  CHECK_FALSE(has_refused(am_hypotheses(2, 11, 5)));
}

TEST_CASE("context plumbing: labels, characters, actions") {
  AmContext& cx = cx2();
  CHECK(cx.T().order() == 100);
  CHECK(cx.N().order() == 800);
  CHECK(cx.lambda_map().ok());
  REQUIRE(cx.family().size() == 100);

  // label <-> character round trip
  std::set<TorusLabel> seen;
  for (unsigned i = 0; i < cx.family().size(); ++i) {
    const TorusLabel& a = cx.family_labels()[i];
    CHECK(seen.insert(a).second);
    CHECK(cx.char_label(cx.label_char(a)) == a);
    CHECK(cx.family_index(a) == i);
  }

  // the conjugation action of a Weyl lift matches the signed-permutation
  // action through rho, and composes like one
  TorusLabel a{3, 7};
  FqMatrix n1 = cx.ctx.n_simple(1), n2 = cx.ctx.n_simple(2);
  for (const FqMatrix& n : {n1, n2, mat_mul(n1, n2)}) {
    SignedPerm w = cx.ctx.rho(n);
    CHECK(cx.conj_label(a, n) == act_label(w, a, cx.qm1));
  }

  // the outer conformal coset and the Frobenius fix every label
  AutAction outer;
  outer.conj = cx.cosets[1].rep;
  outer.frob_k = 0;
  CHECK(cx.sigma_label(a, outer) == a);
}

TEST_CASE("height-zero triangle: Sp_4(11) at ell 5, principal block") {
  AmContext& cx = cx2();
  const BlockLabel& b = block_of_label(cx.blocks, {0, 0});
  REQUIRE(b.principal());

  GlobalCount gc = count_global_hz(cx, b);
  CHECK(gc.checks.pass());
  CHECK(gc.records.size() == 14);
  CHECK(gc.count == 14);

  LocalCount lc = count_local_hz(cx, b);
  CHECK(lc.checks.pass());
  CHECK(lc.count == 14);
  CHECK(lc.brute == 14);
  CHECK(lc.btilde == cx.bn().principal);

  // six psi-orbits, lengths 1 + 4 + 4 + 4 + 8 + 4
  std::map<TorusLabel, u64> orbits;
  for (const HZRecord& r : lc.records) orbits[r.psi] = r.orbit;
  CHECK(orbits.size() == 6);
  u64 total = 0;
  for (auto& kv : orbits) total += kv.second;
  CHECK(total == 25);
}

TEST_CASE("height-zero triangle: Sp_4(11) at ell 5, (5,0) block") {
  AmContext& cx = cx2();
  const BlockLabel& b = block_of_label(cx.blocks, {5, 0});
  REQUIRE_FALSE(b.principal());
  CHECK(b.wb.size() == 4);

  GlobalCount gc = count_global_hz(cx, b);
  CHECK(gc.checks.pass());
  CHECK(gc.count == 16);

  LocalCount lc = count_local_hz(cx, b);
  CHECK(lc.checks.pass());
  CHECK(lc.count == 16);
  CHECK(lc.brute == 16);
  CHECK(lc.btilde != cx.bn().principal);

  std::set<TorusLabel> reps;
  for (const HZRecord& r : lc.records) reps.insert(r.psi);
  CHECK(reps.size() == 9);
  CHECK(lc.records.size() == 16);
}

TEST_CASE("height-zero triangle: SL_2(11) engine mode") {
  AmContext& cx = cx1();
  CHECK(cx.N().order() == 20);
  REQUIRE(cx.blocks.size() == 2);
  for (const BlockLabel& b : cx.blocks) {
    CHECK(b.members.size() == 5);
    GlobalCount gc = count_global_hz(cx, b);
    LocalCount lc = count_local_hz(cx, b);
    CHECK(gc.checks.pass());
    CHECK(lc.checks.pass());
    CHECK(gc.count == 4);
    CHECK(lc.count == 4);
    CHECK(lc.brute == 4);
  }
}

TEST_CASE("omega tables pair the height-zero sets") {
  AmContext& cx = cx2();

  OmegaTable op = omega_table(cx, block_of_label(cx.blocks, {0, 0}));
  CHECK(op.checks.pass());
  REQUIRE(op.rows.size() == 14);
  CHECK(degree_multiset(op) ==
        std::multiset<i64>{1, 1, 1, 1, 2, 4, 4, 4, 4, 4, 4, 4, 4, 8});

  OmegaTable o5 = omega_table(cx, block_of_label(cx.blocks, {5, 0}));
  CHECK(o5.checks.pass());
  REQUIRE(o5.rows.size() == 16);
  CHECK(degree_multiset(o5) ==
        std::multiset<i64>{2, 2, 2, 2, 4, 4, 4, 4, 4, 4, 4, 4, 8, 8, 8, 8});

  // rows with trivial relative Weyl group are plain induced extensions of
  // degree [N : N_psi]
  unsigned clifford_rows = 0;
  for (const OmegaRow& r : o5.rows)
    if (r.orbit == 4) {
      CHECK(r.local_degree == 8);
      CHECK(r.eta == 0);
      ++clifford_rows;
    }
  CHECK(clifford_rows == 4);
}

TEST_CASE("R(lambda) from rank-one constituent degrees") {
  AmContext& cx = cx2();

  ReflectionDatum r1 = compute_R_lambda(cx, {0, 0});
  CHECK(r1.checks.pass());
  CHECK(r1.wlambda.size() == 8);
  CHECK(r1.r_lambda.size() == 8);  // R(1) = W
  REQUIRE(r1.evidence.size() == 4);
  for (const RankOneEvidence& ev : r1.evidence) {
    CHECK(ev.degrees == std::vector<i64>{1, 11});
    CHECK(ev.in_phi);
  }

  // order-2 coordinate: the long-root induction splits into equal degrees
  // (q+1)/2, so the reflection is lost
  ReflectionDatum r5 = compute_R_lambda(cx, {5, 0});
  CHECK(r5.checks.pass());
  CHECK(r5.wlambda.size() == 4);
  CHECK(r5.r_lambda.size() == 2);
  bool witness = false;
  for (const RankOneEvidence& ev : r5.evidence)
    if (ev.alpha == Root::e(2, 1, 2)) {
      CHECK(ev.degrees == std::vector<i64>{6, 6});
      CHECK_FALSE(ev.in_phi);
      witness = true;
    }
  CHECK(witness);

  ReflectionDatum rt = compute_R_lambda(cx, {1, 2});
  CHECK(rt.wlambda.size() == 1);
  CHECK(rt.r_lambda.size() == 1);
  CHECK(rt.evidence.empty());

  ReflectionDatum rq = compute_R_lambda(cx, {5, 5});
  CHECK(rq.wlambda.size() == 8);
  CHECK(rq.r_lambda.size() == 4);  // both long roots lost

  for (const TorusLabel& lam :
       {TorusLabel{2, 0}, TorusLabel{1, 9}, TorusLabel{5, 2}}) {
    ReflectionDatum rd = compute_R_lambda(cx, lam);
    CHECK(rd.checks.pass());
    for (const SignedPerm& w : rd.r_lambda) {
      bool in = false;
      for (const SignedPerm& v : rd.wlambda) in |= v == w;
      CHECK(in);
    }
  }
}

TEST_CASE("delta certificates over the conformal and inner actions") {
  AmContext& cx = cx2();

  AutAction outer;
  outer.conj = cx.cosets[1].rep;
  outer.frob_k = 0;
  unsigned nontrivial = 0;
  for (const TorusLabel& lam : cx.family_labels()) {
    TorusLabel sl = cx.sigma_label(lam, outer);
    CHECK(sl == lam);  // the outer coset fixes the diagonal torus pointwise
    ReflectionDatum rd = compute_R_lambda(cx, sl);
    DeltaResult dr = compute_delta(cx, lam, outer, rd);
    CHECK(dr.checks.pass());
    CHECK(dr.linear_ok);
    CHECK(dr.trivial_on_t);
    CHECK(dr.kernel_ok);
    if (!dr.delta.trivial()) ++nontrivial;
  }
  // exactly the labels with an order-2 coordinate carry a twisted extension
  CHECK(nontrivial == 19);

  // inner actions are absorbed by the equivariant map: delta is trivial,
  // including at characters the action moves
  AutAction inner;
  inner.conj = cx.ctx.n_simple(2);
  inner.frob_k = 0;
  unsigned moved = 0;
  for (const TorusLabel& lam : cx.family_labels()) {
    TorusLabel sl = cx.sigma_label(lam, inner);
    if (sl != lam) ++moved;
    ReflectionDatum rd = compute_R_lambda(cx, sl);
    DeltaResult dr = compute_delta(cx, lam, inner, rd);
    CHECK(dr.checks.pass());
    CHECK(dr.delta.trivial());
  }
  CHECK(moved == 90);

  AutAction ident;
  ident.conj = FqMatrix::ident(*cx.F, 4);
  ident.frob_k = 0;
  ReflectionDatum rd = compute_R_lambda(cx, {3, 4});
  DeltaResult dr = compute_delta(cx, {3, 4}, ident, rd);
  CHECK(dr.checks.pass());
  CHECK(dr.delta.trivial());
}
