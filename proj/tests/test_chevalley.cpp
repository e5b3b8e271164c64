#include <doctest.h>

#include <algorithm>

#include "spb/chevalley.hpp"

using namespace spb;

namespace {

const CheckRecord* find_check(const CheckList& ck, const std::string& id) {
  for (const auto& r : ck.checks)
    if (r.id == id) return &r;
  return nullptr;
}

std::vector<std::string> failed_ids(const CheckList& ck) {
  std::vector<std::string> out;
  for (const auto& r : ck.checks)
    if (r.status == "fail") out.push_back(r.id + ": " + r.witness);
  return out;
}

bool same_group(const FinGroup& a, const FinGroup& b) {
  return a.order() == b.order() && a.subset_of(b);
}

// All invertible 2x2 matrices over F.
std::vector<FqMatrix> gl2_elements(const FqField& F) {
  std::vector<FqMatrix> out;
  for (unsigned a = 0; a < F.q; ++a)
    for (unsigned b = 0; b < F.q; ++b)
      for (unsigned c = 0; c < F.q; ++c)
        for (unsigned d = 0; d < F.q; ++d) {
          if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
          FqMatrix m = FqMatrix::zero(F, 2);
          m.set(0, 0, a);
          m.set(0, 1, b);
          m.set(1, 0, c);
          m.set(1, 1, d);
          out.push_back(m);
        }
  return out;
}

// Embeds GL_d(q) into Sp_{2l}(q) on the e-positions I, f-block the inverse
// transpose on the mirrored positions.
FqMatrix embed_gl(const FqField& F, unsigned l, const std::vector<unsigned>& I,
                  const FqMatrix& A) {
  FqMatrix M = FqMatrix::ident(F, 2 * l);
  FqMatrix B = A.inverse().transpose();
  for (unsigned r = 0; r < I.size(); ++r)
    for (unsigned c = 0; c < I.size(); ++c) {
      M.set(I[r] - 1, I[c] - 1, A.get(r, c));
      M.set(2 * l - I[r], 2 * l - I[c], B.get(r, c));
    }
  return M;
}

FqMatrix block_of(const std::vector<unsigned>& I, const FqMatrix& g) {
  FqMatrix A = FqMatrix::zero(*g.F, (unsigned)I.size());
  for (unsigned r = 0; r < I.size(); ++r)
    for (unsigned c = 0; c < I.size(); ++c) A.set(r, c, g.get(I[r] - 1, I[c] - 1));
  return A;
}

}  // namespace

TEST_CASE("classical group orders") {
  CHECK(sp_order(1, 3) == 24);
  CHECK(sp_order(2, 3) == 51840);
  CHECK(sp_order(1, 9) == 720);
  CHECK(sp_order(2, 11) == 25721308800ULL);
  CHECK(gl_order(1, 3) == 2);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 3) == 11232);
  CHECK(gl_order(4, 3) == 24261120);
  CHECK(gl_order(2, 9) == 5760);
  CHECK(gl_order(0, 5) == 1);
  CHECK(sp_order(0, 5) == 1);
}

TEST_CASE("chevalley generator matrices") {
  const FqField& F = FqField::get(3, 1);
  ChevCtx ctx(2, F);
  CHECK(ctx.dim() == 4);

  for (const Root& a : ctx.roots().roots) {
    CHECK(ctx.x(a, 0).is_identity());
    CHECK(ctx.h_of(a, 1).is_identity());
    for (unsigned t = 1; t < 3; ++t) {
      CHECK(is_isometry(ctx.x(a, t), ctx.gram()));
      CHECK(is_isometry(ctx.n_of(a, t), ctx.gram()));
      FqMatrix n = ctx.n_of(a, t);
      CHECK(mat_mul(n, n) == ctx.h_of(a, F.neg(1)));
      CHECK(ctx.is_monomial(n));
      CHECK(ctx.rho(n) == reflection(a));
    }
  }

  // h_{2e_1}(-1) = diag(-1, 1, 1, -1)
  FqMatrix h = ctx.h_long(1, F.neg(1));
  CHECK(h.get(0, 0) == F.neg(1));
  CHECK(h.get(1, 1) == 1);
  CHECK(h.get(2, 2) == 1);
  CHECK(h.get(3, 3) == F.neg(1));
  CHECK(mat_mul(h, h).is_identity());

  // match_root_elt round trip
  Root a = Root::ee(2, 1, 1, 2, -1);
  unsigned t = 0;
  CHECK(ctx.match_root_elt(ctx.x(a, 2), a, t));
  CHECK(t == 2);
  CHECK_FALSE(ctx.match_root_elt(ctx.x(a, 2), a.negated(), t));
}

TEST_CASE("steinberg relations hold for small ranks and fields") {
  {
    SteinbergReport r = verify_steinberg(2, FqField::get(3, 1));
    CHECK(r.pass());
    CHECK(r.pairs > 0);
    CHECK(r.relations > 700);
  }
  {
    SteinbergReport r = verify_steinberg(2, FqField::get(3, 2));
    CHECK(r.pass());
  }
}

TEST_CASE("subgroup bundle for the split torus, l=2 q=3") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(2, {});
  SubgroupBundle b = build_subgroups(ld, F);

  CHECK(b.T.order() == 4);
  CHECK(b.L.order() == 4);
  CHECK(b.H.order() == 4);
  CHECK(b.V.order() == 32);
  CHECK(b.N.order() == 32);
  CHECK(b.g_factors.size() == 2);
  CHECK(b.g_factors[0].order() == 2);  // GL_1(3)

  // At q = 3 the torus is elementary abelian, so T = H and N = V.
  CHECK(same_group(b.T.group, b.H.group));
  CHECK(same_group(b.N.group, b.V.group));

  CheckList ck = verify_structure(b);
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
  CHECK(find_check(ck, "structure.v.rho:d=1") != nullptr);
  CHECK(find_check(ck, "structure.v.cap") != nullptr);
  CHECK(find_check(ck, "structure.v.cap")->status == "pass");
  CHECK(find_check(ck, "structure.n.product")->status == "pass");
}

TEST_CASE("subgroup bundle for the split torus, l=2 q=11") {
  const FqField& F = FqField::get(11, 1);
  LeviDatum ld = levi_decompose(2, {});
  SubgroupBundle b = build_subgroups(ld, F);
  CHECK(b.T.order() == 100);
  CHECK(b.L.order() == 100);
  CHECK(b.N.order() == 800);
  CHECK(b.H.order() == 4);
  CHECK(verify_structure(b).pass());
}

TEST_CASE("subgroup bundle with a symplectic factor, l=2 q=3 delta={1}") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(2, {1});
  SubgroupBundle b = build_subgroups(ld, F);
  CHECK(b.L.order() == 48);  // Sp_2(3) x GL_1(3)
  CHECK(b.N.order() == 96);
  CHECK(b.factor({1}) != nullptr);
  CHECK(b.factor({1})->order() == 24);
  CHECK(b.factor({2})->order() == 2);
  CHECK(b.h_parts.at(-1).order() == 2);
  CHECK(b.h_parts.at(1).order() == 2);

  CheckList ck = verify_structure(b);
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
}

TEST_CASE("GL_2 factor carries an explicit isomorphism, l=3 q=3 delta={3}") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(3, {3});
  SubgroupBundle b = build_subgroups(ld, F);
  CHECK(b.L.order() == 96);  // GL_1(3) x GL_2(3)
  const BuiltGroup* G23 = b.factor({2, 3});
  REQUIRE(G23 != nullptr);
  CHECK(G23->order() == 48);

  std::vector<FqMatrix> gl2 = gl2_elements(F);
  REQUIRE(gl2.size() == 48);
  // Bijective homomorphism GL_2(3) -> G_{2,3}
  for (const FqMatrix& A : gl2) CHECK(G23->group.contains(embed_gl(F, 3, {2, 3}, A)));
  for (std::size_t i = 0; i < gl2.size(); i += 5)
    for (std::size_t j = 0; j < gl2.size(); j += 7) {
      FqMatrix lhs = embed_gl(F, 3, {2, 3}, mat_mul(gl2[i], gl2[j]));
      FqMatrix rhs = mat_mul(embed_gl(F, 3, {2, 3}, gl2[i]), embed_gl(F, 3, {2, 3}, gl2[j]));
      CHECK(lhs == rhs);
    }

  CheckList ck = verify_structure(b);
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
}

TEST_CASE("flip action on a GL_2 factor is transpose-inverse up to inner, l=3 q=3 delta={3}") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(3, {3});
  SubgroupBundle b = build_subgroups(ld, F);
  const std::vector<unsigned> I = {2, 3};
  const FqMatrix& n = b.njd.at(2)[0];
  FqMatrix ninv = n.inverse();

  std::vector<FqMatrix> src, img;
  for (const FqMatrix& g : b.factor(I)->gens) {
    src.push_back(block_of(I, g));
    img.push_back(block_of(I, mat_mul(mat_mul(n, g), ninv)));
  }
  auto matches = [&](const FqMatrix& C, bool twist) {
    FqMatrix Cinv = C.inverse();
    for (std::size_t i = 0; i < src.size(); ++i) {
      FqMatrix A = twist ? src[i].inverse().transpose() : src[i];
      if (!(img[i] == mat_mul(mat_mul(C, A), Cinv))) return false;
    }
    return true;
  };
  bool plain_inner = false, twisted_inner = false;
  for (const FqMatrix& C : gl2_elements(F)) {
    plain_inner |= matches(C, false);
    twisted_inner |= matches(C, true);
  }
  CHECK_FALSE(plain_inner);
  CHECK(twisted_inner);
}

TEST_CASE("mixed bundle, l=3 q=3 delta={1,3}") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(3, {1, 3});
  SubgroupBundle b = build_subgroups(ld, F);
  CHECK(b.L.order() == 1152);  // Sp_2(3) x GL_2(3)
  CHECK(b.N.order() == 2304);
  CHECK(b.factor({1})->order() == 24);
  CHECK(b.factor({2, 3})->order() == 48);

  // |N| = |L| x the certified normalizer quotient
  QuotientPresentation qp = normalizer_quotient(ld);
  CHECK(qp.certified());
  CHECK(b.N.order() == b.L.order() * qp.quotient_order);

  // Explicit isomorphism Sp_2(3) -> G_{1}
  ChevCtx sub(1, F);
  std::vector<FqMatrix> gens;
  for (const Root& a : sub.roots().roots)
    for (unsigned t = 1; t < 3; ++t) gens.push_back(sub.x(a, t));
  FinGroup sp2 = FinGroup::generate("sp2_3", gens, 1000);
  REQUIRE(sp2.order() == 24);
  const BuiltGroup* G1 = b.factor({1});
  unsigned l = 3;
  auto embed_sp1 = [&](const FqMatrix& A) {
    FqMatrix M = FqMatrix::ident(F, 2 * l);
    unsigned pos[2] = {0, 2 * l - 1};  // e_1 and f_1 slots
    for (unsigned r = 0; r < 2; ++r)
      for (unsigned c = 0; c < 2; ++c) M.set(pos[r], pos[c], A.get(r, c));
    return M;
  };
  for (std::uint32_t i = 0; i < sp2.order(); ++i)
    CHECK(G1->group.contains(embed_sp1(sp2.mat(i))));

  CheckList ck = verify_structure(b);
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
  CHECK(find_check(ck, "structure.vonl.graph:d=2")->status == "pass");
}

TEST_CASE("two interchangeable GL_2 factors, l=4 q=3 delta={2,4}") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(4, {2, 4});
  SubgroupBundle b = build_subgroups(ld, F);
  CHECK(b.L.order() == 2304);  // GL_2(3) x GL_2(3)
  CHECK(b.N.order() == 18432);

  CheckList ck = verify_structure(b);
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
  CHECK(find_check(ck, "structure.v.braid:d=2")->status == "pass");
  CHECK(find_check(ck, "structure.vonl.swap:d=2,j=2")->status == "pass");
  CHECK(find_check(ck, "structure.v.stab:d=2")->status == "pass");

  // The swap generator exchanges the two factors on the nose.
  const FqMatrix& n = b.njd.at(2)[1];
  FqMatrix ninv = n.inverse();
  for (const FqMatrix& g : b.factor({1, 2})->gens)
    CHECK(b.factor({3, 4})->group.contains(mat_mul(mat_mul(n, g), ninv)));
}

TEST_CASE("field automorphism fixes V, l=2 q=9") {
  const FqField& F = FqField::get(3, 2);
  LeviDatum ld = levi_decompose(2, {});
  SubgroupBundle b = build_subgroups(ld, F);
  for (const FqMatrix& v : b.V.gens) CHECK(v.frob(1) == v);
  CheckList ck = verify_structure(b);
  const CheckRecord* fr = find_check(ck, "structure.frob.v");
  REQUIRE(fr != nullptr);
  CHECK(fr->status == "pass");
  auto fails = failed_ids(ck);
  CAPTURE(fails.empty() ? std::string("-") : fails[0]);
  CHECK(ck.pass());
}

TEST_CASE("enumeration is idempotent") {
  const FqField& F = FqField::get(3, 1);
  LeviDatum ld = levi_decompose(2, {});
  SubgroupBundle b = build_subgroups(ld, F);
  std::vector<FqMatrix> all;
  for (std::uint32_t i = 0; i < b.V.group.order(); ++i) all.push_back(b.V.group.mat(i));
  FinGroup again = FinGroup::generate("v_again", all, 1000);
  CHECK(same_group(again, b.V.group));
}

TEST_CASE("conformal torus action has two cosets") {
  const FqField& F = FqField::get(11, 1);
  auto cosets = conformal_torus_action(2, F);
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0].inner);
  CHECK(cosets[0].rep.is_identity());
  CHECK_FALSE(cosets[1].inner);
  CHECK_FALSE(F.is_square(cosets[1].mu));

  ChevCtx ctx(2, F);
  CHECK(conformal_multiplier(cosets[1].rep, ctx.gram()) == (int)cosets[1].mu);
  // delta_mu centralizes the diagonal torus, so the induced map on Irr(T) is trivial
  for (const FqMatrix& t : ctx.torus_gens())
    CHECK(mat_mul(cosets[1].rep, t) == mat_mul(t, cosets[1].rep));
  // a square multiplier is inner: divide by the square root and land in Sp
  unsigned mu2 = F.mul(cosets[1].mu, cosets[1].mu);
  FqMatrix d2 = ctx.conformal_rep(mu2);
  FqMatrix scale = FqMatrix::ident(F, 4);
  for (unsigned i = 0; i < 4; ++i) scale.set(i, i, F.inv(cosets[1].mu));
  CHECK(is_isometry(mat_mul(d2, scale), ctx.gram()));
}

TEST_CASE("automorphism composition") {
  const FqField& F = FqField::get(3, 2);
  ChevCtx ctx(1, F);
  AutAction a;
  a.conj = ctx.conformal_rep(F.gen);
  a.frob_k = 1;
  FqMatrix m = ctx.x(ctx.roots().roots[0], F.gen);
  AutAction aa = a.compose(a);
  CHECK(aa.frob_k == 0);
  CHECK(aa.apply(m) == a.apply(a.apply(m)));
}

TEST_CASE("centralizer of the ell-part recovers the Levi, l=2 q=11 ell=5") {
  const FqField& F = FqField::get(11, 1);
  CentralizerReport r = centralizer_of_torus_ellpart(levi_decompose(2, {}), F, 5);
  CHECK(r.zl_order == 100);
  CHECK(r.zl_ell_order == 25);  // C_5 x C_5
  CHECK(r.zl_ell_exponent == 5);
  CHECK(r.shape == "GL_1 x GL_1");
  CHECK(r.equals_levi);
  CHECK(r.checks.pass());
}

TEST_CASE("centralizer degenerates when ell does not divide q-1, l=2 q=3 ell=5") {
  const FqField& F = FqField::get(3, 1);
  CentralizerReport r = centralizer_of_torus_ellpart(levi_decompose(2, {}), F, 5);
  CHECK(r.zl_ell_order == 1);
  CHECK(r.shape == "Sp_4");  // the ell-part is trivial, so its centralizer is all of G
  CHECK_FALSE(r.equals_levi);
  CHECK(r.checks.pass());
}

TEST_CASE("centralizer with a symplectic block, l=3 q=11 ell=5 delta={1}") {
  const FqField& F = FqField::get(11, 1);
  CentralizerReport r = centralizer_of_torus_ellpart(levi_decompose(3, {1}), F, 5);
  CHECK(r.zl_order == 200);
  CHECK(r.zl_ell_order == 25);
  CHECK(r.shape == "GL_1 x GL_1 x Sp_2");
  CHECK(r.equals_levi);
  CHECK(r.checks.pass());
}
