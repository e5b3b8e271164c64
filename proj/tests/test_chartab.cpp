#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "spb/chartab.hpp"
#include "spb/chevalley.hpp"
#include "spb/rootsys.hpp"

using namespace spb;

namespace {

FqMatrix elem(const FqField& F, unsigned n, std::initializer_list<int> vals) {
  FqMatrix m = FqMatrix::zero(F, n);
  unsigned k = 0;
  for (int v : vals) {
    m.set(k / n, k % n, F.from_int(v));
    ++k;
  }
  return m;
}

FinGroup cyclic(unsigned p, int gen, const char* name) {
  const FqField& F = FqField::get(p, 1);
  return FinGroup::generate(name, {elem(F, 1, {gen})}, 100);
}

FinGroup sym3() {
  const FqField& F = FqField::get(2, 1);
  return FinGroup::generate(
      "s3", {elem(F, 3, {0, 1, 0, 0, 0, 1, 1, 0, 0}), elem(F, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})},
      10);
}

FinGroup dihedral8() {
  const FqField& F = FqField::get(3, 1);
  return FinGroup::generate("wc2", {elem(F, 2, {-1, 0, 0, 1}), elem(F, 2, {0, 1, 1, 0})}, 10);
}

FinGroup sl2(unsigned q) {
  const FqField& F = FqField::get(q, 1);
  return FinGroup::generate("sl2", {elem(F, 2, {1, 1, 0, 1}), elem(F, 2, {0, -1, 1, 0})}, 2000);
}

std::vector<i64> degrees(const CharTable& t) {
  std::vector<i64> d;
  for (auto& ch : t.irreducibles()) d.push_back(ch.degree());
  return d;
}

bool same_values(const CharTable& a, const CharTable& b) {
  if (a.size() != b.size() || a.class_count() != b.class_count()) return false;
  for (unsigned i = 0; i < a.size(); ++i)
    for (unsigned k = 0; k < a.class_count(); ++k)
      if (CycInt::cmp(a.at(i).values[k], b.at(i).values[k])) return false;
  return true;
}

FinGroup product_group(const char* name, const FinGroup& a, const FinGroup& b, u64 budget) {
  std::vector<FqMatrix> gens = a.generator_mats();
  for (auto& g : b.generator_mats()) gens.push_back(g);
  return FinGroup::generate(name, gens, budget);
}

}  // namespace

TEST_CASE("class data invariants and small character tables") {
  const FqField& F3 = FqField::get(3, 1);
  FinGroup one = FinGroup::generate("one", {elem(F3, 1, {1})}, 4);
  CharTable t1(one);
  CHECK(t1.size() == 1);
  CHECK(t1.at(0).degree() == 1);

  FinGroup c2 = cyclic(3, -1, "c2");
  CharTable tc2(c2);
  CHECK(degrees(tc2) == std::vector<i64>{1, 1});

  FinGroup w = dihedral8();
  CharTable tw(w);
  CHECK(tw.class_count() == 5);
  CHECK(degrees(tw) == std::vector<i64>{1, 1, 1, 1, 2});
  CHECK(tw.verify().pass());

  FinGroup s = sl2(3);
  CharTable ts(s);
  CHECK(ts.class_count() == 7);
  CHECK(degrees(ts) == std::vector<i64>{1, 1, 1, 2, 2, 2, 3});
  u64 dsq = 0;
  for (i64 d : degrees(ts)) dsq += u64(d) * u64(d);
  CHECK(dsq == 24);
  CHECK(ts.verify().pass());

  const auto& cls = ts.classes();
  u64 sum = 0;
  for (unsigned k = 0; k < cls.count(); ++k) {
    sum += cls.size[k];
    CHECK(cls.inverse_class[cls.inverse_class[k]] == k);
    CHECK(ts.power_map()[k].size() == cls.rep_order[k]);
    CHECK(ts.power_map()[k][0] == 0);
    if (cls.rep_order[k] > 1) CHECK(ts.power_map()[k][1] == k);
  }
  CHECK(sum == 24);

  CharTable again(s);
  CHECK(same_values(ts, again));
}

TEST_CASE("character table of the rank-two monomial group") {
  auto ld = levi_decompose(2, {});
  auto b = build_subgroups(ld, FqField::get(3, 1), 100000);
  REQUIRE(b.N.enumerated);
  CHECK(b.N.group.order() == 32);
  CharTable tn(b.N.group);
  u64 sum = 0;
  for (unsigned k = 0; k < tn.class_count(); ++k) sum += tn.classes().size[k];
  CHECK(sum == 32);
  CHECK(tn.verify().pass());
}

TEST_CASE("induction, restriction and Frobenius reciprocity") {
  const FqField& F3 = FqField::get(3, 1);
  FinGroup c2 = cyclic(3, -1, "c2");
  FinGroup one = FinGroup::generate("one", {elem(F3, 1, {1})}, 4);
  CharTable t2(c2), t1(one);
  ClassFn reg = induce(t2, t1, {CycInt::integer(1)});
  CHECK(t2.decompose(reg) == std::vector<i64>{1, 1});

  FinGroup s3 = sym3();
  const FqField& F2 = FqField::get(2, 1);
  FinGroup c3 = FinGroup::generate("c3", {elem(F2, 3, {0, 1, 0, 0, 0, 1, 1, 0, 0})}, 10);
  FinGroup c2t = FinGroup::generate("c2t", {elem(F2, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1})}, 10);
  CharTable tg(s3);
  for (const FinGroup* hp : {&c3, &c2t}) {
    CharTable th(*hp);
    for (unsigned i = 0; i < th.size(); ++i)
      for (unsigned j = 0; j < tg.size(); ++j) {
        ClassFn up = induce(tg, th, th.at(i).values);
        ClassFn down = restrict_to(tg, th, tg.at(j).values);
        CHECK(tg.inner_scaled(up, tg.at(j).values).equals(
            th.inner_scaled(th.at(i).values, down).scaled((i64)(s3.order() / hp->order()))));
        CHECK(tg.multiplicity(up, j) == th.multiplicity(down, i));
      }
  }
}

TEST_CASE("linear characters via abelianization") {
  FinGroup c10 = cyclic(11, 2, "c10");
  auto lc = linear_characters(c10);
  CHECK(lc.size() == 10);
  CHECK(lc[0].trivial());
  for (auto& l : lc)
    for (std::uint32_t i = 0; i < 10; ++i)
      for (std::uint32_t j = 0; j < 10; ++j)
        CHECK(l.value(c10.mul(i, j)).equals(l.value(i) * l.value(j)));

  CHECK(linear_characters(sl2(3)).size() == 3);
  CHECK(linear_characters(dihedral8()).size() == 4);
  CHECK(linear_characters(sym3()).size() == 2);
}

TEST_CASE("Clifford theory for the monomial group at q = 11") {
  auto ld = levi_decompose(2, {});
  auto b = build_subgroups(ld, FqField::get(11, 1), 200000);
  REQUIRE(b.N.enumerated);
  REQUIRE(b.T.enumerated);
  const FinGroup& N = b.N.group;
  const FinGroup& T = b.T.group;
  CHECK(N.order() == 800);
  CHECK(T.order() == 100);

  CharTable tn(N);
  auto chars = linear_characters(T);
  REQUIRE(chars.size() == 100);

  // a character in general position induces irreducibly, of degree |N/T|
  int witness = -1;
  for (unsigned i = 0; i < chars.size() && witness < 0; ++i) {
    ClassFn f = induce_linear(tn, T, chars[i]);
    i64 norm = 0;
    if (tn.inner_scaled(f, f).is_integer(&norm) && norm == (i64)N.order()) witness = (int)i;
  }
  REQUIRE(witness >= 0);
  ExtensionRecord er = extension_search(T, N, chars[witness]);
  CHECK(er.stab.order() == T.order());
  ClassFn f = induce_linear(tn, T, chars[witness]);
  auto m = tn.decompose(f);
  int hits = 0;
  for (unsigned j = 0; j < tn.size(); ++j)
    if (m[j]) {
      ++hits;
      CHECK(m[j] == 1);
      CHECK(tn.at(j).degree() == 8);
    }
  CHECK(hits == 1);
}

TEST_CASE("no linear character of the rank-two torus induces irreducibly at q = 3") {
  auto ld = levi_decompose(2, {});
  auto b = build_subgroups(ld, FqField::get(3, 1), 100000);
  CharTable tn(b.N.group);
  for (auto& l : linear_characters(b.T.group)) {
    ClassFn f = induce_linear(tn, b.T.group, l);
    i64 norm = 0;
    REQUIRE(tn.inner_scaled(f, f).is_integer(&norm));
    CHECK(norm > (i64)b.N.group.order());  // the Weyl action has a kernel on T-hat
  }
}

TEST_CASE("ell-block partitions of small groups") {
  FinGroup w = dihedral8();
  CharTable tw(w);
  BlockPartition bw = ell_blocks(tw, 5);
  CHECK(bw.count() == 5);
  for (unsigned b = 0; b < bw.count(); ++b) {
    CHECK(bw.blocks[b].size() == 1);
    CHECK(bw.defect[b] == 0);
    CHECK(bw.defect_order[b] == 1);
  }
  CHECK(bw.checks.pass());

  FinGroup c10 = cyclic(11, 2, "c10");
  CharTable tc(c10);
  BlockPartition bc = ell_blocks(tc, 5);
  CHECK(bc.count() == 2);
  CHECK(bc.blocks[0].size() == 5);
  CHECK(bc.blocks[1].size() == 5);
  CHECK(bc.defect == std::vector<unsigned>{1, 1});
  CHECK(bc.block_of[tc.trivial_index()] == bc.principal);
  // the blocks are separated by the value at the order-2 element
  unsigned inv = 0;
  while (tc.power_map()[inv].size() != 2) ++inv;
  for (unsigned chi = 0; chi < tc.size(); ++chi) {
    bool plus = tc.at(chi).values[inv].equals(CycInt::integer(1));
    CHECK(plus == (bc.block_of[chi] == bc.principal));
  }
  CHECK(bc.checks.pass());
  CHECK(ell_blocks(tc, 5, 1).block_of == bc.block_of);

  FinGroup s3 = sym3();
  CharTable ts3(s3);
  BlockPartition b3 = ell_blocks(ts3, 3);
  CHECK(b3.count() == 1);
  CHECK(b3.defect == std::vector<unsigned>{1});
  CHECK(b3.height == std::vector<unsigned>(3, 0));
  CHECK_THROWS_AS(ell_blocks(ts3, 2), std::invalid_argument);

  FinGroup g1320 = sl2(11);
  CharTable tsl(g1320);
  CHECK(tsl.group().order() == 1320);
  BlockPartition bs = ell_blocks(tsl, 5);
  CHECK(bs.blocks[bs.principal].size() == 4);
  CHECK(bs.defect[bs.principal] == 1);
  for (unsigned chi : bs.blocks[bs.principal]) CHECK(bs.height[chi] == 0);
  CHECK(bs.checks.pass());
  CHECK(ell_blocks(tsl, 5, 1).block_of == bs.block_of);
}

TEST_CASE("Brauer induced blocks") {
  FinGroup s3 = sym3();
  CharTable ts3(s3);
  BlockPartition b3 = ell_blocks(ts3, 3);
  for (unsigned b = 0; b < b3.count(); ++b)
    CHECK(brauer_map(ts3, b3, b, ts3, b3) == std::optional<unsigned>(b));

  auto ld = levi_decompose(2, {});
  const FqField& F = FqField::get(11, 1);
  auto bun = build_subgroups(ld, F, 200000);
  const FinGroup& N = bun.N.group;
  const FinGroup& T = bun.T.group;
  CharTable tn(N), tt(T);
  BlockPartition bn = ell_blocks(tn, 5), bt = ell_blocks(tt, 5);

  // principal block of T induces the principal block of N
  auto img = brauer_map(tt, bt, bt.principal, tn, bn);
  REQUIRE(img.has_value());
  CHECK(*img == bn.principal);

  // transitivity through an intermediate subgroup T <= M <= N
  ChevCtx ctx(2, F);
  std::vector<FqMatrix> mg = T.generator_mats();
  mg.push_back(ctx.n_simple(1));
  FinGroup M = FinGroup::generate("tm", mg, 1000);
  CHECK(M.order() == 200);
  CharTable tm(M);
  BlockPartition bm = ell_blocks(tm, 5);
  auto step1 = brauer_map(tt, bt, bt.principal, tm, bm);
  REQUIRE(step1.has_value());
  auto step2 = brauer_map(tm, bm, *step1, tn, bn);
  REQUIRE(step2.has_value());
  CHECK(*step2 == *img);
}

TEST_CASE("extension search: trivial base, obstructed base") {
  auto ld = levi_decompose(2, {});
  auto b = build_subgroups(ld, FqField::get(3, 1), 100000);
  const FinGroup& T = b.T.group;
  const FinGroup& V = b.V.group;
  LinearChar triv{1, std::vector<unsigned>(T.order(), 0)};
  ExtensionRecord r0 = extension_search(T, b.N.group, triv);
  CHECK(r0.stab.order() == b.N.group.order());
  CHECK(!r0.extensions.empty());
  CHECK(r0.extensions.size() == r0.gallagher_count);
  bool has_trivial = false;
  for (auto& e : r0.extensions) has_trivial = has_trivial || e.trivial();
  CHECK(has_trivial);
  CHECK(V.order() == 32);

  // the faithful central character of D_8 has no linear extension
  FinGroup d8 = dihedral8();
  const FqField& F3 = FqField::get(3, 1);
  FinGroup z = FinGroup::generate("z", {elem(F3, 2, {-1, 0, 0, -1})}, 4);
  LinearChar faithful{2, {0, 1}};
  CHECK(z.mat(1).is_identity() == false);
  ExtensionRecord rz = extension_search(z, d8, faithful);
  CHECK(rz.stab.order() == 8);
  CHECK(rz.extensions.empty());
  CHECK(rz.gallagher_count == 4);
}

TEST_CASE("every character of H extends to its stabilizer in HV") {
  for (unsigned l = 2; l <= 3; ++l) {
    std::vector<std::vector<unsigned>> subsets = {{}};
    for (unsigned i = 1; i <= l; ++i)
      for (std::size_t s = 0, n = subsets.size(); s < n; ++s) {
        auto t = subsets[s];
        t.push_back(i);
        subsets.push_back(t);
      }
    for (auto& delta : subsets) {
      auto ld = levi_decompose(l, delta);
      auto b = build_subgroups(ld, FqField::get(3, 1), 200000);
      REQUIRE(b.H.enumerated);
      REQUIRE(b.V.enumerated);
      FinGroup hv = product_group("hv", b.H.group, b.V.group, 65536);
      for (auto& lam : linear_characters(b.H.group)) {
        ExtensionRecord er = extension_search(b.H.group, hv, lam);
        CHECK(!er.extensions.empty());
        CHECK(er.extensions.size() == er.gallagher_count);
      }
    }
  }
}

TEST_CASE("equivariant extension maps") {
  // no external acts: conjugation-equivariant map on all of Irr(T)
  auto ld = levi_decompose(2, {});
  auto b3 = build_subgroups(ld, FqField::get(3, 1), 100000);
  auto fam3 = linear_characters(b3.T.group);
  EquivariantMap m3 = equivariant_extension_map(b3.T.group, b3.N.group, fam3, {});
  CHECK(m3.ok());
  CHECK(m3.entries.size() == fam3.size());

  // conformal outer action at q = 11
  const FqField& F11 = FqField::get(11, 1);
  auto b11 = build_subgroups(ld, F11, 200000);
  const FinGroup& N = b11.N.group;
  const FinGroup& T = b11.T.group;
  auto cosets = conformal_torus_action(2, F11);
  REQUIRE(cosets.size() == 2);
  REQUIRE(!cosets[1].inner);
  const FqMatrix& c = cosets[1].rep;
  FqMatrix ci = c.inverse();
  std::vector<std::uint32_t> delta(N.order());
  for (std::uint32_t i = 0; i < N.order(); ++i) {
    auto idx = N.index_of(mat_mul(mat_mul(c, N.mat(i)), ci));
    REQUIRE(idx >= 0);  // the conformal torus normalizes N
    delta[i] = (std::uint32_t)idx;
  }
  auto fam = linear_characters(T);
  EquivariantMap em = equivariant_extension_map(T, N, fam, {delta});
  REQUIRE(em.ok());
  REQUIRE(em.entries.size() == fam.size());

  // conjugation by the conformal representative fixes the torus pointwise, so
  // it moves no torus character and imposes no constraint (its twist on the
  // chosen extensions is the delta defect); spot-check transport of a
  // character moved by an inner act
  for (std::uint32_t j = 0; j < T.order(); ++j) CHECK(delta[(std::uint32_t)N.index_of(T.mat(j))] == (std::uint32_t)N.index_of(T.mat(j)));
  unsigned moved = 0;
  for (unsigned i = 0; i < fam.size(); ++i) {
    std::uint32_t g0 = N.generator_ids().back();
    std::vector<unsigned> ne(fam[i].exp.size());
    bool same = true;
    for (std::uint32_t j = 0; j < T.order(); ++j) {
      auto tj = N.index_of(T.mat(j));
      auto im = T.index_of(N.mat(N.mul(N.mul(g0, (std::uint32_t)tj), N.inv(g0))));
      REQUIRE(im >= 0);
      ne[(std::uint32_t)im] = fam[i].exp[j];
      same = same && ne[(std::uint32_t)im] == fam[i].exp[(std::uint32_t)im];
    }
    if (!same) {
      ++moved;
      unsigned target = 0;
      for (unsigned t = 0; t < fam.size(); ++t)
        if (fam[t].exp == ne) target = t;
      // transported extension agrees with the entry stored at the image
      const auto& ei = em.entries[i];
      const auto& et = em.entries[target];
      CHECK(et.stab.order() == ei.stab.order());
      for (std::uint32_t s = 0; s < ei.stab.order(); ++s) {
        FqMatrix x = mat_mul(mat_mul(N.mat(g0), ei.stab.mat(s)), N.mat(N.inv(g0)));
        auto si = et.stab.index_of(x);
        REQUIRE(si >= 0);
        CHECK(et.ext.exp[(std::uint32_t)si] == ei.ext.exp[s]);
      }
    }
  }
  CHECK(moved > 0);

  // field automorphism acts trivially on V at q = 9
  const FqField& F9 = FqField::get(3, 2);
  auto b9 = build_subgroups(ld, F9, 200000);
  const FinGroup& V9 = b9.V.group;
  std::vector<std::uint32_t> f0(V9.order());
  bool ident = true;
  for (std::uint32_t i = 0; i < V9.order(); ++i) {
    auto idx = V9.index_of(V9.mat(i).frob(1));
    REQUIRE(idx >= 0);
    f0[i] = (std::uint32_t)idx;
    ident = ident && f0[i] == i;
  }
  CHECK(ident);
  FinGroup hv9 = product_group("hv9", b9.H.group, b9.V.group, 65536);
  std::vector<std::uint32_t> f0hv(hv9.order());
  for (std::uint32_t i = 0; i < hv9.order(); ++i)
    f0hv[i] = (std::uint32_t)hv9.index_of(hv9.mat(i).frob(1));
  auto famh = linear_characters(b9.H.group);
  EquivariantMap em9 = equivariant_extension_map(b9.H.group, hv9, famh, {f0hv});
  CHECK(em9.ok());
}
