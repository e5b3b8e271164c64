#include <doctest.h>

#include <algorithm>
#include <set>

#include "spb/rootsys.hpp"

using namespace spb;

TEST_CASE("root system C_l basics") {
  for (unsigned l = 1; l <= 5; ++l) {
    RootSystem rs = build_root_system(l);
    CHECK(rs.roots.size() == 2 * l * l);
    CHECK(rs.simple.size() == l);
    unsigned longs = 0;
    for (auto& r : rs.roots) longs += r.is_long();
    CHECK(longs == 2 * l);
    // closed under negation, no duplicates
    std::set<Root> s(rs.roots.begin(), rs.roots.end());
    CHECK(s.size() == rs.roots.size());
    for (auto& r : rs.roots) CHECK(s.count(r.negated()));
  }
  RootSystem rs2 = build_root_system(2);
  CHECK(rs2.simple[0] == Root::e(2, 1, 2));            // 2e_1
  CHECK(rs2.simple[1] == Root::ee(2, 2, 1, 1, -1));    // e_2 - e_1
}

TEST_CASE("Weyl group orders and reflections") {
  CHECK(weyl_order(1) == 2);
  CHECK(weyl_order(2) == 8);
  CHECK(weyl_order(3) == 48);
  CHECK(weyl_order(4) == 384);
  auto w2 = weyl_group(2);
  CHECK(w2.size() == 8);
  CHECK(w2[0].is_identity());
  // reflections are involutions, negate their root, permute the root set
  RootSystem rs = build_root_system(3);
  for (auto& a : rs.roots) {
    SignedPerm s = reflection(a);
    CHECK((s * s).is_identity());
    CHECK(s.apply(a) == a.negated());
    for (auto& b : rs.roots)
      CHECK(std::binary_search(rs.roots.begin(), rs.roots.end(), s.apply(b)));
  }
}

TEST_CASE("signed permutation composition and inverse") {
  auto w3 = weyl_group(3);
  for (size_t i = 0; i < w3.size(); i += 7)
    for (size_t j = 0; j < w3.size(); j += 5) {
      SignedPerm a = w3[i], b = w3[j];
      CHECK(((a * b).inverse() == b.inverse() * a.inverse()));
      for (int x = 1; x <= 3; ++x)
        CHECK((a * b).apply(x) == a.apply(b.apply(x)));
    }
}

TEST_CASE("Levi decomposition: worked shapes") {
  // l = 3, delta' = {a_1, a_3}: long A_1 on {1}, short A_1 on {2,3}
  LeviDatum d1 = levi_decompose(3, {1, 3});
  CHECK(d1.jminus == std::vector<unsigned>({1}));
  CHECK(d1.orbits_of_d[2] == std::vector<std::vector<unsigned>>({{2, 3}}));
  CHECK(d1.a_of_d(1) == 0);
  CHECK(d1.phi_sub.size() == 4);

  // l = 4, delta' = {a_2, a_4}: two short A_1 blocks, J_{-1} empty
  LeviDatum d2 = levi_decompose(4, {2, 4});
  CHECK(d2.jminus.empty());
  CHECK(d2.orbits_of_d[2] ==
        std::vector<std::vector<unsigned>>({{1, 2}, {3, 4}}));
  CHECK(d2.a_of_d(2) == 2);
  CHECK(d2.j_of_d(2) == std::vector<unsigned>({1, 2, 3, 4}));
  CHECK(d2.a_of_d(1) == 0);

  // l = 4, delta' = {a_1, a_2, a_4}: C_2 block {1,2} + short A_1 {3,4}
  LeviDatum d3 = levi_decompose(4, {1, 2, 4});
  CHECK(d3.jminus == std::vector<unsigned>({1, 2}));
  CHECK(d3.orbits_of_d[2] == std::vector<std::vector<unsigned>>({{3, 4}}));
  CHECK(d3.phi_sub.size() == 8 + 2);

  // empty delta': everything is a singleton
  LeviDatum d4 = levi_decompose(3, {});
  CHECK(d4.jminus.empty());
  CHECK(d4.orbits_of_d[1] ==
        std::vector<std::vector<unsigned>>({{1}, {2}, {3}}));

  // full delta' at l = 2 is all of C_2
  LeviDatum d5 = levi_decompose(2, {1, 2});
  CHECK(d5.jminus == std::vector<unsigned>({1, 2}));
  CHECK(d5.phi_sub.size() == 8);
}

TEST_CASE("Levi decomposition: partition invariants for every subset") {
  for (unsigned l = 2; l <= 4; ++l) {
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
      std::vector<unsigned> delta;
      for (unsigned i = 0; i < l; ++i)
        if (mask & (1u << i)) delta.push_back(i + 1);
      LeviDatum d = levi_decompose(l, delta);
      // the supports partition {1..l}
      std::set<unsigned> seen(d.jminus.begin(), d.jminus.end());
      unsigned rank_sum = (unsigned)d.jminus.size();
      unsigned coord_sum = (unsigned)d.jminus.size();
      for (unsigned dd : d.dset()) {
        for (auto& orb : d.orbits_of_d[dd]) {
          CHECK(orb.size() == dd);
          for (unsigned x : orb) {
            CHECK(!seen.count(x));
            seen.insert(x);
          }
          rank_sum += dd - 1;
          coord_sum += dd;
        }
      }
      CHECK(seen.size() == l);
      CHECK(rank_sum == delta.size());
      CHECK(coord_sum == l);
      // root counts: long block 2m^2, type A_{d-1} blocks d(d-1) each
      size_t expect = 2 * d.jminus.size() * d.jminus.size();
      for (unsigned dd : d.dset())
        expect += (size_t)d.a_of_d(dd) * dd * (dd - 1);
      CHECK(d.phi_sub.size() == expect);
    }
  }
}

TEST_CASE("normalizer quotient certification") {
  // l = 4, delta' = {a_2, a_4}: quotient is W(C_2) of order 8
  QuotientPresentation qp = normalizer_quotient(levi_decompose(4, {2, 4}));
  CHECK(qp.certified());
  CHECK(qp.quotient_order == 8);
  CHECK(qp.w_phi_order == 4);
  CHECK(qp.normalizer_order == 32);

  // empty Levi: N_W = W acting on l singletons, quotient all of W(C_l)
  QuotientPresentation q0 = normalizer_quotient(levi_decompose(3, {}));
  CHECK(q0.certified());
  CHECK(q0.quotient_order == 48);
  CHECK(q0.w_phi_order == 1);

  // full Levi: N_W = W_{Phi'} = W, quotient trivial
  QuotientPresentation q1 = normalizer_quotient(levi_decompose(3, {1, 2, 3}));
  CHECK(q1.certified());
  CHECK(q1.quotient_order == 1);

  // mixed: the long block contributes nothing, a_2 = 1 gives W(C_1)
  QuotientPresentation q2 = normalizer_quotient(levi_decompose(4, {1, 2, 4}));
  CHECK(q2.certified());
  CHECK(q2.quotient_order == 2);

  // all subsets at small rank certify
  for (unsigned l = 2; l <= 4; ++l)
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
      std::vector<unsigned> delta;
      for (unsigned i = 0; i < l; ++i)
        if (mask & (1u << i)) delta.push_back(i + 1);
      QuotientPresentation q = normalizer_quotient(levi_decompose(l, delta));
      CHECK(q.certified());
    }
}

TEST_CASE("setwise stabilizer structure certificate") {
  // two orbits of size 2: |S_2|^2 * 2^2 * |S_2| = 32
  LeviDatum d = levi_decompose(4, {2, 4});
  StabCertificate sc = subgroup_stabilizer(d, 2);
  CHECK(sc.certified());
  CHECK(sc.stab_order == 32);

  // single orbit of size 2: |S_2| * 2
  LeviDatum d2 = levi_decompose(4, {1, 2, 4});
  StabCertificate sc2 = subgroup_stabilizer(d2, 2);
  CHECK(sc2.certified());
  CHECK(sc2.stab_order == 4);

  // single orbit of size 3: |S_3| * 2
  LeviDatum d3 = levi_decompose(3, {2, 3});
  StabCertificate sc3 = subgroup_stabilizer(d3, 3);
  CHECK(sc3.certified());
  CHECK(sc3.stab_order == 12);
}

TEST_CASE("label action") {
  SignedPerm t = SignedPerm::identity(2);  // transposition (1 2)
  t.img[0] = 2;
  t.img[1] = 1;
  std::vector<int> lab = {3, 7};
  CHECK(apply_to_label(t, lab, 10) == std::vector<int>({7, 3}));
  SignedPerm f = SignedPerm::identity(2);  // sign flip on coordinate 1
  f.img[0] = -1;
  CHECK(apply_to_label(f, lab, 10) == std::vector<int>({7, 7}));
  // group action property over labels mod 5
  auto w2 = weyl_group(2);
  std::vector<int> l0 = {1, 4};
  for (auto& a : w2)
    for (auto& b : w2) {
      auto lhs = apply_to_label(a * b, l0, 5);
      auto rhs = apply_to_label(a, apply_to_label(b, l0, 5), 5);
      CHECK(lhs == rhs);
    }
}
