#include "spb/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace spb {

// ---------------------------------------------------------------------------
// Root

bool Root::is_long() const {
  int n = 0;
  for (unsigned i = 0; i < l; ++i) n += int(c[i]) * int(c[i]);
  return n == 4 && std::count(c.begin(), c.begin() + l, 0) == int(l) - 1;
}

bool Root::is_zero() const {
  return std::all_of(c.begin(), c.begin() + l, [](std::int8_t x) { return x == 0; });
}

int Root::dot(const Root& o) const {
  int s = 0;
  for (unsigned i = 0; i < l; ++i) s += int(c[i]) * int(o.c[i]);
  return s;
}

Root Root::negated() const {
  Root r = *this;
  for (unsigned i = 0; i < l; ++i) r.c[i] = -r.c[i];
  return r;
}

bool Root::operator<(const Root& o) const {
  for (unsigned i = 0; i < l; ++i)
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  return false;
}

std::string Root::str() const {
  std::string s;
  for (unsigned i = 0; i < l; ++i) {
    if (c[i] == 0) continue;
    int v = c[i];
    if (!s.empty() && v > 0) s += "+";
    if (v == -1) s += "-";
    else if (v != 1) s += std::to_string(v) + "*";
    s += "e" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

Root Root::e(unsigned l, unsigned i, int coeff) {
  Root r;
  r.l = l;
  r.c[i - 1] = (std::int8_t)coeff;
  return r;
}

Root Root::ee(unsigned l, unsigned i, int ci, unsigned j, int cj) {
  Root r;
  r.l = l;
  r.c[i - 1] = (std::int8_t)ci;
  r.c[j - 1] = (std::int8_t)cj;
  return r;
}

int RootSystem::index_of(const Root& r) const {
  auto it = std::lower_bound(roots.begin(), roots.end(), r);
  if (it == roots.end() || !(*it == r)) return -1;
  return int(it - roots.begin());
}

RootSystem build_root_system(unsigned l) {
  if (l == 0 || l > kMaxRank) throw std::invalid_argument("build_root_system: rank out of range");
  RootSystem rs;
  rs.l = l;
  for (unsigned i = 1; i <= l; ++i) {
    rs.roots.push_back(Root::e(l, i, 2));
    rs.roots.push_back(Root::e(l, i, -2));
    for (unsigned j = i + 1; j <= l; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) rs.roots.push_back(Root::ee(l, i, si, j, sj));
  }
  std::sort(rs.roots.begin(), rs.roots.end());
  rs.simple.push_back(Root::e(l, 1, 2));
  for (unsigned i = 2; i <= l; ++i) rs.simple.push_back(Root::ee(l, i, 1, i - 1, -1));
  return rs;
}

// ---------------------------------------------------------------------------
// SignedPerm

SignedPerm SignedPerm::identity(unsigned l) {
  SignedPerm w;
  w.l = l;
  for (unsigned i = 0; i < l; ++i) w.img[i] = (std::int8_t)(i + 1);
  return w;
}

int SignedPerm::apply(int x) const {
  int a = x < 0 ? -x : x;
  int y = img[a - 1];
  return x < 0 ? -y : y;
}

SignedPerm SignedPerm::operator*(const SignedPerm& o) const {
  SignedPerm r;
  r.l = l;
  for (unsigned i = 0; i < l; ++i) r.img[i] = (std::int8_t)apply(o.img[i]);
  return r;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm r;
  r.l = l;
  for (unsigned i = 0; i < l; ++i) {
    int y = img[i];
    if (y > 0) r.img[y - 1] = (std::int8_t)(i + 1);
    else r.img[-y - 1] = (std::int8_t)(-(int)(i + 1));
  }
  return r;
}

Root SignedPerm::apply(const Root& r) const {
  Root s;
  s.l = r.l;
  for (unsigned i = 0; i < l; ++i) {
    if (r.c[i] == 0) continue;
    int y = img[i];
    if (y > 0) s.c[y - 1] = (std::int8_t)(s.c[y - 1] + r.c[i]);
    else s.c[-y - 1] = (std::int8_t)(s.c[-y - 1] - r.c[i]);
  }
  return s;
}

bool SignedPerm::is_identity() const {
  for (unsigned i = 0; i < l; ++i)
    if (img[i] != (int)(i + 1)) return false;
  return true;
}

bool SignedPerm::operator<(const SignedPerm& o) const {
  for (unsigned i = 0; i < l; ++i)
    if (img[i] != o.img[i]) return img[i] < o.img[i];
  return false;
}

u64 SignedPerm::key() const {
  u64 k = 0;
  for (unsigned i = 0; i < l; ++i) {
    int y = img[i];
    unsigned nib = (unsigned)((y < 0 ? -y : y) - 1) << 1 | (y < 0 ? 1u : 0u);
    k |= (u64)nib << (5 * i);
  }
  return k;
}

std::string SignedPerm::str() const {
  std::string s = "[";
  for (unsigned i = 0; i < l; ++i) s += (i ? "," : "") + std::to_string((int)img[i]);
  return s + "]";
}

SignedPerm reflection(const Root& alpha) {
  unsigned l = alpha.l;
  int nz[2] = {-1, -1};
  int cnt = 0;
  for (unsigned i = 0; i < l; ++i)
    if (alpha.c[i] != 0) {
      if (cnt < 2) nz[cnt] = (int)i;
      ++cnt;
    }
  SignedPerm w = SignedPerm::identity(l);
  if (cnt == 1) {
    // +-2 e_i: sign flip.
    w.img[nz[0]] = (std::int8_t)(-(nz[0] + 1));
  } else if (cnt == 2) {
    int i = nz[0], j = nz[1];
    bool same_sign = (alpha.c[i] > 0) == (alpha.c[j] > 0);
    if (!same_sign) {
      // e_i - e_j: plain transposition.
      w.img[i] = (std::int8_t)(j + 1);
      w.img[j] = (std::int8_t)(i + 1);
    } else {
      // e_i + e_j: transposition with both signs flipped.
      w.img[i] = (std::int8_t)(-(j + 1));
      w.img[j] = (std::int8_t)(-(i + 1));
    }
  } else {
    throw std::invalid_argument("reflection: not a C-type root");
  }
  return w;
}

u64 weyl_order(unsigned l) {
  u64 r = 1;
  for (unsigned i = 1; i <= l; ++i) r *= 2 * i;
  return r;
}

std::vector<SignedPerm> weyl_group(unsigned l) {
  if (l == 0 || l > kMaxRank) throw std::invalid_argument("weyl_group: rank out of range");
  std::vector<unsigned> perm(l);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SignedPerm> out;
  out.reserve(weyl_order(l));
  do {
    for (unsigned mask = 0; mask < (1u << l); ++mask) {
      SignedPerm w;
      w.l = l;
      for (unsigned i = 0; i < l; ++i)
        w.img[i] = (std::int8_t)((mask >> i & 1) ? -(int)perm[i] : (int)perm[i]);
      out.push_back(w);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Identity-first deterministic order.
  std::sort(out.begin(), out.end(), [](const SignedPerm& a, const SignedPerm& b) {
    if (a.is_identity() != b.is_identity()) return a.is_identity();
    return a < b;
  });
  return out;
}

std::vector<SignedPerm> perm_closure(unsigned l, std::vector<SignedPerm> gens) {
  std::vector<SignedPerm> elems = {SignedPerm::identity(l)};
  std::unordered_set<u64> seen = {elems[0].key()};
  for (auto& g : gens)
    if (seen.insert(g.key()).second) elems.push_back(g);
  for (size_t i = 0; i < elems.size(); ++i) {
    for (auto& g : gens) {
      SignedPerm p = elems[i] * g;
      if (seen.insert(p.key()).second) elems.push_back(p);
    }
  }
  return elems;
}

// ---------------------------------------------------------------------------
// Levi decomposition

std::vector<unsigned> LeviDatum::j_of_d(unsigned d) const {
  std::vector<unsigned> j;
  if (d < orbits_of_d.size())
    for (auto& I : orbits_of_d[d]) j.insert(j.end(), I.begin(), I.end());
  std::sort(j.begin(), j.end());
  return j;
}

unsigned LeviDatum::a_of_d(unsigned d) const {
  return d < orbits_of_d.size() ? (unsigned)orbits_of_d[d].size() : 0;
}

std::vector<unsigned> LeviDatum::dset() const {
  std::vector<unsigned> ds;
  for (unsigned d = 1; d < orbits_of_d.size(); ++d)
    if (!orbits_of_d[d].empty()) ds.push_back(d);
  return ds;
}

std::string LeviDatum::str() const {
  std::string s = "J-1={";
  for (size_t i = 0; i < jminus.size(); ++i) s += (i ? "," : "") + std::to_string(jminus[i]);
  s += "}";
  for (unsigned d : dset()) {
    s += " O" + std::to_string(d) + "=";
    for (auto& I : orbits_of_d[d]) {
      s += "{";
      for (size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i]);
      s += "}";
    }
  }
  return s;
}

namespace {

// Rank of an integer matrix (rows = vectors), fraction-free elimination.
unsigned int_rank(std::vector<std::array<i64, kMaxRank>> rows, unsigned cols) {
  unsigned rank = 0;
  for (unsigned c = 0; c < cols && rank < rows.size(); ++c) {
    unsigned piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (unsigned r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      i64 a = rows[rank][c], b = rows[r][c];
      for (unsigned k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

LeviDatum levi_decompose(unsigned l, const std::vector<unsigned>& delta) {
  RootSystem rs = build_root_system(l);
  LeviDatum ld;
  ld.l = l;
  ld.delta = delta;
  std::sort(ld.delta.begin(), ld.delta.end());
  for (size_t i = 0; i < ld.delta.size(); ++i) {
    if (ld.delta[i] < 1 || ld.delta[i] > l) throw std::invalid_argument("levi_decompose: bad index");
    if (i && ld.delta[i] == ld.delta[i - 1]) throw std::invalid_argument("levi_decompose: duplicate index");
  }

  std::vector<std::array<i64, kMaxRank>> span_rows;
  for (unsigned idx : ld.delta) {
    const Root& a = rs.simple[idx - 1];
    std::array<i64, kMaxRank> row{};
    for (unsigned i = 0; i < l; ++i) row[i] = a.c[i];
    span_rows.push_back(row);
  }
  unsigned base_rank = int_rank(span_rows, l);

  for (auto& r : rs.roots) {
    auto rows = span_rows;
    std::array<i64, kMaxRank> row{};
    for (unsigned i = 0; i < l; ++i) row[i] = r.c[i];
    rows.push_back(row);
    if (int_rank(rows, l) == base_rank) ld.phi_sub.push_back(r);
  }

  // Connected components under non-orthogonality.
  unsigned n = (unsigned)ld.phi_sub.size();
  std::vector<unsigned> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<unsigned(unsigned)> find = [&](unsigned x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      if (ld.phi_sub[i].dot(ld.phi_sub[j]) != 0) comp[find(i)] = find(j);

  std::vector<std::vector<unsigned>> groups;  // indices into phi_sub
  {
    std::vector<int> id(n, -1);
    for (unsigned i = 0; i < n; ++i) {
      unsigned r = find(i);
      if (id[r] < 0) { id[r] = (int)groups.size(); groups.emplace_back(); }
      groups[id[r]].push_back(i);
    }
  }

  ld.orbits_of_d.assign(l + 1, {});
  std::vector<bool> used(l + 1, false);
  for (auto& g : groups) {
    std::vector<unsigned> support;
    bool has_long = false;
    for (unsigned idx : g) {
      const Root& r = ld.phi_sub[idx];
      if (r.is_long()) has_long = true;
      for (unsigned i = 0; i < l; ++i)
        if (r.c[i] != 0) support.push_back(i + 1);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (unsigned k : support) used[k] = true;
    if (has_long) {
      if (!ld.jminus.empty()) throw std::logic_error("levi_decompose: two long components");
      ld.jminus = support;
      // C_m component has 2 m^2 roots.
      if (g.size() != 2u * support.size() * support.size())
        throw std::logic_error("levi_decompose: long component root count");
    } else {
      unsigned d = (unsigned)support.size();
      // A_{d-1} component has d(d-1) roots.
      if (g.size() != (size_t)d * (d - 1))
        throw std::logic_error("levi_decompose: short component root count");
      ld.orbits_of_d[d].push_back(support);
    }
  }
  for (unsigned k = 1; k <= l; ++k)
    if (!used[k]) ld.orbits_of_d[1].push_back({k});
  for (auto& os : ld.orbits_of_d)
    std::sort(os.begin(), os.end());

  // Rank accounting: sum_d (d-1) a_d + |J_{-1}| = |delta'|,
  // and sum_d d a_d + |J_{-1}| = l.
  unsigned rk = (unsigned)ld.jminus.size(), total = (unsigned)ld.jminus.size();
  for (unsigned d = 1; d <= l; ++d) {
    rk += (d - 1) * ld.a_of_d(d);
    total += d * ld.a_of_d(d);
  }
  if (rk != ld.delta.size() || total != l)
    throw std::logic_error("levi_decompose: rank accounting failed");
  return ld;
}

// ---------------------------------------------------------------------------
// Normalizer quotient

namespace {

// Image of w as a signed permutation of the orbit list O_d, or nullopt if w
// does not permute the orbits with uniform signs.
bool orbit_image(const SignedPerm& w, const std::vector<std::vector<unsigned>>& orbits,
                 SignedPerm* out) {
  unsigned a = (unsigned)orbits.size();
  SignedPerm r;
  r.l = a;
  for (unsigned j = 0; j < a; ++j) {
    std::vector<unsigned> img_support;
    int sign = 0;
    for (unsigned k : orbits[j]) {
      int y = w.apply((int)k);
      int s = y > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      else if (sign != s) return false;
      img_support.push_back((unsigned)(y > 0 ? y : -y));
    }
    std::sort(img_support.begin(), img_support.end());
    auto it = std::find(orbits.begin(), orbits.end(), img_support);
    if (it == orbits.end()) return false;
    unsigned jj = (unsigned)(it - orbits.begin());
    r.img[j] = (std::int8_t)(sign * (int)(jj + 1));
  }
  if (out) *out = r;
  return true;
}

}  // namespace

QuotientPresentation normalizer_quotient(const LeviDatum& ld) {
  QuotientPresentation qp;
  unsigned l = ld.l;
  auto W = weyl_group(l);

  std::vector<SignedPerm> refl_gens;
  for (auto& r : ld.phi_sub) refl_gens.push_back(reflection(r));
  auto Wphi = perm_closure(l, refl_gens);
  std::unordered_set<u64> wphi_keys;
  for (auto& w : Wphi) wphi_keys.insert(w.key());
  qp.w_phi_order = Wphi.size();

  // w normalizes W_{Phi'} iff w(Phi') = Phi' as a set.
  std::unordered_set<u64> phi_keys;
  auto root_key = [&](const Root& r) {
    u64 k = 0;
    for (unsigned i = 0; i < l; ++i) k = k * 9 + (unsigned)(r.c[i] + 4);
    return k;
  };
  for (auto& r : ld.phi_sub) phi_keys.insert(root_key(r));
  std::vector<SignedPerm> normalizer;
  for (auto& w : W) {
    bool ok = true;
    for (auto& r : ld.phi_sub)
      if (!phi_keys.count(root_key(w.apply(r)))) { ok = false; break; }
    if (ok) normalizer.push_back(w);
  }
  qp.normalizer_order = normalizer.size();
  qp.quotient_order = qp.normalizer_order / qp.w_phi_order;

  std::vector<unsigned> ds = ld.dset();
  qp.expected_order = 1;
  for (unsigned d : ds) qp.expected_order *= weyl_order(ld.a_of_d(d));

  // Relabeling homomorphism into prod_d W(C_{a_d}).
  auto image_of = [&](const SignedPerm& w, std::vector<SignedPerm>* out) {
    out->clear();
    for (unsigned d : ds) {
      SignedPerm part;
      if (!orbit_image(w, ld.orbits_of_d[d], &part)) return false;
      out->push_back(part);
    }
    return true;
  };
  auto image_key = [&](const std::vector<SignedPerm>& parts) {
    u64 k = 0;
    for (auto& p : parts) k = k * 0x9E3779B97F4A7C15ull + p.key() + 1;
    return k;
  };

  std::unordered_set<u64> image_keys;
  std::vector<u64> kernel_keys;
  std::vector<std::vector<SignedPerm>> images(normalizer.size());
  bool welldef = true;
  for (size_t i = 0; i < normalizer.size(); ++i) {
    if (!image_of(normalizer[i], &images[i])) { welldef = false; break; }
    bool ident = std::all_of(images[i].begin(), images[i].end(),
                             [](const SignedPerm& p) { return p.is_identity(); });
    if (ident) kernel_keys.push_back(normalizer[i].key());
    image_keys.insert(image_key(images[i]));
  }

  if (welldef) {
    qp.kernel_matches = kernel_keys.size() == wphi_keys.size() &&
                        std::all_of(kernel_keys.begin(), kernel_keys.end(),
                                    [&](u64 k) { return wphi_keys.count(k) > 0; });
    qp.image_full = image_keys.size() == qp.expected_order;

    // Homomorphism property; exhaustive when small, seeded sample otherwise.
    qp.hom_checked = true;
    size_t nn = normalizer.size();
    auto check_pair = [&](size_t i, size_t j) {
      SignedPerm prod = normalizer[i] * normalizer[j];
      std::vector<SignedPerm> pi;
      if (!image_of(prod, &pi)) return false;
      for (size_t t = 0; t < pi.size(); ++t)
        if (!(pi[t] == images[i][t] * images[j][t])) return false;
      return true;
    };
    if (nn <= 1200) {
      for (size_t i = 0; i < nn && qp.hom_checked; ++i)
        for (size_t j = 0; j < nn; ++j)
          if (!check_pair(i, j)) { qp.hom_checked = false; break; }
    } else {
      u64 state = 0x243F6A8885A308D3ull;
      for (unsigned t = 0; t < 200000 && qp.hom_checked; ++t) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        size_t i = (size_t)((state >> 33) % nn);
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        size_t j = (size_t)((state >> 33) % nn);
        if (!check_pair(i, j)) qp.hom_checked = false;
      }
    }
  }
  return qp;
}

// ---------------------------------------------------------------------------
// Literal stabilizer formula

StabCertificate subgroup_stabilizer(const LeviDatum& ld, unsigned d) {
  StabCertificate sc;
  sc.d = d;
  if (d < 2 || ld.a_of_d(d) == 0) throw std::invalid_argument("subgroup_stabilizer: need d >= 2 with orbits");
  unsigned l = ld.l;
  const auto& orbits = ld.orbits_of_d[d];
  std::vector<unsigned> jd = ld.j_of_d(d);
  unsigned a = (unsigned)orbits.size();

  // W(Phibar_d): all signed permutations of the J_d coordinates.
  std::vector<SignedPerm> wbar_gens;
  for (size_t i = 0; i + 1 < jd.size(); ++i) {
    SignedPerm t = SignedPerm::identity(l);
    t.img[jd[i] - 1] = (std::int8_t)jd[i + 1];
    t.img[jd[i + 1] - 1] = (std::int8_t)jd[i];
    wbar_gens.push_back(t);
  }
  {
    SignedPerm f = SignedPerm::identity(l);
    f.img[jd[0] - 1] = (std::int8_t)(-(int)jd[0]);
    wbar_gens.push_back(f);
  }
  auto Wbar = perm_closure(l, wbar_gens);

  // Phi_d as a root set (short roots within orbits).
  std::vector<Root> phid;
  for (auto& I : orbits)
    for (size_t i = 0; i < I.size(); ++i)
      for (size_t j = 0; j < I.size(); ++j)
        if (i != j) phid.push_back(Root::ee(l, I[i], 1, I[j], -1));
  std::unordered_set<u64> phid_keys;
  auto root_key = [&](const Root& r) {
    u64 k = 0;
    for (unsigned i = 0; i < l; ++i) k = k * 9 + (unsigned)(r.c[i] + 4);
    return k;
  };
  for (auto& r : phid) phid_keys.insert(root_key(r));

  std::vector<SignedPerm> stab;
  for (auto& w : Wbar) {
    bool ok = true;
    for (auto& r : phid)
      if (!phid_keys.count(root_key(w.apply(r)))) { ok = false; break; }
    if (ok) stab.push_back(w);
  }
  sc.stab_order = stab.size();

  u64 fact = 1;
  for (unsigned i = 2; i <= a; ++i) fact *= i;
  u64 wphid = 1;
  for (unsigned i = 2; i <= d; ++i) wphid *= i;  // |Sym(I)| per orbit
  u64 wphid_all = 1;
  for (unsigned i = 0; i < a; ++i) wphid_all *= wphid;
  sc.expected_order = wphid_all * (1ull << a) * fact;

  // A = W(Phi_d): plain permutations within each orbit.
  std::vector<SignedPerm> agens;
  for (auto& I : orbits)
    for (size_t i = 0; i + 1 < I.size(); ++i) {
      SignedPerm t = SignedPerm::identity(l);
      t.img[I[i] - 1] = (std::int8_t)I[i + 1];
      t.img[I[i + 1] - 1] = (std::int8_t)I[i];
      agens.push_back(t);
    }
  // B = coordinate flips, one per orbit.
  std::vector<SignedPerm> bgens;
  for (auto& I : orbits) {
    SignedPerm f = SignedPerm::identity(l);
    for (unsigned k : I) f.img[k - 1] = (std::int8_t)(-(int)k);
    bgens.push_back(f);
  }
  // C = orbit swaps (coordinatewise, ascending pairing).
  std::vector<SignedPerm> cgens;
  for (unsigned j = 0; j + 1 < a; ++j) {
    SignedPerm s = SignedPerm::identity(l);
    for (unsigned k = 0; k < d; ++k) {
      s.img[orbits[j][k] - 1] = (std::int8_t)orbits[j + 1][k];
      s.img[orbits[j + 1][k] - 1] = (std::int8_t)orbits[j][k];
    }
    cgens.push_back(s);
  }

  auto A = perm_closure(l, agens);
  auto B = perm_closure(l, bgens);
  auto C = perm_closure(l, cgens);
  std::vector<SignedPerm> abgens = agens;
  abgens.insert(abgens.end(), bgens.begin(), bgens.end());
  auto AB = perm_closure(l, abgens);
  std::vector<SignedPerm> allgens = abgens;
  allgens.insert(allgens.end(), cgens.begin(), cgens.end());
  auto full = perm_closure(l, allgens);

  std::unordered_set<u64> stab_keys, full_keys, a_keys, b_keys, ab_keys, c_keys;
  for (auto& w : stab) stab_keys.insert(w.key());
  for (auto& w : full) full_keys.insert(w.key());
  for (auto& w : A) a_keys.insert(w.key());
  for (auto& w : B) b_keys.insert(w.key());
  for (auto& w : AB) ab_keys.insert(w.key());
  for (auto& w : C) c_keys.insert(w.key());

  sc.set_equal = stab_keys == full_keys;

  bool inter_ab = true;
  for (auto& w : A)
    if (!w.is_identity() && b_keys.count(w.key())) inter_ab = false;
  bool commute = true;
  for (auto& x : agens)
    for (auto& y : bgens)
      if (!(x * y == y * x)) commute = false;
  sc.direct_factor_checks = inter_ab && commute && AB.size() == A.size() * B.size();

  bool ab_normal = true;
  for (auto& g : allgens)
    for (auto& h : abgens)
      if (!ab_keys.count((g * h * g.inverse()).key())) ab_normal = false;
  bool inter_c = true;
  for (auto& w : C)
    if (!w.is_identity() && ab_keys.count(w.key())) inter_c = false;
  sc.complement_checks = ab_normal && inter_c && C.size() == fact &&
                         full.size() == AB.size() * C.size() &&
                         full.size() == sc.expected_order;
  return sc;
}

std::vector<int> apply_to_label(const SignedPerm& w, const std::vector<int>& label, unsigned n) {
  // (w . label)_{w(i)} = label_i with sign; equivalently new[j] = +-label[w^{-1}(j)].
  SignedPerm inv = w.inverse();
  std::vector<int> out(label.size());
  for (unsigned j = 0; j < label.size(); ++j) {
    int y = inv.img[j];
    int v = y > 0 ? label[y - 1] : -label[-y - 1];
    int r = v % (int)n;
    if (r < 0) r += n;
    out[j] = r;
  }
  return out;
}

}  // namespace spb
