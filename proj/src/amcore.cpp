#include "spb/amcore.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spb {

// ---------------------------------------------------------------------------
// Label combinatorics
// ---------------------------------------------------------------------------

static std::string label_str(const TorusLabel& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

unsigned label_order(const TorusLabel& a, unsigned qm1) {
  u64 o = 1;
  for (unsigned v : a) o = lcm_u64(o, qm1 / gcd_u64(v, qm1));
  return (unsigned)o;
}

TorusLabel label_ell_part(const TorusLabel& a, unsigned qm1, u64 ell) {
  LPartResult lp = lpart(qm1, ell);
  u64 lv = (u64)lp.ell_part;
  u64 mp = (u64)lp.ell_prime_part;
  TorusLabel out(a.size(), 0);
  if (lv == 1) return out;
  u64 minv = 0;  // inverse of the ell'-part modulo the ell-part
  for (u64 t = 1; t < lv; ++t)
    if (t * (mp % lv) % lv == 1) {
      minv = t;
      break;
    }
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = (unsigned)(mp * (a[i] % lv * minv % lv) % qm1);
  return out;
}

TorusLabel label_ellprime_part(const TorusLabel& a, unsigned qm1, u64 ell) {
  TorusLabel lp = label_ell_part(a, qm1, ell);
  TorusLabel out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = (a[i] + qm1 - lp[i]) % qm1;
  return out;
}

TorusLabel act_label(const SignedPerm& w, const TorusLabel& a, unsigned qm1) {
  std::vector<int> in(a.begin(), a.end());
  std::vector<int> mv = apply_to_label(w, in, qm1);
  return TorusLabel(mv.begin(), mv.end());
}

TorusLabel orbit_min(const TorusLabel& a, const std::vector<SignedPerm>& ws,
                     unsigned qm1) {
  TorusLabel best = a;
  for (const SignedPerm& w : ws) best = std::min(best, act_label(w, a, qm1));
  return best;
}

std::vector<SignedPerm> label_stabilizer(const TorusLabel& a,
                                         const std::vector<SignedPerm>& ws,
                                         unsigned qm1) {
  std::vector<SignedPerm> out;
  for (const SignedPerm& w : ws)
    if (act_label(w, a, qm1) == a) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Torus blocks
// ---------------------------------------------------------------------------

bool BlockLabel::principal() const {
  for (unsigned v : rep)
    if (v) return false;
  return true;
}

std::vector<BlockLabel> torus_blocks(unsigned l, u64 q, u64 ell) {
  if (l == 0 || q < 2) throw std::invalid_argument("torus_blocks: bad l or q");
  if (q % ell == 0) throw std::invalid_argument("torus_blocks: ell divides q");
  const unsigned qm1 = (unsigned)(q - 1);
  std::vector<SignedPerm> W = weyl_group(l);

  std::map<TorusLabel, BlockLabel> by_rep;
  TorusLabel a(l, 0);
  for (;;) {
    TorusLabel rep = label_ellprime_part(a, qm1, ell);
    BlockLabel& b = by_rep[rep];
    if (b.members.empty()) {
      b.l = l;
      b.q = q;
      b.ell = ell;
      b.rep = rep;
    }
    b.members.push_back(a);
    unsigned i = 0;
    while (i < l && ++a[i] == qm1) {
      a[i] = 0;
      ++i;
    }
    if (i == l) break;
  }

  std::vector<BlockLabel> out;
  out.reserve(by_rep.size());
  for (auto& kv : by_rep) {
    BlockLabel& b = kv.second;
    std::sort(b.members.begin(), b.members.end());
    b.wb = label_stabilizer(b.rep, W, qm1);
    // the setwise stabilizer of the member set is the stabilizer of the rep
    std::set<TorusLabel> mem(b.members.begin(), b.members.end());
    for (const SignedPerm& w : W) {
      bool setstab = true;
      for (const TorusLabel& x : b.members)
        if (!mem.count(act_label(w, x, qm1))) {
          setstab = false;
          break;
        }
      if (setstab != (act_label(w, b.rep, qm1) == b.rep))
        throw std::logic_error("torus_blocks: member-set stabilizer mismatch");
    }
    out.push_back(std::move(b));
  }
  return out;
}

const BlockLabel& block_of_label(const std::vector<BlockLabel>& bs,
                                 const TorusLabel& a) {
  for (const BlockLabel& b : bs)
    if (b.rep == label_ellprime_part(a, (unsigned)(b.q - 1), b.ell)) return b;
  throw std::invalid_argument("block_of_label: label outside the partition");
}

RelativeWeyl relative_weyl(const TorusLabel& psi, unsigned l, u64 q, u64 ell) {
  const unsigned qm1 = (unsigned)(q - 1);
  std::vector<SignedPerm> W = weyl_group(l);
  RelativeWeyl rw;
  rw.wpsi = label_stabilizer(psi, W, qm1);
  TorusLabel rep = label_ellprime_part(psi, qm1, ell);
  std::vector<SignedPerm> wb = label_stabilizer(rep, W, qm1);
  rw.wb_order = wb.size();
  if (wb.size() % rw.wpsi.size())
    throw std::logic_error("relative_weyl: stabilizer not inside N_b");
  rw.nb_index = wb.size() / rw.wpsi.size();
  rw.nb_index_ell = (u64)lpart(rw.nb_index, ell).ell_part;
  return rw;
}

// ---------------------------------------------------------------------------
// Hypothesis gate
// ---------------------------------------------------------------------------

CheckList am_hypotheses(unsigned l, u64 q, u64 ell) {
  CheckList cl;
  std::ostringstream cfg;
  cfg << "l=" << l << " q=" << q << " ell=" << ell;
  if (l >= 1)
    cl.add("hyp.rank", "rank is at least 1", true);
  else
    cl.refuse("hyp.rank", "rank is at least 1", cfg.str());
  if (is_prime(ell))
    cl.add("hyp.ell-prime", "ell is prime", true);
  else {
    cl.refuse("hyp.ell-prime", "ell is prime", cfg.str());
    return cl;
  }
  if (ell >= 5)
    cl.add("hyp.ell-min", "ell is at least 5", true);
  else
    cl.refuse("hyp.ell-min", "ell is at least 5", cfg.str());
  if (q % ell)
    cl.add("hyp.ell-not-p", "ell differs from the defining characteristic",
           true);
  else
    cl.refuse("hyp.ell-not-p", "ell differs from the defining characteristic",
              cfg.str());
  if (q % ell == 1)
    cl.add("hyp.ell-split", "ell divides q-1", true);
  else
    cl.refuse("hyp.ell-split", "ell divides q-1", cfg.str());
  return cl;
}

bool am_admissible(unsigned l, u64 q, u64 ell) {
  CheckList cl = am_hypotheses(l, q, ell);
  for (const CheckRecord& c : cl.checks)
    if (c.status != "pass") return false;
  return true;
}

// ---------------------------------------------------------------------------
// AmContext
// ---------------------------------------------------------------------------

static const FqField& field_for(u64 q) {
  if (q < 2 || q > 65536) throw std::invalid_argument("field_for: bad q");
  u64 p = q;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned m = 0;
  u64 t = q;
  while (t % p == 0) {
    t /= p;
    ++m;
  }
  if (t != 1) throw std::invalid_argument("field_for: q is not a prime power");
  return FqField::get((unsigned)p, m);
}

template <class Fn>
static std::vector<std::uint32_t> perm_on_group(const FinGroup& g, Fn&& f) {
  std::vector<std::uint32_t> out(g.order());
  for (u64 i = 0; i < g.order(); ++i) {
    i64 j = g.index_of(f(g.mat((std::uint32_t)i)));
    if (j < 0)
      throw std::invalid_argument("perm_on_group: map leaves the group");
    out[i] = (std::uint32_t)j;
  }
  return out;
}

std::unique_ptr<AmContext> AmContext::build(unsigned l, u64 q, u64 ell,
                                            u64 budget) {
  return std::unique_ptr<AmContext>(new AmContext(l, q, ell, budget));
}

AmContext::AmContext(unsigned l_, u64 q_, u64 ell_, u64 budget)
    : l(l_),
      q(q_),
      ell(ell_),
      qm1((unsigned)(q_ - 1)),
      F(&field_for(q_)),
      ld(levi_decompose(l_, {})),
      W(weyl_group(l_)),
      ctx(l_, *F),
      bun(build_subgroups(ld, *F, budget)),
      cosets(conformal_torus_action(l_, *F)),
      blocks(torus_blocks(l_, q_, ell_)) {
  if (q % 2 == 0)
    throw std::invalid_argument("AmContext: q must be an odd prime power");
  if (ell % 2 == 0 || !is_prime(ell) || q % ell == 0)
    throw std::invalid_argument(
        "AmContext: ell must be an odd prime away from q");
  if (!bun.T.enumerated || !bun.N.enumerated)
    throw BudgetExceeded("torus normalizer enumeration",
                         budget ? budget : kDefaultBudget);

  tt_ = std::make_unique<CharTable>(bun.T.group);
  tn_ = std::make_unique<CharTable>(bun.N.group);
  bt_ = ell_blocks(*tt_, ell);
  bn_ = ell_blocks(*tn_, ell);

  fam_ = linear_characters(bun.T.group);
  if (fam_.size() != bun.T.group.order())
    throw std::logic_error("AmContext: torus character family is incomplete");
  fam_label_.reserve(fam_.size());
  std::set<TorusLabel> distinct;
  for (const LinearChar& f : fam_) {
    fam_label_.push_back(char_label(f));
    if (!distinct.insert(fam_label_.back()).second)
      throw std::logic_error("AmContext: duplicate torus character label");
  }

  // external automorphisms of N: the outer conformal coset, and the field
  // Frobenius beyond the prime field
  std::vector<std::vector<std::uint32_t>> acts;
  for (const ConformalCoset& cc : cosets) {
    if (cc.inner) continue;
    FqMatrix r = cc.rep, ri = cc.rep.inverse();
    acts.push_back(perm_on_group(bun.N.group, [&](const FqMatrix& m) {
      return mat_mul(mat_mul(r, m), ri);
    }));
  }
  if (F->m > 1)
    acts.push_back(perm_on_group(bun.N.group,
                                 [](const FqMatrix& m) { return m.frob(1); }));
  lam_ = equivariant_extension_map(bun.T.group, bun.N.group, fam_, acts);
}

LinearChar AmContext::label_char(const TorusLabel& a) const {
  if (a.size() != l) throw std::invalid_argument("label_char: rank mismatch");
  LinearChar f;
  f.modulus = qm1;
  f.exp.resize(T().order());
  for (u64 j = 0; j < T().order(); ++j) {
    FqMatrix m = T().mat((std::uint32_t)j);
    u64 e = 0;
    for (unsigned d = 0; d < l; ++d)
      e += (u64)a[d] * F->dlog(m.get(d, d)) % qm1;
    f.exp[j] = (unsigned)(e % qm1);
  }
  return f;
}

TorusLabel AmContext::char_label(const LinearChar& f) const {
  if (f.exp.size() != T().order() || qm1 % f.modulus)
    throw std::invalid_argument("char_label: not a torus character");
  const unsigned scale = qm1 / f.modulus;
  TorusLabel out(l);
  for (unsigned d = 1; d <= l; ++d) {
    i64 j = T().index_of(ctx.h_long(d, F->gen));
    if (j < 0) throw std::logic_error("char_label: torus generator missing");
    out[d - 1] = f.exp[(std::uint32_t)j] * scale % qm1;
  }
  return out;
}

unsigned AmContext::family_index(const TorusLabel& a) const {
  for (unsigned i = 0; i < fam_label_.size(); ++i)
    if (fam_label_[i] == a) return i;
  throw std::invalid_argument("family_index: unknown label");
}

unsigned AmContext::tt_index(const TorusLabel& a) const {
  const FinGroup::Classes& cls = T().classes();
  LinearChar f = label_char(a);
  for (unsigned i = 0; i < tt_->size(); ++i) {
    const Character& ch = tt_->at(i);
    if (ch.degree() != 1) continue;
    bool ok = true;
    for (unsigned c = 0; c < cls.count() && ok; ++c)
      ok = ch.values[c].equals(f.value(cls.rep[c]));
    if (ok) return i;
  }
  throw std::logic_error("tt_index: character not in the table");
}

static FqMatrix aut_unapply(const AutAction& s, const FqMatrix& m) {
  FqMatrix r = m;
  if (!s.conj.is_identity())
    r = mat_mul(mat_mul(s.conj.inverse(), r), s.conj);
  unsigned deg = m.F->m;
  unsigned k = s.frob_k % deg;
  if (k) r = r.frob(deg - k);
  return r;
}

TorusLabel AmContext::sigma_label(const TorusLabel& a,
                                  const AutAction& s) const {
  TorusLabel out(l);
  for (unsigned d = 1; d <= l; ++d) {
    FqMatrix pre = aut_unapply(s, ctx.h_long(d, F->gen));
    if (T().index_of(pre) < 0)
      throw std::invalid_argument("sigma_label: action leaves the torus");
    u64 e = 0;
    for (unsigned i = 0; i < l; ++i)
      e += (u64)a[i] * F->dlog(pre.get(i, i)) % qm1;
    out[d - 1] = (unsigned)(e % qm1);
  }
  return out;
}

TorusLabel AmContext::conj_label(const TorusLabel& a, const FqMatrix& n) const {
  AutAction s;
  s.conj = n;
  s.frob_k = 0;
  return sigma_label(a, s);
}

const AmContext::RankOne& AmContext::rank_one(const Root& alpha) {
  auto it = rank_one_.find(alpha);
  if (it != rank_one_.end()) return *it->second;
  if (!alpha.is_long() && l < 2)
    throw std::invalid_argument("rank_one: short root needs rank >= 2");

  u128 lev = alpha.is_long()
                 ? ipow128(qm1, l - 1) * (u128)q * (u128)(q * q - 1)
                 : ipow128(qm1, l - 2) * gl_order(2, q);
  u128 bor = ipow128(qm1, l) * (u128)q;

  auto ro = std::make_unique<RankOne>();
  std::vector<FqMatrix> gens = ctx.torus_gens();
  gens.push_back(ctx.x(alpha, 1));
  std::vector<FqMatrix> bgens = gens;
  gens.push_back(ctx.x(alpha.negated(), 1));
  ro->levi = FinGroup::generate("L[" + alpha.str() + "]", gens, (u64)lev,
                                (u64)lev);
  ro->borel = FinGroup::generate("B[" + alpha.str() + "]", bgens, (u64)bor,
                                 (u64)bor);
  ro->table = std::make_unique<CharTable>(ro->levi);
  const RankOne& ref = *ro;
  rank_one_.emplace(alpha, std::move(ro));
  return ref;
}

// ---------------------------------------------------------------------------
// Height-zero records
// ---------------------------------------------------------------------------

static FqMatrix signed_perm_matrix(const FqField& F3, const SignedPerm& w) {
  FqMatrix m = FqMatrix::zero(F3, w.l);
  for (unsigned i = 1; i <= w.l; ++i) {
    int y = w.img[i - 1];
    unsigned r = (unsigned)(y > 0 ? y : -y) - 1;
    m.set(r, i - 1, y > 0 ? 1 : 2);
  }
  return m;
}

namespace {

// One psi-orbit of a block: the representative, its relative Weyl group, and
// that group realized as signed-permutation matrices over F_3 with its
// character table (the canonical index set for eta).
struct RepData {
  TorusLabel psi;
  std::vector<SignedPerm> wpsi;
  FinGroup wg;
  std::unique_ptr<CharTable> wt;
};

}  // namespace

static std::vector<std::unique_ptr<RepData>> block_reps(const AmContext& cx,
                                                        const BlockLabel& b) {
  const FqField& F3 = FqField::get(3, 1);
  std::vector<std::unique_ptr<RepData>> out;
  std::set<TorusLabel> seen;
  for (const TorusLabel& a : b.members) {
    TorusLabel rep = orbit_min(a, b.wb, cx.qm1);
    if (!seen.insert(rep).second) continue;
    auto rd = std::make_unique<RepData>();
    rd->psi = rep;
    rd->wpsi = label_stabilizer(rep, cx.W, cx.qm1);
    std::vector<FqMatrix> gens;
    gens.reserve(rd->wpsi.size());
    for (const SignedPerm& w : rd->wpsi)
      gens.push_back(signed_perm_matrix(F3, w));
    rd->wg = FinGroup::generate("W[" + label_str(rep) + "]", gens,
                                rd->wpsi.size(), rd->wpsi.size());
    rd->wt = std::make_unique<CharTable>(rd->wg);
    out.push_back(std::move(rd));
  }
  return out;
}

static void base_records(const AmContext& cx, const BlockLabel& b,
                         const std::vector<std::unique_ptr<RepData>>& reps,
                         std::vector<HZRecord>& recs, CheckList& cl) {
  const u128 gq = sp_order(cx.l, cx.q);
  const u64 torder = (u64)ipow128(cx.qm1, cx.l);
  const u64 worder = weyl_order(cx.l);
  u64 covered = 0;
  bool division_ok = true, wb_contains = true;
  for (const auto& rd : reps) {
    u64 ws = rd->wpsi.size();
    u64 orbit = b.wb.size() / ws;
    covered += orbit;
    for (const SignedPerm& w : rd->wpsi)
      wb_contains &= act_label(w, b.rep, cx.qm1) == b.rep;
    u64 npsi = torder * ws;
    if (gq % npsi) {
      division_ok = false;
      continue;
    }
    u128 gindex = gq / npsi;
    u64 index_ell = (u64)lpart(b.wb.size() / ws, cx.ell).ell_part;
    for (unsigned e = 0; e < rd->wt->size(); ++e) {
      HZRecord r;
      r.psi = rd->psi;
      r.orbit = orbit;
      r.eta = e;
      r.eta_degree = rd->wt->at(e).degree();
      u64 eta_ell = (u64)lpart((u64)r.eta_degree, cx.ell).ell_part;
      r.eta_ell_ok = eta_ell == 1;
      r.index_ell_ok = index_ell == 1;
      r.global_ell_part = lpart(gindex, cx.ell).ell_part * eta_ell;
      r.local_degree = worder / ws * (u64)r.eta_degree;
      r.height_zero = r.eta_ell_ok && r.index_ell_ok;
      recs.push_back(std::move(r));
    }
  }
  cl.add("records.orbits-cover",
         "the psi-orbit lengths add up to the block size",
         covered == b.members.size());
  cl.add("records.stab-in-wb",
         "every relative Weyl group fixes the block label", wb_contains);
  cl.add("records.index-exact", "|N_psi| divides the group order",
         division_ok);
}

GlobalCount count_global_hz(const AmContext& cx, const BlockLabel& b) {
  GlobalCount out;
  out.block = b;
  auto reps = block_reps(cx, b);
  base_records(cx, b, reps, out.records, out.checks);
  for (const HZRecord& r : out.records)
    if (r.height_zero) ++out.count;
  // height zero = minimal degree ell-part within the block's label set
  u128 mn = 0;
  for (const HZRecord& r : out.records)
    if (mn == 0 || r.global_ell_part < mn) mn = r.global_ell_part;
  bool argmin = true;
  for (const HZRecord& r : out.records)
    argmin &= r.height_zero == (r.global_ell_part == mn);
  out.checks.add("global.argmin",
                 "the two criteria pick exactly the labels of minimal degree "
                 "ell-part",
                 argmin);
  return out;
}

// Restriction multiplicity of the label character in an N-character, via the
// element-level inner product over T.
static i64 torus_mult(const AmContext& cx, const Character& chi,
                      const std::vector<std::uint32_t>& fusion,
                      const LinearChar& la) {
  CycInt acc;
  for (u64 j = 0; j < cx.T().order(); ++j)
    acc = acc + chi.values[fusion[j]] * la.value((std::uint32_t)j).conj();
  i64 v = 0;
  CycInt scaled = acc.divided_exact((i64)cx.T().order());
  if (!scaled.is_integer(&v))
    throw std::logic_error("torus_mult: non-integer multiplicity");
  return v;
}

LocalCount count_local_hz(AmContext& cx, const BlockLabel& b) {
  LocalCount out;
  out.block = b;
  CheckList& cl = out.checks;
  auto reps = block_reps(cx, b);
  base_records(cx, b, reps, out.records, cl);

  // the torus-side block in the computed partition matches the label block
  unsigned ti = cx.tt_index(b.rep);
  unsigned btb = cx.bt().block_of[ti];
  {
    std::set<unsigned> want;
    for (const TorusLabel& a : b.members) want.insert(cx.tt_index(a));
    std::set<unsigned> got(cx.bt().blocks[btb].begin(),
                           cx.bt().blocks[btb].end());
    cl.add("local.torus-partition",
           "the computed torus block equals the label block", want == got);
  }

  std::optional<unsigned> ind =
      brauer_map(cx.tt(), cx.bt(), btb, cx.tn(), cx.bn());
  cl.add("local.brauer-defined", "the induced block of N is defined",
         ind.has_value(), "no induced central character matched");
  if (!ind) return out;
  out.btilde = *ind;

  // covering blocks of N, via restriction to T: must be exactly btilde
  const FinGroup::Classes& ncl = cx.N().classes();
  std::vector<std::uint32_t> fusion(cx.T().order());
  for (u64 j = 0; j < cx.T().order(); ++j) {
    i64 nj = cx.N().index_of(cx.T().mat((std::uint32_t)j));
    if (nj < 0) throw std::logic_error("count_local_hz: T outside N");
    fusion[j] = ncl.class_of[(std::uint32_t)nj];
  }
  std::vector<LinearChar> member_chars;
  member_chars.reserve(b.members.size());
  for (const TorusLabel& a : b.members) member_chars.push_back(cx.label_char(a));
  std::vector<unsigned> covering;
  for (unsigned bi = 0; bi < cx.bn().count(); ++bi) {
    bool covers = false;
    for (unsigned chi : cx.bn().blocks[bi]) {
      for (const LinearChar& la : member_chars)
        if (torus_mult(cx, cx.tn().at(chi), fusion, la) > 0) {
          covers = true;
          break;
        }
      if (covers) break;
    }
    if (covers) covering.push_back(bi);
  }
  cl.add("local.unique-cover",
         "exactly one block of N covers the torus block, and it is the "
         "Brauer-induced one",
         covering.size() == 1 && covering[0] == out.btilde);

  // realize every record as an induced character and read its height
  std::vector<std::uint32_t> ninv(cx.N().order());
  for (u64 x = 0; x < cx.N().order(); ++x)
    ninv[x] = cx.N().inv((std::uint32_t)x);
  const FqField& F3 = FqField::get(3, 1);
  bool stab_orders_ok = true, irreducible_ok = true, in_block_ok = true;
  bool degree_ok = true, criteria_ok = true;
  std::set<unsigned> identified;
  std::size_t ri = 0;
  for (const auto& rd : reps) {
    unsigned fi = cx.family_index(rd->psi);
    const EquivariantEntry& ent = cx.lambda_map().entries[fi];
    const FinGroup& S = ent.stab;
    stab_orders_ok &=
        S.order() == (u64)ipow128(cx.qm1, cx.l) * rd->wpsi.size();

    // per element of the stabilizer: extension root exponent and W(psi) class
    std::vector<unsigned> wclass(S.order());
    for (u64 s = 0; s < S.order(); ++s) {
      SignedPerm w = cx.ctx.rho(S.mat((std::uint32_t)s));
      i64 wi = rd->wg.index_of(signed_perm_matrix(F3, w));
      if (wi < 0) throw std::logic_error("count_local_hz: rho image escapes W(psi)");
      wclass[s] = rd->wg.classes().class_of[(std::uint32_t)wi];
    }
    std::vector<i64> s_of_n(cx.N().order(), -1);
    for (u64 s = 0; s < S.order(); ++s) {
      i64 nj = cx.N().index_of(S.mat((std::uint32_t)s));
      if (nj < 0) throw std::logic_error("count_local_hz: stabilizer outside N");
      s_of_n[(std::uint32_t)nj] = (i64)s;
    }

    for (unsigned e = 0; e < rd->wt->size(); ++e, ++ri) {
      HZRecord& rec = out.records[ri];
      std::vector<CycInt> theta(S.order());
      for (u64 s = 0; s < S.order(); ++s)
        theta[s] = ent.ext.value((std::uint32_t)s) *
                   rd->wt->at(e).values[wclass[s]];
      ClassFn f(ncl.count());
      for (unsigned k = 0; k < ncl.count(); ++k) {
        CycInt acc;
        std::uint32_t g = ncl.rep[k];
        for (u64 x = 0; x < cx.N().order(); ++x) {
          std::uint32_t y = cx.N().mul(
              cx.N().mul(ninv[x], g), (std::uint32_t)x);
          if (s_of_n[y] >= 0) acc = acc + theta[(u64)s_of_n[y]];
        }
        f[k] = acc.divided_exact((i64)S.order());
      }
      int idx = -1;
      for (unsigned c = 0; c < cx.tn().size() && idx < 0; ++c) {
        const Character& ch = cx.tn().at(c);
        bool same = true;
        for (unsigned k = 0; k < ncl.count() && same; ++k)
          same = ch.values[k].equals(f[k]);
        if (same) idx = (int)c;
      }
      irreducible_ok &= idx >= 0;
      if (idx < 0) continue;
      identified.insert((unsigned)idx);
      rec.local_index = idx;
      rec.local_height = (int)cx.bn().height[(unsigned)idx];
      in_block_ok &= cx.bn().block_of[(unsigned)idx] == out.btilde;
      degree_ok &= cx.tn().at((unsigned)idx).degree() == (i64)rec.local_degree;
      criteria_ok &= (rec.local_height == 0) == rec.height_zero;
      if (rec.local_height == 0) ++out.count;
    }
  }
  cl.add("local.stab-orders",
         "character stabilizers in N have order |T| |W(psi)|", stab_orders_ok);
  cl.add("local.induced-irreducible",
         "every induced character is irreducible (found in the table)",
         irreducible_ok);
  cl.add("local.in-btilde", "every induced character lies in the induced block",
         in_block_ok);
  cl.add("local.induced-degree",
         "induced degrees equal [N:N_psi] eta(1)", degree_ok);
  cl.add("local.criteria-match",
         "table height zero coincides with the two-criteria test",
         criteria_ok);
  cl.add("local.irr-btilde-exhausted",
         "the induced characters are distinct and exhaust the induced block",
         identified.size() == out.records.size() &&
             identified ==
                 std::set<unsigned>(cx.bn().blocks[out.btilde].begin(),
                                    cx.bn().blocks[out.btilde].end()));

  out.brute = cx.bn().height_zero_of(out.btilde).size();
  cl.add("local.count-brute",
         "the table count of height-zero characters matches",
         out.count == out.brute);

  u64 wb_ell = (u64)lpart((u64)b.wb.size(), cx.ell).ell_part;
  cl.add("local.defect-identity",
         "the induced defect order is the torus defect order times the "
         "ell-part of [N_b:T]",
         cx.bn().defect_order[out.btilde] ==
             cx.bt().defect_order[btb] * wb_ell);
  return out;
}

OmegaTable omega_table(AmContext& cx, const BlockLabel& b) {
  LocalCount lc = count_local_hz(cx, b);
  OmegaTable ot;
  ot.block = b;
  ot.btilde = lc.btilde;
  ot.checks.add("omega.pipeline", "the local-route certificates all pass",
                lc.checks.pass(),
                lc.checks.first_fail() ? lc.checks.first_fail()->id : "");
  std::set<unsigned> indices;
  for (const HZRecord& r : lc.records) {
    if (r.local_height != 0) continue;
    OmegaRow row;
    row.psi = r.psi;
    row.eta = r.eta;
    row.eta_degree = r.eta_degree;
    row.orbit = r.orbit;
    row.local_index = (unsigned)r.local_index;
    row.local_degree = (i64)r.local_degree;
    indices.insert(row.local_index);
    ot.rows.push_back(std::move(row));
  }
  std::vector<unsigned> hz = cx.bn().height_zero_of(lc.btilde);
  ot.checks.add("omega.bijection",
                "the pairing is a bijection onto the height-zero characters "
                "of the induced block",
                indices.size() == ot.rows.size() &&
                    indices == std::set<unsigned>(hz.begin(), hz.end()));

  // label-action equivariance, set-level: twisting every global label by the
  // action and re-canonicalizing permutes the rows
  auto twisted_matches = [&](const AutAction& s, const char* id,
                             const char* what) {
    bool block_ok = true;
    std::multiset<std::pair<TorusLabel, unsigned>> orig, twist;
    TorusLabel brep = cx.sigma_label(b.rep, s);
    block_ok &= label_ellprime_part(brep, cx.qm1, cx.ell) == b.rep;
    for (const OmegaRow& r : ot.rows) {
      orig.insert({r.psi, r.eta});
      TorusLabel t = cx.sigma_label(r.psi, s);
      block_ok &=
          label_ellprime_part(t, cx.qm1, cx.ell) == b.rep;
      twist.insert({orbit_min(t, b.wb, cx.qm1), r.eta});
    }
    ot.checks.add(std::string(id) + ".block",
                  std::string(what) + " preserves the block", block_ok);
    ot.checks.add(std::string(id) + ".rows",
                  std::string(what) + " permutes the table rows",
                  orig == twist);
  };
  for (const ConformalCoset& cc : cx.cosets) {
    if (cc.inner) continue;
    AutAction s;
    s.conj = cc.rep;
    s.frob_k = 0;
    twisted_matches(s, "omega.conformal", "the outer diagonal action");
  }
  {
    AutAction s;
    s.conj = FqMatrix::ident(*cx.F, 2 * cx.l);
    s.frob_k = 1;
    twisted_matches(s, "omega.frobenius", "the field Frobenius");
  }
  return ot;
}

// ---------------------------------------------------------------------------
// R(lambda)
// ---------------------------------------------------------------------------

static bool contains_perm(const std::vector<SignedPerm>& ws,
                          const SignedPerm& w) {
  for (const SignedPerm& x : ws)
    if (x == w) return true;
  return false;
}

// Linear character of the rank-one Borel T U_alpha inflated from the label:
// each element factors as t x_alpha(s), and the character reads t.
static LinearChar inflate_to_borel(const AmContext& cx,
                                   const AmContext::RankOne& ro,
                                   const Root& alpha, const TorusLabel& la) {
  LinearChar f;
  f.modulus = cx.qm1;
  f.exp.resize(ro.borel.order());
  std::vector<FqMatrix> xs;
  xs.reserve(cx.q);
  for (unsigned t = 0; t < cx.q; ++t) xs.push_back(cx.ctx.x(alpha, t));
  for (u64 j = 0; j < ro.borel.order(); ++j) {
    FqMatrix bm = ro.borel.mat((std::uint32_t)j);
    bool found = false;
    for (unsigned t = 0; t < cx.q && !found; ++t) {
      FqMatrix cand = mat_mul(bm, xs[t]);
      if (cx.T().index_of(cand) < 0) continue;
      u64 e = 0;
      for (unsigned i = 0; i < cx.l; ++i)
        e += (u64)la[i] * cx.F->dlog(cand.get(i, i)) % cx.qm1;
      f.exp[j] = (unsigned)(e % cx.qm1);
      found = true;
    }
    if (!found)
      throw std::logic_error("inflate_to_borel: element not in T U_alpha");
  }
  return f;
}

ReflectionDatum compute_R_lambda(AmContext& cx, const TorusLabel& lambda) {
  ReflectionDatum rd;
  rd.label = lambda;
  rd.wlambda = label_stabilizer(lambda, cx.W, cx.qm1);
  CheckList& cl = rd.checks;

  std::vector<SignedPerm> gens;
  for (const Root& alpha : cx.ctx.roots().roots) {
    // one root per opposite pair: keep the one whose top coordinate is +
    int top = 0;
    for (unsigned i = cx.l; i-- > 0;)
      if (alpha.c[i]) {
        top = alpha.c[i];
        break;
      }
    if (top < 0) continue;
    SignedPerm s = reflection(alpha);
    if (!contains_perm(rd.wlambda, s)) continue;

    const AmContext::RankOne& ro = cx.rank_one(alpha);
    LinearChar infl = inflate_to_borel(cx, ro, alpha, lambda);
    ClassFn f = induce_linear(*ro.table, ro.borel, infl);
    std::vector<i64> mult = ro.table->decompose(f);
    RankOneEvidence ev;
    ev.alpha = alpha;
    i64 degsum = 0;
    for (unsigned i = 0; i < mult.size(); ++i)
      for (i64 m = 0; m < mult[i]; ++m) {
        ev.degrees.push_back(ro.table->at(i).degree());
        degsum += ev.degrees.back();
      }
    std::sort(ev.degrees.begin(), ev.degrees.end());
    cl.add("rlambda.two-constituents[" + alpha.str() + "]" + label_str(lambda),
           "the rank-one induction of a reflection-fixed label has exactly "
           "two constituents",
           ev.degrees.size() == 2);
    cl.add("rlambda.degree-sum[" + alpha.str() + "]" + label_str(lambda),
           "the constituent degrees add up to q+1", degsum == (i64)cx.q + 1);
    ev.in_phi = ev.degrees.size() == 2 && ev.degrees[0] != ev.degrees[1];
    if (ev.in_phi) gens.push_back(s);
    rd.evidence.push_back(std::move(ev));
  }

  rd.r_lambda = gens.empty() ? std::vector<SignedPerm>{SignedPerm::identity(cx.l)}
                             : perm_closure(cx.l, gens);
  bool sub = true;
  for (const SignedPerm& w : rd.r_lambda) sub &= contains_perm(rd.wlambda, w);
  cl.add("rlambda.subgroup" + label_str(lambda),
         "R(lambda) lies inside W(lambda)", sub);
  return rd;
}

// ---------------------------------------------------------------------------
// delta
// ---------------------------------------------------------------------------

DeltaResult compute_delta(AmContext& cx, const TorusLabel& lambda,
                          const AutAction& sigma,
                          const ReflectionDatum& r_sigma_lambda) {
  DeltaResult dr;
  dr.lambda = lambda;
  dr.sigma_lambda = cx.sigma_label(lambda, sigma);
  CheckList& cl = dr.checks;
  cl.add("delta.datum", "the reflection datum belongs to ^sigma lambda",
         r_sigma_lambda.label == dr.sigma_lambda);

  const EquivariantEntry& e1 =
      cx.lambda_map().entries[cx.family_index(lambda)];
  const EquivariantEntry& e2 =
      cx.lambda_map().entries[cx.family_index(dr.sigma_lambda)];
  const FinGroup& S1 = e1.stab;
  const FinGroup& S2 = e2.stab;

  unsigned M = (unsigned)lcm_u64(e1.ext.modulus, e2.ext.modulus);
  dr.delta.modulus = M;
  dr.delta.exp.assign(S2.order(), 0);
  bool conj_stab = S1.order() == S2.order();
  std::vector<char> hit(S2.order(), 0);
  for (u64 y = 0; conj_stab && y < S1.order(); ++y) {
    i64 xi = S2.index_of(sigma.apply(S1.mat((std::uint32_t)y)));
    if (xi < 0) {
      conj_stab = false;
      break;
    }
    hit[(u64)xi] = 1;
    u64 a = (u64)e1.ext.exp[y] * (M / e1.ext.modulus) % M;
    u64 bb = (u64)e2.ext.exp[(u64)xi] * (M / e2.ext.modulus) % M;
    dr.delta.exp[(u64)xi] = (unsigned)((a + M - bb) % M);
  }
  for (char h : hit) conj_stab &= h != 0;
  cl.add("delta.conjugate-stabilizers",
         "sigma carries the stabilizer of lambda onto that of ^sigma lambda",
         conj_stab);
  if (!conj_stab) return dr;

  // homomorphism on generator-element pairs, which extends by induction
  bool hom = true;
  i64 idx_id = S2.index_of(FqMatrix::ident(*cx.F, 2 * cx.l));
  hom &= idx_id >= 0 && dr.delta.exp[(u64)idx_id] == 0;
  for (std::uint32_t g : S2.generator_ids())
    for (u64 x = 0; hom && x < S2.order(); ++x)
      hom &= dr.delta.exp[S2.mul(g, (std::uint32_t)x)] ==
             (dr.delta.exp[g] + dr.delta.exp[x]) % M;
  dr.linear_ok = hom;
  cl.add("delta.linear", "delta is a homomorphism", hom);

  bool triv_t = true;
  for (u64 j = 0; j < cx.T().order(); ++j) {
    i64 si = S2.index_of(cx.T().mat((std::uint32_t)j));
    triv_t &= si >= 0 && dr.delta.exp[(u64)si] == 0;
  }
  dr.trivial_on_t = triv_t;
  cl.add("delta.trivial-on-torus", "delta restricts trivially to the torus",
         triv_t);

  // kernel contains R(^sigma lambda): every monomial element mapping onto it
  // has delta value zero, and every reflection-subgroup element is realized
  std::set<u64> seen_keys, want_keys;
  for (const SignedPerm& w : r_sigma_lambda.r_lambda) want_keys.insert(w.key());
  bool kernel = true;
  for (u64 s = 0; s < S2.order(); ++s) {
    FqMatrix m = S2.mat((std::uint32_t)s);
    if (!cx.ctx.is_monomial(m)) continue;
    u64 k = cx.ctx.rho(m).key();
    if (!want_keys.count(k)) continue;
    seen_keys.insert(k);
    kernel &= dr.delta.exp[s] == 0;
  }
  kernel &= seen_keys == want_keys;
  dr.kernel_ok = kernel;
  cl.add("delta.kernel", "R(^sigma lambda) lies in the kernel of delta",
         kernel);
  return dr;
}

}  // namespace spb
