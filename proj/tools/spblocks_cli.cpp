// spblocks: batch front end over the toolkit. Every verb emits one
// versioned JSON verification report (schema 1) and exits 0 on pass,
// 1 on verification failure, 2 on invalid or refused input, 3 when an
// enumeration budget is exceeded.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spb/amcore.hpp"
#include "spb/chartab.hpp"
#include "spb/chevalley.hpp"
#include "spb/report.hpp"

using namespace spb;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct Cfg {
  std::string verb;
  unsigned rank = 2;
  u64 q = 11;
  u64 ell = 5;
  std::string delta = "none";
  std::string block;
  std::string group = "N";
  std::string label;
  std::string sigma = "outer";
  u64 budget = 0;
  u64 seed = 0;
  std::string out;
};

const FqField& field_for_q(u64 q) {
  u64 p = q;
  for (u64 d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned m = 0;
  u64 t = q;
  while (t > 1 && t % p == 0) {
    t /= p;
    ++m;
  }
  if (q < 3 || t != 1)
    throw std::invalid_argument("q must be a prime power >= 3, got " +
                                std::to_string(q));
  if (p == 2)
    throw std::invalid_argument("q must be odd, got " + std::to_string(q));
  return FqField::get((unsigned)p, m);
}

std::vector<unsigned> split_uints(const std::string& s, const char* what) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      unsigned long v = std::stoul(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back((unsigned)v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " entry '" +
                                  tok + "'");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

std::vector<unsigned> parse_delta(const Cfg& c) {
  if (c.delta.empty() || c.delta == "none") return {};
  std::vector<unsigned> out = split_uints(c.delta, "--delta");
  for (unsigned v : out)
    if (v < 1 || v > c.rank)
      throw std::invalid_argument("--delta index " + std::to_string(v) +
                                  " outside 1.." + std::to_string(c.rank));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TorusLabel parse_label(const std::string& s, const Cfg& c, const char* what) {
  std::vector<unsigned> v = split_uints(s, what);
  if (v.size() != c.rank)
    throw std::invalid_argument(std::string(what) + " needs " +
                                std::to_string(c.rank) + " entries");
  TorusLabel a(v.begin(), v.end());
  for (unsigned& x : a) x %= (unsigned)(c.q - 1);
  return a;
}

std::string label_str(const TorusLabel& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

json json_label(const TorusLabel& a) {
  json j = json::array();
  for (unsigned x : a) j.push_back(x);
  return j;
}

json json_field(const FqField& F) {
  return json{{"p", F.p}, {"m", F.m}, {"q", F.q}};
}

json json_mat(const FqMatrix& m) {
  json e = json::array();
  for (unsigned i = 0; i < m.n; ++i)
    for (unsigned j = 0; j < m.n; ++j) e.push_back(m.get(i, j));
  return json{{"n", m.n}, {"entries", e}};
}

json json_checks(const CheckList& cl) {
  json out = json::array();
  for (const CheckRecord& c : cl.checks) {
    json r;
    r["id"] = c.id;
    r["statement"] = c.statement;
    r["status"] = c.status;
    r["witness"] = c.witness;
    r["ms"] = nullptr;  // determinism contract: reports are byte-identical
    out.push_back(std::move(r));
  }
  return out;
}

void merge_tagged(CheckList& dst, const CheckList& src, const std::string& tag) {
  for (CheckRecord c : src.checks) {
    c.id = tag + c.id;
    dst.checks.push_back(std::move(c));
  }
}

std::string overall_of(const CheckList& cl) {
  if (!cl.pass()) return "fail";
  for (const CheckRecord& c : cl.checks)
    if (c.status == "refused") return "refused";
  return "pass";
}

struct Reporter {
  Cfg cfg;
  CheckList checks;
  json payload = json::object();
  int forced = -1;  // overrides the status-derived exit code

  int finish() const {
    std::string overall = overall_of(checks);
    json rep;
    rep["schema"] = 1;
    rep["tool"] = json{{"name", "spblocks"}, {"version", kToolVersion}};
    rep["config"] = json{{"verb", cfg.verb},     {"rank", cfg.rank},
                         {"q", cfg.q},           {"ell", cfg.ell},
                         {"delta", cfg.delta},   {"block", cfg.block},
                         {"group", cfg.group},   {"label", cfg.label},
                         {"sigma", cfg.sigma},   {"budget", cfg.budget},
                         {"seed", cfg.seed}};
    rep["checks"] = json_checks(checks);
    rep["payload"] = payload;
    rep["overall"] = overall;

    std::string text = rep.dump(2);
    text += "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot open --out " + cfg.out);
      f << text;
    }

    unsigned fails = checks.fail_count();
    std::cerr << "spblocks " << cfg.verb << ": " << overall << " ("
              << checks.checks.size() << " checks, " << fails << " failed)\n";
    if (forced >= 0) return forced;
    if (overall == "fail") return 1;
    if (overall == "refused") return 2;
    return 0;
  }
};

// ---------------------------------------------------------------- roots

int run_roots(Cfg& cfg) {
  Reporter R{cfg};
  RootSystem rs = build_root_system(cfg.rank);
  std::set<Root> all(rs.roots.begin(), rs.roots.end());
  unsigned longs = 0;
  bool neg_closed = true;
  json roots = json::array();
  for (const Root& r : rs.roots) {
    longs += r.is_long();
    neg_closed &= all.count(r.negated()) == 1;
    json coeffs = json::array();
    for (unsigned i = 0; i < cfg.rank; ++i) coeffs.push_back((int)r.c[i]);
    roots.push_back(
        json{{"str", r.str()}, {"coeffs", coeffs}, {"long", r.is_long()}});
  }
  json simple = json::array();
  unsigned simple_long = 0;
  for (const Root& r : rs.simple) {
    simple_long += r.is_long();
    simple.push_back(json{{"str", r.str()}, {"long", r.is_long()}});
  }

  R.checks.add("roots.count", "a type-C rank-l system has 2 l^2 roots",
               rs.roots.size() == 2u * cfg.rank * cfg.rank);
  R.checks.add("roots.distinct", "the listed roots are pairwise distinct",
               all.size() == rs.roots.size());
  R.checks.add("roots.negation-closed", "the root set is stable under negation",
               neg_closed);
  R.checks.add("roots.long-count", "exactly 2 l roots are long",
               longs == 2u * cfg.rank);
  R.checks.add("roots.simple",
               "the simple system has l roots with one long root",
               rs.simple.size() == cfg.rank && simple_long == 1);

  R.payload["rank"] = cfg.rank;
  R.payload["count"] = rs.roots.size();
  R.payload["simple"] = simple;
  R.payload["roots"] = roots;
  return R.finish();
}

// ----------------------------------------------------------------- weyl

int run_weyl(Cfg& cfg) {
  Reporter R{cfg};
  std::vector<SignedPerm> ws = weyl_group(cfg.rank);
  std::set<SignedPerm> set(ws.begin(), ws.end());
  bool inverses = true;
  for (const SignedPerm& w : ws) inverses &= set.count(w.inverse()) == 1;

  RootSystem rs = build_root_system(cfg.rank);
  std::set<SignedPerm> refl;
  for (const Root& r : rs.roots) refl.insert(reflection(r));

  R.checks.add("weyl.order", "|W(C_l)| = 2^l l!",
               ws.size() == weyl_order(cfg.rank));
  R.checks.add("weyl.distinct", "the enumeration has no repeats",
               set.size() == ws.size());
  R.checks.add("weyl.identity-first", "the identity is listed first",
               !ws.empty() && ws[0].is_identity());
  R.checks.add("weyl.inverses", "the enumeration is closed under inversion",
               inverses);
  R.checks.add("weyl.reflections", "the root system yields l^2 reflections",
               refl.size() == (size_t)cfg.rank * cfg.rank);

  R.payload["rank"] = cfg.rank;
  R.payload["order"] = ws.size();
  R.payload["reflections"] = refl.size();
  if (ws.size() <= 1000) {
    json elems = json::array();
    for (const SignedPerm& w : ws) elems.push_back(w.str());
    R.payload["elements"] = elems;
  }
  return R.finish();
}

// ----------------------------------------------------------------- levi

int run_levi(Cfg& cfg) {
  Reporter R{cfg};
  LeviDatum ld = levi_decompose(cfg.rank, parse_delta(cfg));

  json orbits = json::object();
  for (unsigned d : ld.dset()) {
    json os = json::array();
    for (const std::vector<unsigned>& sup : ld.orbits_of_d[d]) {
      json s = json::array();
      for (unsigned i : sup) s.push_back(i);
      os.push_back(s);
    }
    orbits[std::to_string(d)] = os;
  }
  json jm = json::array();
  for (unsigned i : ld.jminus) jm.push_back(i);

  QuotientPresentation qp = normalizer_quotient(ld);
  R.checks.add("levi.quotient-certified",
               "N_W(W_Phi')/W_Phi' is isomorphic to the product of the "
               "W(C_{a_d}) via an explicit relabeling homomorphism",
               qp.certified());
  R.checks.add("levi.quotient-order",
               "the quotient order equals the product formula",
               qp.quotient_order == qp.expected_order,
               std::to_string(qp.quotient_order) + " vs expected " +
                   std::to_string(qp.expected_order));

  json stabs = json::array();
  for (unsigned d : ld.dset()) {
    if (d < 2) continue;
    StabCertificate sc = subgroup_stabilizer(ld, d);
    R.checks.add("levi.stabilizer[" + std::to_string(d) + "]",
                 "the setwise stabilizer of Phi_d factors as "
                 "(W(Phi_d) x flips) : S_{O_d}",
                 sc.certified() && sc.stab_order == sc.expected_order,
                 "order " + std::to_string(sc.stab_order) + " vs expected " +
                     std::to_string(sc.expected_order));
    stabs.push_back(json{{"d", sc.d},
                         {"stab_order", sc.stab_order},
                         {"expected_order", sc.expected_order},
                         {"certified", sc.certified()}});
  }

  R.payload["datum"] = ld.str();
  R.payload["jminus"] = jm;
  R.payload["orbits"] = orbits;
  R.payload["quotient"] = json{{"w_phi_order", qp.w_phi_order},
                               {"normalizer_order", qp.normalizer_order},
                               {"quotient_order", qp.quotient_order},
                               {"expected_order", qp.expected_order}};
  R.payload["stabilizers"] = stabs;
  return R.finish();
}

// ---------------------------------------------------------------- group

json json_built(const BuiltGroup& b) {
  json j;
  j["key"] = b.key;
  if (b.expected_order)
    j["expected_order"] = u128_str(b.expected_order);
  else
    j["expected_order"] = nullptr;
  j["enumerated"] = b.enumerated;
  j["order"] = b.enumerated ? json(b.group.order()) : json(nullptr);
  return j;
}

int run_group_build(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  LeviDatum ld = levi_decompose(cfg.rank, parse_delta(cfg));
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);

  std::vector<const BuiltGroup*> gs{&bun.T, &bun.L, &bun.H, &bun.V, &bun.N,
                                    &bun.monomial_L};
  for (const BuiltGroup& g : bun.g_factors) gs.push_back(&g);
  for (const auto& kv : bun.h_parts) gs.push_back(&kv.second);
  for (const auto& kv : bun.v_parts) gs.push_back(&kv.second);

  json rows = json::array();
  bool truncated = false;
  for (const BuiltGroup* g : gs) {
    rows.push_back(json_built(*g));
    if (!g->enumerated && !g->gens.empty()) {
      truncated = true;
      R.checks.skip("build.budget[" + g->key + "]",
                    "the subgroup closure stayed within the element budget",
                    "enumeration skipped; order left unverified");
      continue;
    }
    if (g->expected_order)
      R.checks.add("build.order[" + g->key + "]",
                   "the enumerated order matches the closed formula",
                   (u128)g->group.order() == g->expected_order,
                   std::to_string(g->group.order()) + " vs expected " +
                       u128_str(g->expected_order));
  }

  R.payload["field"] = json_field(F);
  R.payload["datum"] = ld.str();
  R.payload["groups"] = rows;
  if (truncated) R.forced = 3;
  return R.finish();
}

int run_group_steinberg(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  SteinbergReport sr = verify_steinberg(cfg.rank, F);
  R.checks.merge(sr.checks);
  R.payload["field"] = json_field(F);
  R.payload["pairs"] = sr.pairs;
  R.payload["relations"] = sr.relations;
  return R.finish();
}

int run_group_structure(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  LeviDatum ld = levi_decompose(cfg.rank, parse_delta(cfg));
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
  R.checks.merge(verify_structure(bun));
  R.payload["field"] = json_field(F);
  R.payload["datum"] = ld.str();
  R.payload["orders"] = json{
      {"T", bun.T.order()}, {"L", bun.L.order()}, {"H", bun.H.order()},
      {"V", bun.V.order()}, {"N", bun.N.order()}};
  return R.finish();
}

// ------------------------------------------------------- character data

const BuiltGroup& pick_group(const SubgroupBundle& bun, const std::string& g) {
  const BuiltGroup* b = nullptr;
  if (g == "T") b = &bun.T;
  else if (g == "L") b = &bun.L;
  else if (g == "H") b = &bun.H;
  else if (g == "V") b = &bun.V;
  else if (g == "N") b = &bun.N;
  else
    throw std::invalid_argument("--group must be one of T, L, H, V, N");
  if (!b->enumerated)
    throw BudgetExceeded(b->key, bun.budget ? bun.budget : kDefaultBudget);
  return *b;
}

void gate_ell(const Cfg& cfg, const FqField& F, CheckList& cl) {
  bool prime = is_prime(cfg.ell);
  bool odd = cfg.ell % 2 == 1;
  bool notp = cfg.ell != F.p;
  if (prime && odd && notp) {
    cl.add("gate.ell", "ell is an odd prime different from p", true);
  } else {
    cl.refuse("gate.ell", "ell is an odd prime different from p",
              "ell = " + std::to_string(cfg.ell) + " rejected");
  }
}

int run_chartable(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  LeviDatum ld = levi_decompose(cfg.rank, parse_delta(cfg));
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
  const BuiltGroup& g = pick_group(bun, cfg.group);
  CharTable t(g.group);
  R.checks.merge(t.verify());

  const FinGroup::Classes& cls = t.classes();
  json classes = json::array();
  for (unsigned k = 0; k < cls.count(); ++k)
    classes.push_back(json{{"rep", json_mat(g.group.mat(cls.rep[k]))},
                           {"size", cls.size[k]},
                           {"order", cls.rep_order[k]}});
  json chars = json::array();
  for (const Character& chi : t.irreducibles()) {
    json vals = json::array();
    for (const CycInt& v : chi.values) {
      json coeffs = json::array();
      for (i64 c : v.reduced(t.exponent())) coeffs.push_back(c);
      vals.push_back(coeffs);
    }
    chars.push_back(json{{"degree", chi.degree()}, {"values", vals}});
  }

  R.payload["field"] = json_field(F);
  R.payload["group"] = json{{"name", g.key},
                            {"order", g.group.order()},
                            {"dim", g.group.dim()}};
  R.payload["conductor"] = t.exponent();
  R.payload["modular_prime"] = t.dixon_prime();
  R.payload["classes"] = classes;
  R.payload["characters"] = chars;
  return R.finish();
}

int run_blocks(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  gate_ell(cfg, F, R.checks);
  if (overall_of(R.checks) == "refused") return R.finish();

  LeviDatum ld = levi_decompose(cfg.rank, parse_delta(cfg));
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
  const BuiltGroup& g = pick_group(bun, cfg.group);
  CharTable t(g.group);
  BlockPartition bp = ell_blocks(t, cfg.ell);
  R.checks.merge(bp.checks);
  BlockPartition bp2 = ell_blocks(t, cfg.ell, 1);
  R.checks.add("blocks.root-choice-invariant",
               "the partition is independent of the prime-ideal choice",
               bp.block_of == bp2.block_of);

  json rows = json::array();
  for (unsigned b = 0; b < bp.count(); ++b) {
    json members = json::array(), heights = json::array();
    for (unsigned chi : bp.blocks[b]) {
      members.push_back(chi);
      heights.push_back(bp.height[chi]);
    }
    rows.push_back(json{{"index", b},
                        {"defect", bp.defect[b]},
                        {"defect_order", bp.defect_order[b]},
                        {"members", members},
                        {"heights", heights}});
  }

  R.payload["field"] = json_field(F);
  R.payload["group"] = json{{"name", g.key}, {"order", g.group.order()}};
  R.payload["ell"] = cfg.ell;
  R.payload["block_count"] = bp.count();
  R.payload["principal"] = bp.principal;
  R.payload["blocks"] = rows;
  return R.finish();
}

int run_brauer(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  gate_ell(cfg, F, R.checks);
  if (overall_of(R.checks) == "refused") return R.finish();
  if (!parse_delta(cfg).empty())
    throw std::invalid_argument(
        "brauer maps torus blocks into the full monomial normalizer; use "
        "--delta none");

  LeviDatum ld = levi_decompose(cfg.rank, {});
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
  pick_group(bun, "N");
  CharTable tt(bun.T.group), tn(bun.N.group);
  BlockPartition bt = ell_blocks(tt, cfg.ell), bn = ell_blocks(tn, cfg.ell);

  json rows = json::array();
  bool all_defined = true, invariant = true;
  std::vector<int> image(bt.count(), -1);
  for (unsigned b = 0; b < bt.count(); ++b) {
    std::optional<unsigned> up = brauer_map(tt, bt, b, tn, bn);
    std::optional<unsigned> up2 = brauer_map(tt, bt, b, tn, bn, 1);
    all_defined &= up.has_value();
    invariant &= up == up2;
    if (up) image[b] = (int)*up;
    rows.push_back(json{{"t_block", b},
                        {"defined", up.has_value()},
                        {"n_block", up ? json(*up) : json(nullptr)}});
  }
  R.checks.add("brauer.defined",
               "every torus block induces a defined block of N", all_defined);
  R.checks.add("brauer.principal",
               "the principal block of T induces the principal block of N",
               image[bt.principal] == (int)bn.principal);
  R.checks.add("brauer.root-choice-invariant",
               "the induced blocks are independent of the prime-ideal choice",
               invariant);

  R.payload["field"] = json_field(F);
  R.payload["ell"] = cfg.ell;
  R.payload["t_blocks"] = bt.count();
  R.payload["n_blocks"] = bn.count();
  R.payload["principal_t"] = bt.principal;
  R.payload["principal_n"] = bn.principal;
  R.payload["map"] = rows;
  return R.finish();
}

std::vector<std::uint32_t> perm_on(const FinGroup& g,
                                   const std::function<FqMatrix(const FqMatrix&)>& f) {
  std::vector<std::uint32_t> p(g.order());
  for (u64 i = 0; i < g.order(); ++i) {
    std::int64_t j = g.index_of(f(g.mat((std::uint32_t)i)));
    if (j < 0)
      throw std::invalid_argument("automorphism does not preserve the group");
    p[i] = (std::uint32_t)j;
  }
  return p;
}

std::vector<std::vector<std::uint32_t>> external_acts_on(const FinGroup& n,
                                                         unsigned l,
                                                         const FqField& F) {
  std::vector<std::vector<std::uint32_t>> acts;
  for (const ConformalCoset& cc : conformal_torus_action(l, F)) {
    if (cc.inner) continue;
    FqMatrix r = cc.rep, ri = cc.rep.inverse();
    acts.push_back(perm_on(
        n, [&](const FqMatrix& m) { return mat_mul(mat_mul(r, m), ri); }));
  }
  if (F.m > 1)
    acts.push_back(perm_on(n, [](const FqMatrix& m) { return m.frob(1); }));
  return acts;
}

int run_extensions(Cfg& cfg) {
  Reporter R{cfg};
  const FqField& F = field_for_q(cfg.q);
  std::vector<unsigned> delta = parse_delta(cfg);
  LeviDatum ld = levi_decompose(cfg.rank, delta);
  SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
  R.payload["field"] = json_field(F);
  R.payload["datum"] = ld.str();

  if (delta.empty()) {
    // equivariant extension map for the torus inside its normalizer, under
    // conjugation plus the outer conformal and field actions
    pick_group(bun, "N");
    std::vector<LinearChar> fam = linear_characters(bun.T.group);
    R.checks.add("ext.family-complete",
                 "the torus has |T| linear characters",
                 fam.size() == bun.T.group.order());
    EquivariantMap em = equivariant_extension_map(
        bun.T.group, bun.N.group, fam,
        external_acts_on(bun.N.group, cfg.rank, F));
    R.checks.merge(em.checks);
    std::map<u64, unsigned> stab_hist;
    for (const EquivariantEntry& e : em.entries) ++stab_hist[e.stab.order()];
    json hist = json::object();
    for (const auto& kv : stab_hist)
      hist[std::to_string(kv.first)] = kv.second;
    R.payload["kind"] = "torus-in-normalizer";
    R.payload["family"] = fam.size();
    R.payload["stabilizer_orders"] = hist;
    return R.finish();
  }

  // per-character extension search for the central 2-part H inside HV; the
  // h_{J_-1}(-1) coordinate of H lies outside V whenever J_-1 is nonempty,
  // so HV (= V exactly when J_-1 is empty) carries the extension statement
  pick_group(bun, "H");
  pick_group(bun, "V");
  std::vector<FqMatrix> hv_gens = bun.H.gens;
  hv_gens.insert(hv_gens.end(), bun.V.gens.begin(), bun.V.gens.end());
  FinGroup hv = FinGroup::generate(
      "HV", hv_gens, cfg.budget ? cfg.budget : kDefaultBudget);
  std::vector<LinearChar> fam = linear_characters(bun.H.group);
  bool nonempty = true, gallagher = true;
  json rows = json::array();
  for (size_t i = 0; i < fam.size(); ++i) {
    ExtensionRecord er = extension_search(bun.H.group, hv, fam[i]);
    nonempty &= !er.extensions.empty();
    gallagher &= er.extensions.empty() ||
                 er.extensions.size() == er.gallagher_count;
    rows.push_back(json{{"index", i},
                        {"stabilizer_order", er.stab.order()},
                        {"extensions", er.extensions.size()},
                        {"gallagher", er.gallagher_count}});
  }
  R.checks.add("ext.nonempty",
               "every linear character of H extends to its stabilizer in HV",
               nonempty);
  R.checks.add("ext.gallagher",
               "extension counts match the Gallagher count",
               gallagher);
  R.payload["kind"] = "center-in-complement";
  R.payload["family"] = fam.size();
  R.payload["hv_order"] = hv.order();
  R.payload["rows"] = rows;
  return R.finish();
}

// --------------------------------------------------------- height zero

bool gate_hypotheses(Cfg& cfg, Reporter& R) {
  R.checks.merge(am_hypotheses(cfg.rank, cfg.q, cfg.ell));
  return am_admissible(cfg.rank, cfg.q, cfg.ell);
}

std::vector<BlockLabel> chosen_blocks(const AmContext& cx, const Cfg& cfg) {
  if (cfg.block.empty()) return cx.blocks;
  TorusLabel a = parse_label(cfg.block, cfg, "--block");
  return {block_of_label(cx.blocks, a)};
}

json json_block(const BlockLabel& b) {
  return json{{"rep", json_label(b.rep)},
              {"members", b.members.size()},
              {"weyl_order", b.wb.size()},
              {"principal", b.principal()}};
}

json json_record(const HZRecord& r) {
  json j;
  j["psi"] = json_label(r.psi);
  j["orbit"] = r.orbit;
  j["eta"] = r.eta;
  j["eta_degree"] = r.eta_degree;
  j["eta_ell_ok"] = r.eta_ell_ok;
  j["index_ell_ok"] = r.index_ell_ok;
  j["global_ell_part"] = u128_str(r.global_ell_part);
  j["local_degree"] = r.local_degree;
  j["height_zero"] = r.height_zero;
  j["local_index"] = r.local_index;
  j["local_height"] = r.local_height;
  return j;
}

int run_amcount(Cfg& cfg) {
  Reporter R{cfg};
  if (!gate_hypotheses(cfg, R)) return R.finish();
  std::unique_ptr<AmContext> cx =
      AmContext::build(cfg.rank, cfg.q, cfg.ell, cfg.budget);

  json rows = json::array();
  for (const BlockLabel& b : chosen_blocks(*cx, cfg)) {
    std::string tag = "b" + label_str(b.rep) + "/";
    GlobalCount gc = count_global_hz(*cx, b);
    LocalCount lc = count_local_hz(*cx, b);
    merge_tagged(R.checks, gc.checks, tag);
    merge_tagged(R.checks, lc.checks, tag);
    R.checks.add(tag + "triangle",
                 "global, local, and brute-force height-zero counts agree",
                 gc.count == lc.count && lc.count == lc.brute,
                 std::to_string(gc.count) + "/" + std::to_string(lc.count) +
                     "/" + std::to_string(lc.brute));
    json recs = json::array();
    for (const HZRecord& r : lc.records) recs.push_back(json_record(r));
    rows.push_back(json{{"block", json_block(b)},
                        {"global", gc.count},
                        {"local", lc.count},
                        {"brute", lc.brute},
                        {"btilde", lc.btilde},
                        {"records", recs}});
  }
  R.payload["blocks"] = rows;
  return R.finish();
}

int run_omega(Cfg& cfg) {
  Reporter R{cfg};
  if (!gate_hypotheses(cfg, R)) return R.finish();
  std::unique_ptr<AmContext> cx =
      AmContext::build(cfg.rank, cfg.q, cfg.ell, cfg.budget);

  json rows = json::array();
  for (const BlockLabel& b : chosen_blocks(*cx, cfg)) {
    OmegaTable ot = omega_table(*cx, b);
    merge_tagged(R.checks, ot.checks, "b" + label_str(b.rep) + "/");
    json brows = json::array();
    for (const OmegaRow& r : ot.rows)
      brows.push_back(json{{"psi", json_label(r.psi)},
                           {"eta", r.eta},
                           {"eta_degree", r.eta_degree},
                           {"orbit", r.orbit},
                           {"local_index", r.local_index},
                           {"local_degree", r.local_degree}});
    rows.push_back(json{{"block", json_block(b)},
                        {"btilde", ot.btilde},
                        {"rows", brows}});
  }
  R.payload["blocks"] = rows;
  return R.finish();
}

json json_reflection(const ReflectionDatum& rd) {
  json ev = json::array();
  for (const RankOneEvidence& e : rd.evidence) {
    json degs = json::array();
    for (i64 d : e.degrees) degs.push_back(d);
    ev.push_back(
        json{{"alpha", e.alpha.str()}, {"degrees", degs}, {"in_phi", e.in_phi}});
  }
  json relems = json::array();
  for (const SignedPerm& w : rd.r_lambda) relems.push_back(w.str());
  return json{{"label", json_label(rd.label)},
              {"wlambda_order", rd.wlambda.size()},
              {"r_order", rd.r_lambda.size()},
              {"evidence", ev},
              {"r_elements", relems}};
}

int run_rlambda(Cfg& cfg) {
  Reporter R{cfg};
  if (!gate_hypotheses(cfg, R)) return R.finish();
  std::unique_ptr<AmContext> cx =
      AmContext::build(cfg.rank, cfg.q, cfg.ell, cfg.budget);

  std::vector<TorusLabel> labels;
  if (cfg.label.empty())
    labels = cx->family_labels();
  else
    labels.push_back(parse_label(cfg.label, cfg, "--label"));

  json rows = json::array();
  for (const TorusLabel& a : labels) {
    ReflectionDatum rd = compute_R_lambda(*cx, a);
    R.checks.merge(rd.checks);
    rows.push_back(json_reflection(rd));
  }
  R.payload["data"] = rows;
  return R.finish();
}

AutAction sigma_of(const Cfg& cfg, const AmContext& cx) {
  AutAction s;
  s.conj = FqMatrix::ident(*cx.F, 2 * cx.l);
  s.frob_k = 0;
  if (cfg.sigma == "outer") {
    for (const ConformalCoset& cc : cx.cosets)
      if (!cc.inner) s.conj = cc.rep;
  } else if (cfg.sigma == "frobenius") {
    s.frob_k = 1;
  } else if (cfg.sigma != "identity") {
    throw std::invalid_argument(
        "--sigma must be one of outer, frobenius, identity");
  }
  return s;
}

int run_deltacheck(Cfg& cfg) {
  Reporter R{cfg};
  if (!gate_hypotheses(cfg, R)) return R.finish();
  std::unique_ptr<AmContext> cx =
      AmContext::build(cfg.rank, cfg.q, cfg.ell, cfg.budget);
  AutAction sig = sigma_of(cfg, *cx);

  std::vector<TorusLabel> labels;
  if (cfg.label.empty())
    labels = cx->family_labels();
  else
    labels.push_back(parse_label(cfg.label, cfg, "--label"));

  unsigned moved = 0, nontrivial = 0;
  json rows = json::array();
  for (const TorusLabel& a : labels) {
    TorusLabel sl = cx->sigma_label(a, sig);
    moved += sl != a;
    ReflectionDatum rd = compute_R_lambda(*cx, sl);
    DeltaResult dr = compute_delta(*cx, a, sig, rd);
    merge_tagged(R.checks, dr.checks, "l" + label_str(a) + "/");
    nontrivial += !dr.delta.trivial();
    rows.push_back(json{{"lambda", json_label(a)},
                        {"sigma_lambda", json_label(sl)},
                        {"nontrivial", !dr.delta.trivial()},
                        {"linear", dr.linear_ok},
                        {"trivial_on_torus", dr.trivial_on_t},
                        {"kernel_contains_r", dr.kernel_ok}});
  }
  R.payload["checked"] = labels.size();
  R.payload["moved"] = moved;
  R.payload["nontrivial"] = nontrivial;
  R.payload["data"] = rows;
  return R.finish();
}

// ------------------------------------------------------------ checklist

int run_checklist(Cfg& cfg) {
  Reporter R{cfg};
  if (!gate_hypotheses(cfg, R)) return R.finish();
  const FqField& F = field_for_q(cfg.q);
  std::vector<unsigned> delta = parse_delta(cfg);

  SteinbergReport sr = verify_steinberg(cfg.rank, F);
  R.checks.add("checklist.steinberg",
               "the Chevalley generators satisfy the defining relations",
               sr.checks.pass(),
               sr.checks.first_fail() ? sr.checks.first_fail()->id : "");
  R.payload["steinberg"] =
      json{{"pairs", sr.pairs}, {"relations", sr.relations}};

  if (!delta.empty()) {
    LeviDatum ld = levi_decompose(cfg.rank, delta);
    SubgroupBundle bun = build_subgroups(ld, F, cfg.budget);
    R.checks.merge(verify_structure(bun));
    QuotientPresentation qp = normalizer_quotient(ld);
    R.checks.add("checklist.quotient",
                 "the relative Weyl quotient matches the product formula",
                 qp.certified() && qp.quotient_order == qp.expected_order);
    for (unsigned d : ld.dset()) {
      if (d < 2) continue;
      StabCertificate sc = subgroup_stabilizer(ld, d);
      R.checks.add("checklist.stabilizer[" + std::to_string(d) + "]",
                   "the orbit stabilizer factors as the displayed product",
                   sc.certified() && sc.stab_order == sc.expected_order);
    }
    CentralizerReport cr = centralizer_of_torus_ellpart(ld, F, cfg.ell);
    R.checks.merge(cr.checks);
    R.checks.add("checklist.centralizer",
                 "the centralizer of the ell-part of Z(L) is L itself",
                 cr.equals_levi);

    if (bun.H.enumerated && bun.V.enumerated) {
      std::vector<FqMatrix> hv_gens = bun.H.gens;
      hv_gens.insert(hv_gens.end(), bun.V.gens.begin(), bun.V.gens.end());
      FinGroup hv = FinGroup::generate(
          "HV", hv_gens, cfg.budget ? cfg.budget : kDefaultBudget);
      bool nonempty = true;
      std::vector<LinearChar> fam = linear_characters(bun.H.group);
      for (const LinearChar& f : fam)
        nonempty &= !extension_search(bun.H.group, hv, f).extensions.empty();
      R.checks.add("checklist.extension",
                   "every linear character of H extends to its stabilizer in HV",
                   nonempty);
    } else {
      R.checks.skip("checklist.extension",
                    "every linear character of H extends to its stabilizer in HV",
                    "H or V exceeded the enumeration budget");
      R.forced = 3;
    }
    R.checks.skip("checklist.triangle",
                  "the height-zero counting triangle",
                  "applies to the maximal torus case only (empty --delta)");
    R.checks.skip("checklist.delta",
                  "the extension defects vanish on the reflection subgroups",
                  "applies to the maximal torus case only (empty --delta)");
    R.payload["datum"] = ld.str();
    return R.finish();
  }

  // maximal torus case: the full block-by-block pipeline
  std::unique_ptr<AmContext> cxp =
      AmContext::build(cfg.rank, cfg.q, cfg.ell, cfg.budget);
  AmContext& cx = *cxp;

  R.checks.merge(verify_structure(cx.bun));
  QuotientPresentation qp = normalizer_quotient(cx.ld);
  R.checks.add("checklist.quotient",
               "the torus normalizer quotient is the full Weyl group",
               qp.certified() && qp.quotient_order == weyl_order(cfg.rank));
  CentralizerReport cr = centralizer_of_torus_ellpart(cx.ld, F, cfg.ell);
  R.checks.merge(cr.checks);
  R.checks.add("checklist.centralizer",
               "the centralizer of the ell-part of Z(T) is T itself",
               cr.equals_levi);
  R.checks.add("checklist.extension-map",
               "the equivariant extension map exists for Irr(T) in N",
               cx.lambda_map().ok());

  json counts = json::array();
  for (const BlockLabel& b : cx.blocks) {
    GlobalCount gc = count_global_hz(cx, b);
    LocalCount lc = count_local_hz(cx, b);
    OmegaTable ot = omega_table(cx, b);
    std::string rep = label_str(b.rep);
    R.checks.add("checklist.triangle" + rep,
                 "global, local, and brute-force height-zero counts agree",
                 gc.checks.pass() && lc.checks.pass() &&
                     gc.count == lc.count && lc.count == lc.brute,
                 std::to_string(gc.count) + "/" + std::to_string(lc.count) +
                     "/" + std::to_string(lc.brute));
    R.checks.add("checklist.omega" + rep,
                 "the height-zero pairing is a bijection and equivariant",
                 ot.checks.pass(),
                 ot.checks.first_fail() ? ot.checks.first_fail()->id : "");
    counts.push_back(json{{"block", json_block(b)},
                          {"global", gc.count},
                          {"local", lc.count},
                          {"brute", lc.brute},
                          {"height_zero_rows", ot.rows.size()}});
  }
  R.payload["counts"] = counts;

  std::vector<std::pair<std::string, AutAction>> sigmas;
  {
    AutAction outer;
    outer.conj = FqMatrix::ident(F, 2 * cfg.rank);
    outer.frob_k = 0;
    for (const ConformalCoset& cc : cx.cosets)
      if (!cc.inner) outer.conj = cc.rep;
    sigmas.emplace_back("outer", outer);
    if (F.m > 1) {
      AutAction fr;
      fr.conj = FqMatrix::ident(F, 2 * cfg.rank);
      fr.frob_k = 1;
      sigmas.emplace_back("frobenius", fr);
    }
  }
  bool all_r = true;
  json dsum = json::array();
  for (const auto& [name, sig] : sigmas) {
    bool all_d = true, kernel = true;
    unsigned nontrivial = 0, moved = 0;
    for (const TorusLabel& a : cx.family_labels()) {
      TorusLabel sl = cx.sigma_label(a, sig);
      moved += sl != a;
      ReflectionDatum rd = compute_R_lambda(cx, sl);
      all_r &= rd.checks.pass();
      DeltaResult dr = compute_delta(cx, a, sig, rd);
      all_d &= dr.checks.pass();
      kernel &= dr.kernel_ok;
      nontrivial += !dr.delta.trivial();
    }
    R.checks.add("checklist.delta[" + name + "]",
                 "every extension defect is linear, trivial on the torus, "
                 "and trivial on the reflection subgroup",
                 all_d && kernel);
    dsum.push_back(json{{"sigma", name},
                        {"checked", cx.family_labels().size()},
                        {"moved", moved},
                        {"nontrivial", nontrivial}});
  }
  R.checks.add("checklist.rlambda",
               "the rank-one constituent criteria certify every R(lambda)",
               all_r);
  R.payload["delta"] = dsum;
  return R.finish();
}

}  // namespace

int main(int argc, char** argv) {
  Cfg cfg;
  if (const char* env = std::getenv("SPBLOCKS_BUDGET")) {
    try {
      cfg.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "spblocks: bad SPBLOCKS_BUDGET '" << env << "'\n";
      return 2;
    }
  }

  CLI::App app{"exact block-theoretic verification toolkit"};
  app.require_subcommand(1);

  std::function<int(Cfg&)> todo;
  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--rank", cfg.rank, "Lie rank l (1..8)");
    sub->add_option("--q", cfg.q, "odd prime power q");
    sub->add_option("--ell", cfg.ell, "block prime ell");
    sub->add_option("--delta", cfg.delta,
                    "simple-root indices, comma separated, or 'none'");
    sub->add_option("--block", cfg.block,
                    "ell'-block label, comma separated entries");
    sub->add_option("--group", cfg.group, "subgroup selector: T, L, H, V, N");
    sub->add_option("--label", cfg.label,
                    "torus character label, comma separated entries");
    sub->add_option("--sigma", cfg.sigma,
                    "automorphism: outer, frobenius, identity");
    sub->add_option("--budget", cfg.budget, "element ceiling for enumeration");
    sub->add_option("--seed", cfg.seed, "seed echoed into the report");
    sub->add_option("--out", cfg.out, "write the JSON report to this path");
  };
  auto verb = [&](CLI::App* parent, const std::string& name,
                  const std::string& help, int (*fn)(Cfg&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub);
    sub->callback([&todo, &cfg, sub, fn] {
      cfg.verb = sub->get_name();
      todo = fn;
    });
    return sub;
  };

  verb(&app, "roots", "enumerate and verify the type-C root system",
       run_roots);
  verb(&app, "levi", "Levi decomposition with normalizer certificates",
       run_levi);
  verb(&app, "weyl", "enumerate and verify the Weyl group", run_weyl);

  CLI::App* grp =
      app.add_subcommand("group", "matrix group construction and verification");
  grp->require_subcommand(1);
  verb(grp, "build", "enumerate the subgroup chain and check orders",
       run_group_build);
  CLI::App* vs = verb(grp, "verify-steinberg",
                      "verify the Chevalley relations exhaustively over F_q",
                      run_group_steinberg);
  CLI::App* vt = verb(grp, "verify-structure",
                      "verify the structural decomposition of the chain",
                      run_group_structure);
  vs->callback([&todo, &cfg] {
    cfg.verb = "group verify-steinberg";
    todo = run_group_steinberg;
  });
  vt->callback([&todo, &cfg] {
    cfg.verb = "group verify-structure";
    todo = run_group_structure;
  });
  grp->get_subcommand("build")->callback([&todo, &cfg] {
    cfg.verb = "group build";
    todo = run_group_build;
  });

  verb(&app, "chartable", "exact character table of a chain subgroup",
       run_chartable);
  verb(&app, "blocks", "ell-block partition of a chain subgroup", run_blocks);
  verb(&app, "brauer", "Brauer induction of torus blocks to the normalizer",
       run_brauer);
  verb(&app, "extensions", "character extension maps and searches",
       run_extensions);
  verb(&app, "am-count", "three-way height-zero count per torus block",
       run_amcount);
  verb(&app, "omega", "height-zero bijection tables per torus block",
       run_omega);
  verb(&app, "r-lambda", "reflection subgroups from rank-one constituents",
       run_rlambda);
  verb(&app, "delta-check", "extension defects under outer actions",
       run_deltacheck);
  verb(&app, "checklist", "the full per-block verification checklist",
       run_checklist);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!todo) {
    std::cerr << "spblocks: no command given\n";
    return 2;
  }

  try {
    return todo(cfg);
  } catch (const BudgetExceeded& e) {
    Reporter R{cfg};
    R.checks.skip("resource.budget", "the computation fit the element budget",
                  e.what());
    R.forced = 3;
    return R.finish();
  } catch (const std::invalid_argument& e) {
    std::cerr << "spblocks: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Reporter R{cfg};
    R.checks.add("internal.error", "the pipeline ran to completion", false,
                 e.what());
    return R.finish();
  }
}
