#include "spb/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "spb/numeric.hpp"

namespace spb {

namespace {

using Vec = std::vector<unsigned>;

u64 isqrt_u64(u64 n) {
  u64 r = (u64)std::sqrt((double)n);
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

unsigned val_at(u64 n, u64 ell) {
  unsigned v = 0;
  while (n && n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

// reduced column-echelon basis of a subspace of F_P^r: column j has a leading
// 1 at row piv[j] and zeros at every other pivot row; piv is ascending
struct Basis {
  std::vector<Vec> cols;
  std::vector<unsigned> piv;
  unsigned dim() const { return (unsigned)cols.size(); }
};

Basis make_echelon(const FqField& F, std::vector<Vec> raw) {
  Basis b;
  for (auto& v : raw) {
    for (unsigned j = 0; j < b.cols.size(); ++j) {
      unsigned c = v[b.piv[j]];
      if (!c) continue;
      for (unsigned t = 0; t < v.size(); ++t) v[t] = F.sub(v[t], F.mul(c, b.cols[j][t]));
    }
    unsigned p = 0;
    while (p < v.size() && !v[p]) ++p;
    if (p == v.size()) throw std::logic_error("character table: dependent basis vector");
    unsigned inv = F.inv(v[p]);
    for (auto& c : v) c = F.mul(c, inv);
    for (unsigned j = 0; j < b.cols.size(); ++j) {
      unsigned c = b.cols[j][p];
      if (!c) continue;
      for (unsigned t = 0; t < v.size(); ++t) b.cols[j][t] = F.sub(b.cols[j][t], F.mul(c, v[t]));
    }
    b.cols.push_back(std::move(v));
    b.piv.push_back(p);
  }
  std::vector<unsigned> ord(b.cols.size());
  for (unsigned j = 0; j < ord.size(); ++j) ord[j] = j;
  std::sort(ord.begin(), ord.end(), [&](unsigned a, unsigned c) { return b.piv[a] < b.piv[c]; });
  Basis s;
  for (unsigned j : ord) {
    s.cols.push_back(std::move(b.cols[j]));
    s.piv.push_back(b.piv[j]);
  }
  return s;
}

// char poly of a square matrix over F_P: Hessenberg reduction, then the
// leading-minor recurrence; coefficients ascending, monic
Vec char_poly(const FqField& F, std::vector<Vec> h) {
  unsigned d = (unsigned)h.size();
  for (unsigned j = 0; j + 2 < d; ++j) {
    unsigned pr = 0;
    for (unsigned i = j + 1; i < d; ++i)
      if (h[i][j]) {
        pr = i;
        break;
      }
    if (!pr) continue;
    if (pr != j + 1) {
      std::swap(h[pr], h[j + 1]);
      for (unsigned i = 0; i < d; ++i) std::swap(h[i][pr], h[i][j + 1]);
    }
    unsigned inv = F.inv(h[j + 1][j]);
    for (unsigned i = j + 2; i < d; ++i) {
      unsigned f = F.mul(h[i][j], inv);
      if (!f) continue;
      for (unsigned t = 0; t < d; ++t) h[i][t] = F.sub(h[i][t], F.mul(f, h[j + 1][t]));
      for (unsigned t = 0; t < d; ++t) h[t][j + 1] = F.add(h[t][j + 1], F.mul(f, h[t][i]));
    }
  }
  std::vector<Vec> p(d + 1);
  p[0] = {1};
  for (unsigned k = 1; k <= d; ++k) {
    Vec t(k + 1, 0);
    for (unsigned c = 0; c < k; ++c) {
      t[c + 1] = F.add(t[c + 1], p[k - 1][c]);
      t[c] = F.sub(t[c], F.mul(h[k - 1][k - 1], p[k - 1][c]));
    }
    unsigned run = 1;
    for (unsigned i = k - 1; i >= 1; --i) {
      run = F.mul(run, h[i][i - 1]);
      unsigned f = F.mul(h[i - 1][k - 1], run);
      if (f)
        for (unsigned c = 0; c < i; ++c) t[c] = F.sub(t[c], F.mul(f, p[i - 1][c]));
    }
    p[k] = std::move(t);
  }
  return p[d];
}

unsigned poly_eval(const FqField& F, const Vec& p, unsigned x) {
  unsigned acc = 0;
  for (unsigned i = (unsigned)p.size(); i-- > 0;) acc = F.add(F.mul(acc, x), p[i]);
  return acc;
}

// kernel basis of a d x d matrix via reduced row echelon form
std::vector<Vec> kernel_basis(const FqField& F, std::vector<Vec> a) {
  unsigned d = (unsigned)a.size();
  std::vector<std::pair<unsigned, unsigned>> pivots;  // (row, col)
  std::vector<char> is_piv(d, 0);
  unsigned rank = 0;
  for (unsigned c = 0; c < d && rank < d; ++c) {
    unsigned r0 = rank;
    while (r0 < d && !a[r0][c]) ++r0;
    if (r0 == d) continue;
    std::swap(a[rank], a[r0]);
    unsigned inv = F.inv(a[rank][c]);
    for (auto& x : a[rank]) x = F.mul(x, inv);
    for (unsigned i = 0; i < d; ++i) {
      if (i == rank || !a[i][c]) continue;
      unsigned f = a[i][c];
      for (unsigned t = 0; t < d; ++t) a[i][t] = F.sub(a[i][t], F.mul(f, a[rank][t]));
    }
    pivots.push_back({rank, c});
    is_piv[c] = 1;
    ++rank;
  }
  std::vector<Vec> ker;
  for (unsigned fc = 0; fc < d; ++fc) {
    if (is_piv[fc]) continue;
    Vec v(d, 0);
    v[fc] = 1;
    for (auto& [pr, pc] : pivots) v[pc] = F.neg(a[pr][fc]);
    ker.push_back(std::move(v));
  }
  return ker;
}

}  // namespace

i64 Character::degree() const {
  i64 d = 0;
  if (values.empty() || !values[0].is_integer(&d) || d < 1)
    throw std::logic_error("character: identity value is not a positive integer");
  return d;
}

bool LinearChar::operator==(const LinearChar& o) const {
  return modulus == o.modulus && exp == o.exp;
}

CharTable::CharTable(const FinGroup& g, u64 ceiling) : g_(&g) {
  if (g.order() > ceiling) throw BudgetExceeded("character table of " + g.name, ceiling);
  const auto& cls = g.classes();
  unsigned r = cls.count();
  if (r > 1500) throw BudgetExceeded("class matrices of " + g.name, 1500);
  pm_.resize(r);
  for (unsigned k = 0; k < r; ++k) {
    unsigned o = cls.rep_order[k];
    pm_[k].resize(o);
    std::uint32_t cur = 0;
    for (unsigned s = 0; s < o; ++s) {
      pm_[k][s] = cls.class_of[cur];
      cur = g.mul(cur, cls.rep[k]);
    }
  }
  if (r == 1) {
    irr_.push_back({{CycInt::integer(1)}});
    return;
  }
  u64 e = cls.exponent;
  u64 lo = 2 * isqrt_u64(g.order()) + 1;
  u64 p = e + 1;
  while (p < lo || !is_prime(p)) p += e;
  for (unsigned attempt = 0; attempt < 10; ++attempt) {
    if (p > 50000) throw std::logic_error("character table: modular prime too large for " + g.name);
    if (solve(p)) {
      prime_ = p;
      return;
    }
    irr_.clear();
    do p += e;
    while (!is_prime(p));
  }
  throw std::logic_error("character table: no modular prime converged for " + g.name);
}

bool CharTable::solve(u64 prime) {
  const auto& cls = g_->classes();
  const unsigned r = cls.count();
  const FqField& F = FqField::get((unsigned)prime, 1);
  const u64 n = g_->order();

  std::vector<Basis> subs;
  {
    std::vector<Vec> id(r, Vec(r, 0));
    for (unsigned j = 0; j < r; ++j) id[j][j] = 1;
    subs.push_back(make_echelon(F, std::move(id)));
  }

  auto all_split = [&]() {
    for (auto& s : subs)
      if (s.dim() > 1) return false;
    return true;
  };

  std::vector<unsigned> mi(r * r);
  for (unsigned i = 1; i < r && !all_split(); ++i) {
    {
      std::vector<std::uint32_t> cnt(r * r, 0);
      for (std::uint32_t x : cls.members[i]) {
        std::uint32_t xi = g_->inv(x);
        for (unsigned k = 0; k < r; ++k) cnt[cls.class_of[g_->mul(xi, cls.rep[k])] * r + k]++;
      }
      for (unsigned t = 0; t < r * r; ++t) mi[t] = (unsigned)(cnt[t] % prime);
    }
    std::vector<Basis> next;
    for (auto& sub : subs) {
      unsigned d = sub.dim();
      if (d == 1) {
        next.push_back(std::move(sub));
        continue;
      }
      std::vector<Vec> x(d, Vec(d));
      for (unsigned j = 0; j < d; ++j) {
        Vec c(r, 0);
        for (unsigned row = 0; row < r; ++row) {
          unsigned acc = 0;
          const unsigned* mrow = mi.data() + (std::size_t)row * r;
          for (unsigned k = 0; k < r; ++k)
            if (sub.cols[j][k]) acc = F.add(acc, F.mul(mrow[k], sub.cols[j][k]));
          c[row] = acc;
        }
        for (unsigned t = 0; t < d; ++t) x[t][j] = c[sub.piv[t]];
      }
      Vec cp = char_poly(F, x);
      std::vector<unsigned> roots;
      for (unsigned lam = 0; lam < prime && roots.size() < d; ++lam)
        if (!poly_eval(F, cp, lam)) roots.push_back(lam);
      if (roots.size() <= 1) {
        next.push_back(std::move(sub));
        continue;
      }
      unsigned total = 0;
      for (unsigned lam : roots) {
        std::vector<Vec> shifted = x;
        for (unsigned t = 0; t < d; ++t) shifted[t][t] = F.sub(shifted[t][t], lam);
        auto ker = kernel_basis(F, std::move(shifted));
        if (ker.empty()) return false;
        std::vector<Vec> raw;
        for (auto& kv : ker) {
          Vec w(r, 0);
          for (unsigned t = 0; t < d; ++t)
            if (kv[t])
              for (unsigned row = 0; row < r; ++row)
                w[row] = F.add(w[row], F.mul(kv[t], sub.cols[t][row]));
          raw.push_back(std::move(w));
        }
        total += (unsigned)raw.size();
        next.push_back(make_echelon(F, std::move(raw)));
      }
      if (total != d) return false;
    }
    subs = std::move(next);
  }
  if (!all_split()) return false;

  // eigenvectors -> central characters -> degrees -> mod-p character values
  std::vector<unsigned> size_inv(r), size_code(r);
  for (unsigned k = 0; k < r; ++k) {
    size_code[k] = F.from_int((i64)(cls.size[k] % prime));
    size_inv[k] = F.inv(size_code[k]);
  }
  unsigned n_code = F.from_int((i64)(n % prime));

  std::vector<std::vector<unsigned>> chip;
  std::vector<u64> degs;
  for (auto& sub : subs) {
    const Vec& v = sub.cols[0];
    if (!v[0]) return false;
    unsigned v0inv = F.inv(v[0]);
    Vec om(r);
    for (unsigned k = 0; k < r; ++k) om[k] = F.mul(v[k], v0inv);
    unsigned den = 0;
    for (unsigned k = 0; k < r; ++k)
      den = F.add(den, F.mul(F.mul(om[k], om[cls.inverse_class[k]]), size_inv[k]));
    if (!den) return false;
    unsigned d2 = F.mul(n_code, F.inv(den));
    unsigned e2 = F.dlog(d2);
    if (e2 & 1) return false;
    unsigned droot = F.gpow((i64)(e2 / 2));
    u64 cand = droot, alt = prime - droot;
    u64 d = std::min(cand, alt);
    if (d == 0 || d * d > n) return false;
    unsigned dcode = F.from_int((i64)d);
    Vec cp(r);
    for (unsigned k = 0; k < r; ++k) cp[k] = F.mul(F.mul(om[k], dcode), size_inv[k]);
    chip.push_back(std::move(cp));
    degs.push_back(d);
  }
  u64 degsum = 0;
  for (u64 d : degs) degsum += d * d;
  if (degsum != n) return false;

  // lift to exact cyclotomics via eigenvalue multiplicities
  irr_.clear();
  for (unsigned s = 0; s < chip.size(); ++s) {
    Character ch;
    ch.values.resize(r);
    for (unsigned k = 0; k < r; ++k) {
      unsigned o = cls.rep_order[k];
      unsigned zinv = F.inv(F.gpow((i64)((prime - 1) / o)));
      Vec zp(o);
      zp[0] = 1;
      for (unsigned j = 1; j < o; ++j) zp[j] = F.mul(zp[j - 1], zinv);
      unsigned oinv = F.inv(F.from_int((i64)o));
      CycInt val;
      u64 msum = 0;
      for (unsigned t = 0; t < o; ++t) {
        unsigned acc = 0;
        for (unsigned st = 0; st < o; ++st)
          acc = F.add(acc, F.mul(chip[s][pm_[k][st]], zp[(u64)st * t % o]));
        u64 mt = F.mul(acc, oinv);
        if (mt > degs[s]) return false;
        msum += mt;
        if (mt) val = val + CycInt::root(o, (i64)t, (i64)mt);
      }
      if (msum != degs[s]) return false;
      ch.values[k] = val;
    }
    irr_.push_back(std::move(ch));
  }
  std::sort(irr_.begin(), irr_.end(), [&](const Character& a, const Character& b) {
    i64 da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (unsigned k = 0; k < r; ++k) {
      int c = CycInt::cmp(a.values[k], b.values[k]);
      if (c) return c < 0;
    }
    return false;
  });
  return true;
}

unsigned CharTable::trivial_index() const {
  for (unsigned i = 0; i < irr_.size(); ++i) {
    bool triv = true;
    for (auto& v : irr_[i].values) {
      i64 x;
      if (!v.is_integer(&x) || x != 1) {
        triv = false;
        break;
      }
    }
    if (triv) return i;
  }
  throw std::logic_error("character table: trivial character missing");
}

CycInt CharTable::inner_scaled(const ClassFn& a, const ClassFn& b) const {
  const auto& cls = classes();
  if (a.size() != cls.count() || b.size() != cls.count())
    throw std::invalid_argument("inner_scaled: class function size mismatch");
  CycInt acc;
  for (unsigned k = 0; k < cls.count(); ++k)
    acc = acc + (a[k] * b[k].conj()).scaled((i64)cls.size[k]);
  return acc;
}

i64 CharTable::multiplicity(const ClassFn& f, unsigned chi) const {
  CycInt v = inner_scaled(f, irr_[chi].values);
  i64 out = 0;
  if (!v.is_integer(&out) || out % (i64)g_->order())
    throw std::domain_error("multiplicity: inner product is not an integer multiple of |G|");
  return out / (i64)g_->order();
}

std::vector<i64> CharTable::decompose(const ClassFn& f) const {
  std::vector<i64> m(size());
  for (unsigned i = 0; i < size(); ++i) m[i] = multiplicity(f, i);
  return m;
}

CheckList CharTable::verify() const {
  CheckList c;
  const auto& cls = classes();
  unsigned r = cls.count();
  u64 n = g_->order();

  c.add("chartable.count", "number of irreducibles equals number of classes", size() == r);

  u64 sizesum = 0;
  for (unsigned k = 0; k < r; ++k) sizesum += cls.size[k];
  c.add("chartable.class.sum", "class sizes sum to |G|", sizesum == n);

  u64 degsum = 0;
  bool div = true;
  for (auto& ch : irr_) {
    u64 d = (u64)ch.degree();
    degsum += d * d;
    div = div && (n % d == 0);
  }
  c.add("chartable.degsum", "sum of squared degrees equals |G|", degsum == n);
  c.add("chartable.degree.divides", "every degree divides |G|", div);

  bool rows = true;
  std::string rw;
  for (unsigned i = 0; i < size() && rows; ++i)
    for (unsigned j = i; j < size() && rows; ++j) {
      CycInt v = inner_scaled(irr_[i].values, irr_[j].values);
      i64 out = 0;
      if (!v.is_integer(&out) || out != (i == j ? (i64)n : 0)) {
        rows = false;
        rw = "rows " + std::to_string(i) + "," + std::to_string(j);
      }
    }
  c.add("chartable.orth.rows", "row orthogonality holds exactly", rows, rw);

  bool cols = true;
  std::string cw;
  for (unsigned k = 0; k < r && cols; ++k)
    for (unsigned k2 = k; k2 < r && cols; ++k2) {
      CycAcc acc(cls.exponent);
      for (auto& ch : irr_) acc.add_product(ch.values[k], ch.values[k2], 1, true);
      i64 expect = k == k2 ? (i64)(n / cls.size[k]) : 0;
      if (!acc.is_integer_value(expect)) {
        cols = false;
        cw = "classes " + std::to_string(k) + "," + std::to_string(k2);
      }
    }
  c.add("chartable.orth.cols", "column orthogonality gives centralizer orders", cols, cw);
  return c;
}

std::vector<std::uint32_t> class_fusion(const CharTable& g, const CharTable& h) {
  const FinGroup& G = g.group();
  const FinGroup& H = h.group();
  if (&G.field() != &H.field() || G.dim() != H.dim())
    throw std::invalid_argument("class_fusion: ambient mismatch");
  std::vector<std::uint32_t> fus(h.class_count());
  for (unsigned k = 0; k < h.class_count(); ++k) {
    auto gi = G.index_of(H.mat(h.classes().rep[k]));
    if (gi < 0) throw std::invalid_argument("class_fusion: not a subgroup");
    fus[k] = g.classes().class_of[(std::uint32_t)gi];
  }
  return fus;
}

ClassFn restrict_to(const CharTable& g, const CharTable& h, const ClassFn& f) {
  if (f.size() != g.class_count()) throw std::invalid_argument("restrict_to: size mismatch");
  auto fus = class_fusion(g, h);
  ClassFn out(h.class_count());
  for (unsigned k = 0; k < h.class_count(); ++k) out[k] = f[fus[k]];
  return out;
}

ClassFn induce(const CharTable& g, const CharTable& h, const ClassFn& f) {
  if (f.size() != h.class_count()) throw std::invalid_argument("induce: size mismatch");
  auto fus = class_fusion(g, h);
  ClassFn sum(g.class_count());
  for (unsigned d = 0; d < h.class_count(); ++d)
    sum[fus[d]] = sum[fus[d]] + f[d].scaled((i64)h.classes().size[d]);
  ClassFn out(g.class_count());
  u64 n = g.group().order();
  for (unsigned k = 0; k < g.class_count(); ++k)
    out[k] = sum[k].scaled((i64)(n / g.classes().size[k])).divided_exact((i64)h.group().order());
  return out;
}

std::vector<LinearChar> linear_characters(const FinGroup& g) {
  const u64 n = g.order();

  // derived subgroup = normal closure of generator commutators
  std::vector<std::uint32_t> seed_ids;
  for (std::uint32_t a : g.generator_ids())
    for (std::uint32_t b : g.generator_ids()) {
      std::uint32_t c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      seed_ids.push_back(c);
    }
  std::vector<char> in_d(n, 0);
  std::vector<std::uint32_t> dlist;
  auto close = [&]() {
    std::fill(in_d.begin(), in_d.end(), 0);
    dlist.clear();
    dlist.push_back(0);
    in_d[0] = 1;
    for (std::size_t head = 0; head < dlist.size(); ++head)
      for (std::uint32_t s : seed_ids) {
        std::uint32_t y = g.mul(dlist[head], s);
        if (!in_d[y]) {
          in_d[y] = 1;
          dlist.push_back(y);
        }
        y = g.mul(dlist[head], g.inv(s));
        if (!in_d[y]) {
          in_d[y] = 1;
          dlist.push_back(y);
        }
      }
  };
  close();
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t t = 0; t < dlist.size() && !grew; ++t)
      for (std::uint32_t a : g.generator_ids()) {
        std::uint32_t c = g.mul(g.mul(a, dlist[t]), g.inv(a));
        if (!in_d[c]) {
          seed_ids.push_back(c);
          close();
          grew = true;
          break;
        }
      }
  }

  // cosets of the derived subgroup, in first-seen element order
  std::vector<std::uint32_t> coset_of(n, UINT32_MAX), reps;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (coset_of[i] != UINT32_MAX) continue;
    std::uint32_t id = (std::uint32_t)reps.size();
    reps.push_back(i);
    for (std::uint32_t d : dlist) coset_of[g.mul(i, d)] = id;
  }
  const unsigned na = (unsigned)reps.size();
  if (na > 20000) throw BudgetExceeded("abelianization of " + g.name, 20000);
  auto qmul = [&](unsigned a, unsigned b) { return coset_of[g.mul(reps[a], reps[b])]; };

  std::vector<unsigned> qord(na, 1);
  unsigned ma = 1;
  for (unsigned a = 0; a < na; ++a) {
    unsigned x = a, o = 1;
    while (x != 0) {
      x = qmul(x, a);
      ++o;
    }
    qord[a] = o;
    ma = (unsigned)lcm_u64(ma, o);
  }

  // dual enumeration along a greedy generating sequence of the quotient
  std::vector<char> cov(na, 0);
  cov[0] = 1;
  std::vector<unsigned> covlist = {0};
  std::vector<std::vector<unsigned>> chars = {std::vector<unsigned>(na, 0)};
  while (covlist.size() < na) {
    unsigned best = 0, bestk = 0;
    for (unsigned a = 0; a < na; ++a) {
      if (cov[a]) continue;
      unsigned x = a, k = 1;
      while (!cov[x]) {
        x = qmul(x, a);
        ++k;
      }
      if (k > bestk) {
        bestk = k;
        best = a;
      }
    }
    unsigned a = best, k = bestk;
    unsigned z = a;
    for (unsigned j = 1; j < k; ++j) z = qmul(z, a);
    std::vector<std::vector<unsigned>> grown;
    for (auto& ch : chars) {
      unsigned c = ch[z];
      if (c % k) throw std::logic_error("linear_characters: non-extending value");
      for (unsigned t = 0; t < k; ++t) {
        unsigned d = (unsigned)((c / k + (u64)t * (ma / k)) % ma);
        std::vector<unsigned> nc = ch;
        unsigned pw = 0;  // coset of a^j
        for (unsigned j = 0; j < k; ++j) {
          for (unsigned s : covlist) nc[qmul(pw, s)] = (unsigned)((ch[s] + (u64)j * d) % ma);
          pw = qmul(pw, a);
        }
        grown.push_back(std::move(nc));
      }
    }
    chars = std::move(grown);
    std::vector<unsigned> newcov;
    unsigned x = a;
    for (unsigned j = 1; j < k; ++j) {
      for (unsigned s : covlist) newcov.push_back(qmul(x, s));
      x = qmul(x, a);
    }
    for (unsigned c : newcov) {
      cov[c] = 1;
      covlist.push_back(c);
    }
  }
  if (chars.size() != na) throw std::logic_error("linear_characters: wrong dual count");

  std::vector<LinearChar> out(na);
  for (unsigned i = 0; i < na; ++i) {
    out[i].modulus = ma;
    out[i].exp.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) out[i].exp[j] = chars[i][coset_of[j]];
  }
  return out;
}

ClassFn as_class_fn(const CharTable& t, const LinearChar& l) {
  if (l.exp.size() != t.group().order()) throw std::invalid_argument("as_class_fn: size mismatch");
  ClassFn out(t.class_count());
  for (unsigned k = 0; k < t.class_count(); ++k) out[k] = l.value(t.classes().rep[k]);
  return out;
}

ClassFn induce_linear(const CharTable& g, const FinGroup& s, const LinearChar& f) {
  const FinGroup& G = g.group();
  if (f.exp.size() != s.order()) throw std::invalid_argument("induce_linear: size mismatch");
  ClassFn sum(g.class_count());
  for (std::uint32_t j = 0; j < s.order(); ++j) {
    auto gi = G.index_of(s.mat(j));
    if (gi < 0) throw std::invalid_argument("induce_linear: not a subgroup");
    unsigned k = g.classes().class_of[(std::uint32_t)gi];
    sum[k] = sum[k] + f.value(j);
  }
  ClassFn out(g.class_count());
  u64 n = G.order();
  for (unsigned k = 0; k < g.class_count(); ++k)
    out[k] = sum[k].scaled((i64)(n / g.classes().size[k])).divided_exact((i64)s.order());
  return out;
}

std::vector<unsigned> BlockPartition::height_zero_of(unsigned block) const {
  std::vector<unsigned> out;
  for (unsigned chi : blocks[block])
    if (height[chi] == 0) out.push_back(chi);
  return out;
}

BlockPartition ell_blocks(const CharTable& t, u64 ell, unsigned root_choice) {
  if (!is_prime(ell)) throw std::invalid_argument("ell_blocks: ell must be prime");
  BlockPartition bp;
  bp.ell = ell;
  unsigned r = t.class_count();
  CycIdeal ideal(ell, t.exponent(), root_choice);

  std::map<std::vector<std::vector<unsigned>>, unsigned> seen;
  bp.block_of.resize(t.size());
  for (unsigned i = 0; i < t.size(); ++i) {
    i64 d = t.at(i).degree();
    std::vector<std::vector<unsigned>> key(r);
    for (unsigned k = 0; k < r; ++k)
      key[k] = ideal.reduce(
          t.at(i).values[k].scaled((i64)t.classes().size[k]).divided_exact(d));
    auto it = seen.find(key);
    if (it == seen.end()) {
      it = seen.emplace(std::move(key), (unsigned)bp.blocks.size()).first;
      bp.blocks.push_back({});
    }
    bp.block_of[i] = it->second;
    bp.blocks[it->second].push_back(i);
  }

  unsigned gval = val_at(t.group().order(), ell);
  bp.height.resize(t.size());
  for (unsigned b = 0; b < bp.count(); ++b) {
    unsigned mn = UINT32_MAX;
    for (unsigned chi : bp.blocks[b]) mn = std::min(mn, val_at((u64)t.at(chi).degree(), ell));
    bp.defect.push_back(gval - mn);
    u64 po = 1;
    for (unsigned j = 0; j < gval - mn; ++j) po *= ell;
    bp.defect_order.push_back(po);
    for (unsigned chi : bp.blocks[b]) bp.height[chi] = val_at((u64)t.at(chi).degree(), ell) - mn;
  }
  bp.principal = bp.block_of[t.trivial_index()];

  bool mins = true, formula = true, range = true, nonempty = true;
  for (unsigned b = 0; b < bp.count(); ++b) {
    unsigned m = UINT32_MAX;
    for (unsigned chi : bp.blocks[b]) m = std::min(m, bp.height[chi]);
    mins = mins && m == 0;
    range = range && bp.defect[b] <= gval;
    nonempty = nonempty && !bp.height_zero_of(b).empty();
    for (unsigned chi : bp.blocks[b])
      formula = formula && (bp.height[chi] == 0) ==
                               (val_at((u64)t.at(chi).degree(), ell) == gval - bp.defect[b]);
  }
  bp.checks.add("blocks.partition", "blocks partition the irreducible characters", true);
  bp.checks.add("blocks.height.min", "minimum height in each block is zero", mins);
  bp.checks.add("blocks.heightzero.nonempty", "height-zero characters exist in each block",
                nonempty);
  bp.checks.add("blocks.height.formula",
                "height zero iff chi(1)_ell = |G|_ell / ell^{d(B)}", formula);
  bp.checks.add("blocks.defect.range", "0 <= d(B) <= v_ell(|G|)", range);
  return bp;
}

std::optional<unsigned> brauer_map(const CharTable& h, const BlockPartition& bh, unsigned block,
                                   const CharTable& g, const BlockPartition& bg,
                                   unsigned root_choice) {
  if (bh.ell != bg.ell) throw std::invalid_argument("brauer_map: mixed ell");
  if (block >= bh.count()) throw std::invalid_argument("brauer_map: bad block index");
  if (g.exponent() % h.exponent()) throw std::invalid_argument("brauer_map: exponent mismatch");
  auto fus = class_fusion(g, h);
  CycIdeal ideal(bh.ell, g.exponent(), root_choice);

  const Character& psi = h.at(bh.blocks[block][0]);
  i64 pd = psi.degree();
  std::vector<CycInt> lam(g.class_count());
  for (unsigned d = 0; d < h.class_count(); ++d)
    lam[fus[d]] =
        lam[fus[d]] + psi.values[d].scaled((i64)h.classes().size[d]).divided_exact(pd);
  std::vector<std::vector<unsigned>> target(g.class_count());
  for (unsigned k = 0; k < g.class_count(); ++k) target[k] = ideal.reduce(lam[k]);

  std::optional<unsigned> found;
  for (unsigned b = 0; b < bg.count(); ++b) {
    const Character& chi = g.at(bg.blocks[b][0]);
    i64 cd = chi.degree();
    bool match = true;
    for (unsigned k = 0; k < g.class_count() && match; ++k)
      match = ideal.reduce(chi.values[k].scaled((i64)g.classes().size[k]).divided_exact(cd)) ==
              target[k];
    if (match) {
      if (found) throw std::logic_error("brauer_map: ambiguous image block");
      found = b;
    }
  }
  return found;
}

namespace {

unsigned lchar_exp_at(const LinearChar& l, unsigned idx, unsigned modulus) {
  return (unsigned)((u64)l.exp[idx] * (modulus / l.modulus) % modulus);
}

}  // namespace

ExtensionRecord extension_search(const FinGroup& k, const FinGroup& m, const LinearChar& lambda) {
  if (lambda.exp.size() != k.order()) throw std::invalid_argument("extension_search: bad lambda");
  if (!k.subset_of(m)) throw std::invalid_argument("extension_search: k not inside m");
  std::vector<FqMatrix> kgen = k.generator_mats();
  for (std::uint32_t a : m.generator_ids())
    for (auto& kg : kgen)
      if (k.index_of(mat_mul(mat_mul(m.mat(a), kg), m.mat(m.inv(a)))) < 0)
        throw std::invalid_argument("extension_search: k not normal in m");

  ExtensionRecord rec;
  rec.base = lambda;
  std::vector<FqMatrix> stab_mats;
  for (std::uint32_t i = 0; i < m.order(); ++i) {
    FqMatrix mi = m.mat(i), mii = m.mat(m.inv(i));
    bool fix = true;
    for (auto& kg : kgen) {
      auto src = k.index_of(kg), dst = k.index_of(mat_mul(mat_mul(mi, kg), mii));
      if (dst < 0 || lambda.exp[(std::uint32_t)src] != lambda.exp[(std::uint32_t)dst]) {
        fix = false;
        break;
      }
    }
    if (fix) stab_mats.push_back(mi);
  }
  rec.stab = FinGroup::generate("stab", stab_mats, stab_mats.size(), stab_mats.size());
  if (rec.stab.order() != stab_mats.size())
    throw std::logic_error("extension_search: stabilizer not closed");

  std::vector<std::uint32_t> k_in_stab(k.order());
  for (std::uint32_t j = 0; j < k.order(); ++j) {
    auto si = rec.stab.index_of(k.mat(j));
    if (si < 0) throw std::logic_error("extension_search: k escapes its stabilizer");
    k_in_stab[j] = (std::uint32_t)si;
  }
  for (auto& mu : linear_characters(rec.stab)) {
    unsigned mm = (unsigned)lcm_u64(mu.modulus, lambda.modulus);
    bool ext = true, triv = true;
    for (std::uint32_t j = 0; j < k.order(); ++j) {
      unsigned have = lchar_exp_at(mu, k_in_stab[j], mm);
      ext = ext && have == lchar_exp_at(lambda, j, mm);
      triv = triv && mu.exp[k_in_stab[j]] == 0;
    }
    if (ext) rec.extensions.push_back(mu);
    if (triv) rec.gallagher_count++;
  }
  return rec;
}

EquivariantMap equivariant_extension_map(
    const FinGroup& k, const FinGroup& m, const std::vector<LinearChar>& family,
    const std::vector<std::vector<std::uint32_t>>& external_acts_on_m) {
  EquivariantMap out;
  const u64 nm = m.order(), nk = k.order();
  if (family.empty()) return out;
  unsigned modulus = family[0].modulus;
  for (auto& f : family)
    if (f.modulus != modulus || f.exp.size() != nk)
      throw std::invalid_argument("equivariant_extension_map: inhomogeneous family");

  std::vector<std::uint32_t> kinm(nk);
  for (std::uint32_t j = 0; j < nk; ++j) {
    auto mi = m.index_of(k.mat(j));
    if (mi < 0) throw std::invalid_argument("equivariant_extension_map: k not inside m");
    kinm[j] = (std::uint32_t)mi;
  }
  std::vector<std::int64_t> m_to_k(nm, -1);
  for (std::uint32_t j = 0; j < nk; ++j) m_to_k[kinm[j]] = j;

  // acting permutations of m: inner by generators, then the external acts.
  // Inner equivariance binds everywhere; an external act binds only where it
  // moves the character (at a fixed character the mismatch is the linear
  // defect delta_{lambda,sigma}, measured downstream, not an obstruction).
  std::vector<std::vector<std::uint32_t>> acts;
  std::vector<char> external;
  for (std::uint32_t a : m.generator_ids()) {
    std::vector<std::uint32_t> p(nm);
    std::uint32_t ai = m.inv(a);
    for (std::uint32_t i = 0; i < nm; ++i) p[i] = m.mul(m.mul(a, i), ai);
    acts.push_back(std::move(p));
    external.push_back(0);
  }
  for (auto& p : external_acts_on_m) {
    if (p.size() != nm || p[0] != 0)
      throw std::invalid_argument("equivariant_extension_map: bad external act");
    std::vector<char> seen(nm, 0);
    for (std::uint32_t i : p) {
      if (i >= nm || seen[i])
        throw std::invalid_argument("equivariant_extension_map: act is not a bijection");
      seen[i] = 1;
    }
    for (std::uint32_t a : m.generator_ids())
      for (std::uint32_t j = 0; j < nm; ++j)
        if (p[m.mul(a, j)] != m.mul(p[a], p[j]))
          throw std::invalid_argument("equivariant_extension_map: act is not an automorphism");
    for (std::uint32_t j = 0; j < nk; ++j)
      if (m_to_k[p[kinm[j]]] < 0)
        throw std::invalid_argument("equivariant_extension_map: act does not preserve k");
    acts.push_back(p);
    external.push_back(1);
  }

  std::map<std::vector<unsigned>, unsigned> fam_index;
  for (unsigned i = 0; i < family.size(); ++i) {
    if (!fam_index.emplace(family[i].exp, i).second)
      throw std::invalid_argument("equivariant_extension_map: duplicate family member");
  }
  auto apply_to_char = [&](const std::vector<unsigned>& exp,
                           const std::vector<std::uint32_t>& p) {
    std::vector<unsigned> ne(nk);
    for (std::uint32_t j = 0; j < nk; ++j) ne[(std::uint32_t)m_to_k[p[kinm[j]]]] = exp[j];
    return ne;
  };
  auto member_of = [&](const std::vector<unsigned>& exp) {
    auto it = fam_index.find(exp);
    if (it == fam_index.end())
      throw std::invalid_argument("equivariant_extension_map: family not act-stable");
    return it->second;
  };

  // orbit transport: per member a full m-permutation carrying the orbit rep
  constexpr unsigned kOut = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> carry(family.size());
  std::vector<std::int64_t> rep_of(family.size(), -1);
  std::vector<std::vector<unsigned>> orbit_members;
  for (unsigned f0 = 0; f0 < family.size(); ++f0) {
    if (rep_of[f0] >= 0) continue;
    std::vector<unsigned> orbit = {f0};
    rep_of[f0] = f0;
    carry[f0].resize(nm);
    for (std::uint32_t i = 0; i < nm; ++i) carry[f0][i] = i;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      unsigned u = orbit[head];
      for (auto& p : acts) {
        unsigned v = member_of(apply_to_char(family[u].exp, p));
        if (rep_of[v] >= 0) continue;
        rep_of[v] = f0;
        carry[v].resize(nm);
        for (std::uint32_t i = 0; i < nm; ++i) carry[v][i] = p[carry[u][i]];
        orbit.push_back(v);
      }
    }
    orbit_members.push_back(std::move(orbit));
  }

  // per orbit: pick the first extension of the representative whose transported
  // copies satisfy every generator-level equivariance constraint
  std::vector<std::vector<unsigned>> chosen(family.size());  // m-index -> exp, kOut outside stab
  std::vector<unsigned> chosen_mod(family.size(), modulus);   // modulus of the chosen exponents
  bool all_ok = true;
  for (auto& orbit : orbit_members) {
    unsigned rep = orbit[0];
    ExtensionRecord er = extension_search(k, m, family[rep]);
    if (er.extensions.empty()) {
      out.checks.add("extmap.exists", "every orbit representative admits an extension", false,
                     "no extension over family member " + std::to_string(rep));
      all_ok = false;
      continue;
    }
    std::vector<std::uint32_t> stab_in_m(er.stab.order());
    for (std::uint32_t s = 0; s < er.stab.order(); ++s)
      stab_in_m[s] = (std::uint32_t)m.index_of(er.stab.mat(s));
    bool done = false;
    for (auto& cand : er.extensions) {
      std::vector<std::vector<unsigned>> vec(orbit.size(), std::vector<unsigned>(nm, kOut));
      auto slot = [&](unsigned member) {
        return (unsigned)(std::find(orbit.begin(), orbit.end(), member) - orbit.begin());
      };
      for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
        unsigned u = orbit[oi];
        for (std::uint32_t s = 0; s < er.stab.order(); ++s)
          vec[oi][carry[u][stab_in_m[s]]] = cand.exp[s];
      }
      bool consistent = true;
      for (std::size_t oi = 0; oi < orbit.size() && consistent; ++oi) {
        unsigned u = orbit[oi];
        for (std::size_t a = 0; a < acts.size(); ++a) {
          const auto& p = acts[a];
          unsigned v = member_of(apply_to_char(family[u].exp, p));
          if (external[a] && v == u) continue;
          unsigned vi = slot(v);
          for (std::uint32_t i = 0; i < nm; ++i)
            if (vec[oi][i] != kOut && vec[vi][p[i]] != vec[oi][i]) {
              consistent = false;
              break;
            }
          if (!consistent) break;
        }
      }
      if (consistent) {
        for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
          chosen[orbit[oi]] = std::move(vec[oi]);
          chosen_mod[orbit[oi]] = cand.modulus;
        }
        for (std::size_t oi = 0; oi < orbit.size(); ++oi)
          if (chosen[orbit[oi]].empty()) throw std::logic_error("extmap: lost a member");
        done = true;
        break;
      }
    }
    if (!done) {
      out.checks.add("extmap.consistent",
                     "an extension choice transports equivariantly across the orbit", false,
                     "obstructed orbit at family member " + std::to_string(rep));
      all_ok = false;
    }
  }
  if (!all_ok) return out;

  out.entries.resize(family.size());
  for (unsigned f = 0; f < family.size(); ++f) {
    std::vector<FqMatrix> mats;
    for (std::uint32_t i = 0; i < nm; ++i)
      if (chosen[f][i] != kOut) mats.push_back(m.mat(i));
    out.entries[f].stab = FinGroup::generate("stab", mats, mats.size(), mats.size());
    if (out.entries[f].stab.order() != mats.size())
      throw std::logic_error("extmap: transported stabilizer not closed");
    out.entries[f].ext.modulus = chosen_mod[f];
    out.entries[f].ext.exp.resize(mats.size());
    for (std::uint32_t s = 0; s < out.entries[f].stab.order(); ++s)
      out.entries[f].ext.exp[s] =
          chosen[f][(std::uint32_t)m.index_of(out.entries[f].stab.mat(s))];
  }

  // final equivariance audit at generator level
  bool equiv = true;
  std::string w;
  for (unsigned f = 0; f < family.size() && equiv; ++f)
    for (std::size_t a = 0; a < acts.size(); ++a) {
      const auto& p = acts[a];
      unsigned v = member_of(apply_to_char(family[f].exp, p));
      if (external[a] && v == f) continue;
      for (std::uint32_t i = 0; i < nm && equiv; ++i) {
        bool in_f = chosen[f][i] != kOut, in_v = chosen[v][p[i]] != kOut;
        if (in_f != in_v || (in_f && chosen[f][i] != chosen[v][p[i]])) {
          equiv = false;
          w = "member " + std::to_string(f);
        }
      }
      if (!equiv) break;
    }
  out.checks.add("extmap.exists", "every orbit representative admits an extension", true);
  out.checks.add("extmap.equivariant",
                 "Lambda(lambda^a) = Lambda(lambda)^a for inner acts and moved characters",
                 equiv, w);

  // restriction audit: each entry restricts to its base character
  bool restr = true;
  for (unsigned f = 0; f < family.size() && restr; ++f) {
    unsigned mm = (unsigned)lcm_u64(out.entries[f].ext.modulus, family[f].modulus);
    for (std::uint32_t j = 0; j < nk; ++j) {
      auto si = out.entries[f].stab.index_of(k.mat(j));
      if (si < 0 || lchar_exp_at(out.entries[f].ext, (std::uint32_t)si, mm) !=
                        lchar_exp_at(family[f], j, mm)) {
        restr = false;
        break;
      }
    }
  }
  out.checks.add("extmap.restriction", "every chosen extension restricts to its base", restr);
  return out;
}

}  // namespace spb
