#include "spb/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

namespace spb {

unsigned euler_phi(unsigned e) {
  unsigned r = e;
  for (unsigned p = 2; p * p <= e; ++p) {
    if (e % p == 0) {
      r -= r / p;
      while (e % p == 0) e /= p;
    }
  }
  if (e > 1) r -= r / e;
  return r;
}

namespace {

// Exact division of integer polynomials, divisor monic.
std::vector<i64> poly_div_exact(std::vector<i64> num, const std::vector<i64>& den) {
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  std::vector<i64> quot(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    i64 c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (i64 c : num)
    if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
  return quot;
}

}  // namespace

const std::vector<i64>& cyclotomic_poly(unsigned e) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<i64>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;

  // Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d, computed bottom-up.
  std::vector<unsigned> stack = {e};
  while (!stack.empty()) {
    unsigned n = stack.back();
    if (cache.count(n)) { stack.pop_back(); continue; }
    bool ready = true;
    for (unsigned d = 1; d < n; ++d)
      if (n % d == 0 && !cache.count(d)) { stack.push_back(d); ready = false; }
    if (!ready) continue;
    stack.pop_back();
    std::vector<i64> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d)
      if (n % d == 0) num = poly_div_exact(std::move(num), cache[d]);
    cache.emplace(n, std::move(num));
  }
  return cache[e];
}

// ---------------------------------------------------------------------------
// CycInt

void CycInt::normalize() {
  for (auto& t : terms_) t.first %= e_;
  std::sort(terms_.begin(), terms_.end());
  size_t w = 0;
  for (size_t i = 0; i < terms_.size();) {
    size_t j = i;
    i64 c = 0;
    while (j < terms_.size() && terms_[j].first == terms_[i].first) c += terms_[j++].second;
    if (c != 0) terms_[w++] = {terms_[i].first, c};
    i = j;
  }
  terms_.resize(w);
}

CycInt CycInt::integer(i64 v) {
  CycInt r;
  if (v != 0) r.terms_ = {{0u, v}};
  return r;
}

CycInt CycInt::root(unsigned e, i64 k, i64 coeff) {
  if (e == 0) throw std::invalid_argument("CycInt::root: e = 0");
  CycInt r;
  r.e_ = e;
  i64 kk = ((k % (i64)e) + e) % e;
  if (coeff != 0) r.terms_ = {{(unsigned)kk, coeff}};
  return r;
}

CycInt CycInt::rebased(unsigned new_e) const {
  if (new_e % e_ != 0) throw std::invalid_argument("CycInt::rebased: conductor mismatch");
  CycInt r;
  r.e_ = new_e;
  unsigned f = new_e / e_;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.first * f, t.second});
  std::sort(r.terms_.begin(), r.terms_.end());
  return r;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  unsigned e = (unsigned)lcm_u64(a.e_, b.e_);
  CycInt ra = a.rebased(e), rb = b.rebased(e);
  CycInt r;
  r.e_ = e;
  r.terms_ = ra.terms_;
  r.terms_.insert(r.terms_.end(), rb.terms_.begin(), rb.terms_.end());
  r.normalize();
  return r;
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + b.scaled(-1); }

CycInt operator*(const CycInt& a, const CycInt& b) {
  unsigned e = (unsigned)lcm_u64(a.e_, b.e_);
  CycInt ra = a.rebased(e), rb = b.rebased(e);
  CycInt r;
  r.e_ = e;
  r.terms_.reserve(ra.terms_.size() * rb.terms_.size());
  for (auto& s : ra.terms_)
    for (auto& t : rb.terms_)
      r.terms_.push_back({(s.first + t.first) % e, s.second * t.second});
  r.normalize();
  return r;
}

CycInt CycInt::scaled(i64 c) const {
  CycInt r;
  r.e_ = e_;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.first, t.second * c});
  return r;
}

CycInt CycInt::conj() const {
  CycInt r;
  r.e_ = e_;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.first == 0 ? 0 : e_ - t.first, t.second});
  std::sort(r.terms_.begin(), r.terms_.end());
  return r;
}

std::vector<i64> CycInt::reduced(unsigned e) const {
  if (e % e_ != 0) throw std::invalid_argument("CycInt::reduced: conductor mismatch");
  std::vector<i64> v(e, 0);
  unsigned f = e / e_;
  for (auto& t : terms_) v[(t.first * f) % e] += t.second;
  const auto& phi = cyclotomic_poly(e);
  unsigned d = (unsigned)phi.size() - 1;
  for (unsigned i = e; i-- > d;) {
    i64 c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (unsigned j = 0; j < d; ++j) v[i - d + j] -= c * phi[j];
  }
  v.resize(d);
  return v;
}

bool CycInt::is_zero() const {
  if (terms_.empty()) return true;
  auto v = reduced(e_);
  return std::all_of(v.begin(), v.end(), [](i64 c) { return c == 0; });
}

bool CycInt::equals(const CycInt& o) const {
  unsigned e = (unsigned)lcm_u64(e_, o.e_);
  return (*this - o).rebased(e).is_zero();
}

bool CycInt::is_integer(i64* out) const {
  auto v = reduced(e_);
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) return false;
  if (out) *out = v.empty() ? 0 : v[0];
  return true;
}

CycInt CycInt::divided_exact(i64 d) const {
  if (d == 0) throw std::domain_error("CycInt::divided_exact: division by zero");
  auto v = reduced(e_);
  CycInt r;
  r.e_ = e_;
  for (unsigned i = 0; i < v.size(); ++i) {
    if (v[i] % d != 0) throw std::domain_error("CycInt::divided_exact: not divisible");
    if (v[i] != 0) r.terms_.push_back({i, v[i] / d});
  }
  return r;
}

std::complex<long double> CycInt::eval() const {
  const long double pi = std::acos((long double)-1);
  std::complex<long double> s = 0;
  for (auto& t : terms_) {
    long double ang = 2 * pi * t.first / e_;
    s += (long double)t.second * std::complex<long double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string CycInt::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& t : terms_) {
    if (!s.empty() && t.second > 0) s += "+";
    if (t.first == 0) {
      s += std::to_string(t.second);
    } else {
      if (t.second == -1) s += "-";
      else if (t.second != 1) s += std::to_string(t.second) + "*";
      s += "z" + std::to_string(e_) + "^" + std::to_string(t.first);
    }
  }
  return s;
}

int CycInt::cmp(const CycInt& a, const CycInt& b) {
  unsigned e = (unsigned)lcm_u64(a.e_, b.e_);
  auto va = a.reduced(e), vb = b.reduced(e);
  for (size_t i = 0; i < va.size(); ++i) {
    if (va[i] != vb[i]) return va[i] < vb[i] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// CycAcc

void CycAcc::add_product(const CycInt& a, const CycInt& b, i64 scale, bool conj_b) {
  if (scale == 0) return;
  unsigned fa = e_ / a.conductor(), fb = e_ / b.conductor();
  if (fa * a.conductor() != e_ || fb * b.conductor() != e_)
    throw std::invalid_argument("CycAcc: conductor mismatch");
  for (auto& s : a.terms()) {
    unsigned ea = s.first * fa % e_;
    for (auto& t : b.terms()) {
      unsigned eb = t.first * fb % e_;
      unsigned ex = conj_b ? (ea + e_ - eb) % e_ : (ea + eb) % e_;
      v_[ex] += scale * s.second * t.second;
    }
  }
}

void CycAcc::add(const CycInt& a, i64 scale) {
  if (scale == 0) return;
  unsigned fa = e_ / a.conductor();
  if (fa * a.conductor() != e_) throw std::invalid_argument("CycAcc: conductor mismatch");
  for (auto& s : a.terms()) v_[s.first * fa % e_] += scale * s.second;
}

std::vector<i64> CycAcc::reduced() const {
  std::vector<i64> v = v_;
  const auto& phi = cyclotomic_poly(e_);
  unsigned d = (unsigned)phi.size() - 1;
  for (unsigned i = e_; i-- > d;) {
    i64 c = v[i];
    if (c == 0) continue;
    v[i] = 0;
    for (unsigned j = 0; j < d; ++j) v[i - d + j] -= c * phi[j];
  }
  v.resize(d);
  return v;
}

bool CycAcc::is_integer_value(i64 expect) const {
  auto v = reduced();
  if (v.empty()) return expect == 0;
  if (v[0] != expect) return false;
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CycModContext

CycModContext::CycModContext(u64 ell, unsigned E, unsigned root_choice) : ell_(ell), E_(E) {
  if (!is_prime(ell)) throw std::invalid_argument("CycModContext: ell must be prime");
  if (E == 0) throw std::invalid_argument("CycModContext: E = 0");
  a_ = 0;
  Eprime_ = E;
  while (Eprime_ % ell == 0) { Eprime_ /= (unsigned)ell; ++a_; }
  unsigned m = 1;
  if (Eprime_ > 1) {
    u64 t = ell % Eprime_;
    u64 x = t;
    m = 1;
    while (x != 1 % Eprime_) { x = x * ell % Eprime_; ++m; }
  }
  F_ = &FqField::get((unsigned)ell, m);
  if (Eprime_ == 1) {
    omega_ = 1;
  } else {
    // xi: fixed primitive Eprime-th root (a power of the field generator),
    // then omega = xi^s with s * ell^a = 1 mod Eprime, so the ell-power part
    // of zeta_E maps to 1.
    unsigned unit = 1;
    for (unsigned picked = 0; picked < root_choice;) {
      ++unit;
      if (unit >= Eprime_) throw std::invalid_argument("CycModContext: bad root choice");
      if (gcd_u64(unit, Eprime_) == 1) ++picked;
    }
    u64 step = (u64)(F_->q - 1) / Eprime_;
    unsigned xi = F_->gpow((i64)(step * unit));
    u64 la = powmod(ell % Eprime_, a_, Eprime_);
    u64 s = 1;
    while (s * la % Eprime_ != 1 % Eprime_) ++s;
    omega_ = F_->pow(xi, (i64)s);
  }
}

unsigned CycModContext::reduce(const CycInt& v) const {
  if (E_ % v.conductor() != 0) throw std::invalid_argument("CycModContext::reduce: conductor");
  unsigned f = E_ / v.conductor();
  unsigned acc = 0;
  for (auto& t : v.terms()) {
    unsigned w = F_->pow(omega_, (i64)(t.first * (u64)f % E_));
    acc = F_->add(acc, F_->mul(F_->from_int(t.second), w));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// CycIdeal
// ---------------------------------------------------------------------------

namespace {

// Polynomials over F_ell, coefficients low degree first, trimmed.
using LPoly = std::vector<u64>;

LPoly ltrim(LPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

LPoly lmul(const LPoly& a, const LPoly& b, u64 ell) {
  if (a.empty() || b.empty()) return {};
  LPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % ell;
  return ltrim(std::move(c));
}

u64 linv(u64 a, u64 ell) { return powmod(a, ell - 2, ell); }

// a mod m (m need not be monic).
LPoly lmod(LPoly a, const LPoly& m, u64 ell) {
  u64 lead = linv(m.back(), ell);
  while (a.size() >= m.size()) {
    u64 c = a.back() % ell;
    if (c) {
      u64 f = c * lead % ell;
      std::size_t off = a.size() - m.size();
      for (std::size_t j = 0; j < m.size(); ++j)
        a[off + j] = (a[off + j] + ell - f * m[j] % ell) % ell;
    }
    a.pop_back();
    a = ltrim(std::move(a));
    if (a.size() < m.size()) break;
  }
  return a;
}

LPoly lgcd(LPoly a, LPoly b, u64 ell) {
  a = ltrim(std::move(a));
  b = ltrim(std::move(b));
  while (!b.empty()) {
    LPoly r = lmod(a, b, ell);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 f = linv(a.back(), ell);
    for (u64& c : a) c = c * f % ell;
  }
  return a;
}

LPoly lpow(LPoly base, u64 e, const LPoly& m, u64 ell) {
  LPoly r = {1};
  base = lmod(std::move(base), m, ell);
  while (e) {
    if (e & 1) r = lmod(lmul(r, base, ell), m, ell);
    base = lmod(lmul(base, base, ell), m, ell);
    e >>= 1;
  }
  return r;
}

LPoly ldiv_exact(LPoly num, const LPoly& den, u64 ell) {
  LPoly quot(num.size() - den.size() + 1, 0);
  u64 lead = linv(den.back(), ell);
  for (std::size_t i = num.size(); i-- >= den.size();) {
    u64 c = num[i] % ell;
    if (c) {
      u64 f = c * lead % ell;
      quot[i - den.size() + 1] = f;
      for (std::size_t j = 0; j < den.size(); ++j)
        num[i - den.size() + 1 + j] = (num[i - den.size() + 1 + j] + ell - f * den[j] % ell) % ell;
    }
    if (i + 1 == den.size()) break;
  }
  return ltrim(std::move(quot));
}

}  // namespace

CycIdeal::CycIdeal(u64 ell, unsigned E, unsigned root_choice) : ell_(ell), E_(E) {
  if (!is_prime(ell) || ell == 2) throw std::invalid_argument("CycIdeal: ell must be an odd prime");
  if (E == 0) throw std::invalid_argument("CycIdeal: E = 0");
  a_ = 0;
  Eprime_ = E;
  while (Eprime_ % ell == 0) {
    Eprime_ /= (unsigned)ell;
    ++a_;
  }
  u64 la = powmod(ell % Eprime_, a_, Eprime_);
  c_ = 1;
  while (c_ * la % Eprime_ != 1 % Eprime_) ++c_;

  if (Eprime_ == 1) {
    g_ = {(unsigned)(ell - 1), 1u};  // y - 1
    count_ = 1;
    return;
  }
  // Phi_Eprime mod ell splits into phi(Eprime)/m distinct irreducible factors
  // of common degree m = ord(ell mod Eprime); isolate them by equal-degree
  // splitting with gcd(h, u^{(ell^m-1)/2} - 1) over a deterministic sequence
  // of test polynomials u (base-ell digit expansions of a counter).
  unsigned m = 1;
  {
    u64 x = ell % Eprime_;
    while (x != 1 % Eprime_) {
      x = x * ell % Eprime_;
      ++m;
    }
  }
  LPoly phi;
  for (i64 c : cyclotomic_poly(Eprime_)) phi.push_back((u64)(((c % (i64)ell) + (i64)ell) % (i64)ell));
  phi = ltrim(std::move(phi));

  std::vector<LPoly> irred, work = {phi};
  while (!work.empty()) {
    LPoly h = std::move(work.back());
    work.pop_back();
    if (h.size() - 1 == m) {
      u64 f = linv(h.back(), ell);
      for (u64& c : h) c = c * f % ell;
      irred.push_back(std::move(h));
      continue;
    }
    for (u64 s = ell;; ++s) {
      if (s > u64(50000000)) throw std::logic_error("CycIdeal: splitting stalled");
      LPoly u;
      for (u64 v = s; v; v /= ell) u.push_back(v % ell);
      u = lmod(ltrim(std::move(u)), h, ell);
      {
        LPoly d0 = lgcd(u, h, ell);
        if (d0.size() > 1 && d0.size() < h.size()) {
          work.push_back(ldiv_exact(h, d0, ell));
          work.push_back(std::move(d0));
          break;
        }
      }
      // u^{(ell^m-1)/2} = (prod_{i<m} u^{ell^i})^{(ell-1)/2}
      LPoly t = u, prod = {1};
      for (unsigned i = 0; i < m; ++i) {
        prod = lmod(lmul(prod, t, ell), h, ell);
        if (i + 1 < m) t = lpow(t, ell, h, ell);
      }
      t = lpow(prod, (ell - 1) / 2, h, ell);
      if (t.empty())
        t = {ell - 1};
      else
        t[0] = (t[0] + ell - 1) % ell;
      LPoly d = lgcd(t, h, ell);
      if (!d.empty() && d.size() > 1 && d.size() < h.size()) {
        work.push_back(ldiv_exact(h, d, ell));
        work.push_back(std::move(d));
        break;
      }
    }
  }
  std::sort(irred.begin(), irred.end());
  count_ = (unsigned)irred.size();
  if (count_ != euler_phi(Eprime_) / m) throw std::logic_error("CycIdeal: wrong factor count");
  g_.clear();
  for (u64 c : irred[root_choice % count_]) g_.push_back((unsigned)c);
}

std::vector<unsigned> CycIdeal::reduce(const CycInt& v) const {
  if (E_ % v.conductor() != 0) throw std::invalid_argument("CycIdeal::reduce: conductor");
  unsigned f = E_ / v.conductor();
  LPoly acc(Eprime_, 0);
  for (auto& t : v.terms()) {
    u64 te = t.first * (u64)f % E_;
    u64 k = te % Eprime_ * c_ % Eprime_;
    i64 cf = t.second % (i64)ell_;
    acc[(std::size_t)k] = (acc[(std::size_t)k] + (u64)((cf + (i64)ell_) % (i64)ell_)) % ell_;
  }
  LPoly g64(g_.begin(), g_.end());
  LPoly r = lmod(ltrim(std::move(acc)), g64, ell_);
  std::vector<unsigned> out(residue_degree(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = (unsigned)r[i];
  return out;
}

}  // namespace spb
