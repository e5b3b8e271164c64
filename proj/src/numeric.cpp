#include "spb/numeric.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace spb {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (u64 d = 29; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) { u64 t = a % b; a = b; b = t; }
  return a;
}

u64 lcm_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = (u128)r * b % m;
    b = (u128)b * b % m;
    e >>= 1;
  }
  return r;
}

u128 ipow128(u64 b, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    u128 nr = r * b;
    if (b != 0 && nr / b != r) throw std::overflow_error("ipow128 overflow");
    r = nr;
  }
  return r;
}

std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) { s.push_back(char('0' + (unsigned)(v % 10))); v /= 10; }
  std::reverse(s.begin(), s.end());
  return s;
}

LPartResult lpart(u128 n, u64 ell) {
  if (n == 0) throw std::invalid_argument("lpart: n must be positive");
  if (!is_prime(ell)) throw std::invalid_argument("lpart: ell must be prime");
  LPartResult r;
  r.ell = ell;
  r.valuation = 0;
  r.ell_part = 1;
  while (n % ell == 0) {
    n /= ell;
    r.ell_part *= ell;
    ++r.valuation;
  }
  r.ell_prime_part = n;
  return r;
}

unsigned val_of_power_minus_one(u64 q, u64 k, u64 ell) {
  if (q < 2 || k == 0) throw std::invalid_argument("val_of_power_minus_one: need q >= 2, k >= 1");
  if (!is_prime(ell)) throw std::invalid_argument("val_of_power_minus_one: ell must be prime");
  if (q % ell == 0) return 0;  // q^k == 0 mod ell
  unsigned v = 0;
  u64 mod = 1;
  // Raise the modulus until q^k - 1 stops being divisible.
  for (;;) {
    if (mod > std::numeric_limits<u64>::max() / ell) break;
    mod *= ell;
    if (powmod(q % mod, k, mod) != 1 % mod) break;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// FqField

namespace {

// Fixed moduli for quadratic extensions: x^2 + 1 when -1 is a non-square,
// x^2 - 2 for p = 5, 13 (where 2 is a non-square).
const std::map<unsigned, std::vector<unsigned>> kQuadraticModuli = {
    {3, {1, 0, 1}},
    {5, {3, 0, 1}},
    {7, {1, 0, 1}},
    {11, {1, 0, 1}},
    {13, {11, 0, 1}},
};

std::vector<unsigned> decode(unsigned code, unsigned p, unsigned m) {
  std::vector<unsigned> d(m);
  for (unsigned i = 0; i < m; ++i) { d[i] = code % p; code /= p; }
  return d;
}

unsigned encode(const std::vector<unsigned>& d, unsigned p) {
  unsigned c = 0;
  for (size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return c;
}

// Polynomial arithmetic over F_p on coefficient vectors (low degree first).
std::vector<unsigned> pmulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                              const std::vector<unsigned>& mod, unsigned p) {
  std::vector<unsigned> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  unsigned m = unsigned(mod.size()) - 1;
  for (size_t i = c.size(); i-- > m;) {
    unsigned t = c[i];
    if (!t) continue;
    c[i] = 0;
    for (unsigned j = 0; j < m; ++j) {
      unsigned s = (t * mod[j]) % p;
      c[i - m + j] = (c[i - m + j] + p - s) % p;
    }
  }
  c.resize(m);
  return c;
}

std::vector<unsigned> ppowmod(std::vector<unsigned> base, u64 e,
                              const std::vector<unsigned>& mod, unsigned p) {
  unsigned m = unsigned(mod.size()) - 1;
  std::vector<unsigned> r(m, 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = pmulmod(r, base, mod, p);
    base = pmulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

bool poly_irreducible(const std::vector<unsigned>& f, unsigned p) {
  unsigned m = unsigned(f.size()) - 1;
  if (m == 1) return true;
  // f irreducible over F_p iff x^{p^m} = x mod f and x^{p^{m/r}} != x for
  // each prime r dividing m.
  std::vector<unsigned> x(m, 0);
  x[1] = 1;
  auto xq = ppowmod(x, (u64)ipow128(p, m), f, p);
  if (xq != x) return false;
  for (unsigned r = 2; r <= m; ++r) {
    if (m % r) continue;
    bool rp = true;
    for (unsigned d = 2; d < r; ++d)
      if (r % d == 0) { rp = false; break; }
    if (!rp) continue;
    auto xr = ppowmod(x, (u64)ipow128(p, m / r), f, p);
    if (xr == x) return false;
  }
  return true;
}

}  // namespace

FqField::FqField(unsigned p_, unsigned m_) : p(p_), m(m_) {
  if (!is_prime(p) || m == 0 || m > 6) throw std::invalid_argument("FqField: bad (p, m)");
  u128 qq = ipow128(p, m);
  if (qq > 65536) throw std::invalid_argument("FqField: q too large");
  q = (unsigned)qq;

  if (m >= 2) {
    auto it = kQuadraticModuli.find(p);
    if (m == 2 && it != kQuadraticModuli.end()) {
      mod = it->second;
    } else {
      // Deterministic fallback: smallest monic irreducible by code order.
      for (unsigned c = 0;; ++c) {
        std::vector<unsigned> f = decode(c, p, m);
        f.push_back(1);
        if (poly_irreducible(f, p)) { mod = f; break; }
        if (c >= q) throw std::logic_error("FqField: no irreducible found");
      }
    }
  }

  // Multiplicative generator: smallest code of full order, then exp/log tables.
  exp_.assign(q - 1, 0);
  log_.assign(q, 0);
  for (unsigned g = 2; g < q && gen == 0; ++g) {
    unsigned x = 1;
    bool full = true;
    for (unsigned i = 1; i + 1 < q; ++i) {  // i = 1 .. q-2
      x = raw_mul(x, g);
      if (x == 1) { full = false; break; }
    }
    if (full) gen = g;
  }
  if (gen == 0) {
    if (q == 2) gen = 1;
    else throw std::logic_error("FqField: no generator found");
  }
  unsigned x = 1;
  for (unsigned i = 0; i < q - 1; ++i) {
    exp_[i] = x;
    log_[x] = i;
    x = raw_mul(x, gen);
  }
  if (x != 1) throw std::logic_error("FqField: generator order wrong");
}

unsigned FqField::raw_mul(unsigned a, unsigned b) const {
  if (m == 1) return (a * b) % p;
  auto da = decode(a, p, m), db = decode(b, p, m);
  return encode(pmulmod(da, db, mod, p), p);
}

const FqField& FqField::get(unsigned p, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<FqField>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<FqField>(new FqField(p, m))).first;
  return *it->second;
}

unsigned FqField::add(unsigned a, unsigned b) const {
  if (m == 1) return (a + b) % p;
  unsigned c = 0, mult = 1;
  for (unsigned i = 0; i < m; ++i) {
    c += ((a % p + b % p) % p) * mult;
    a /= p; b /= p; mult *= p;
  }
  return c;
}

unsigned FqField::neg(unsigned a) const {
  if (m == 1) return (p - a) % p;
  unsigned c = 0, mult = 1;
  for (unsigned i = 0; i < m; ++i) {
    c += ((p - a % p) % p) * mult;
    a /= p; mult *= p;
  }
  return c;
}

unsigned FqField::sub(unsigned a, unsigned b) const { return add(a, neg(b)); }

unsigned FqField::mul(unsigned a, unsigned b) const {
  if (a == 0 || b == 0) return 0;
  unsigned e = log_[a] + log_[b];
  if (e >= q - 1) e -= q - 1;
  return exp_[e];
}

unsigned FqField::inv(unsigned a) const {
  if (a == 0) throw std::domain_error("FqField::inv(0)");
  unsigned e = log_[a];
  return exp_[e == 0 ? 0 : q - 1 - e];
}

unsigned FqField::pow(unsigned a, i64 e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("FqField::pow(0, negative)");
    return e == 0 ? 1 : 0;
  }
  i64 n = q - 1;
  i64 ee = ((e % n) + n) % n;
  return exp_[(log_[a] * (u64)ee) % (u64)n];
}

unsigned FqField::frob_k(unsigned a, unsigned k) const {
  unsigned r = a;
  for (unsigned i = 0; i < k % m; ++i) r = frob(r);
  return r;
}

unsigned FqField::from_int(i64 v) const {
  i64 r = v % (i64)p;
  if (r < 0) r += p;
  return (unsigned)r;
}

unsigned FqField::dlog(unsigned a) const {
  if (a == 0) throw std::domain_error("FqField::dlog(0)");
  return log_[a];
}

unsigned FqField::gpow(i64 e) const {
  i64 n = q - 1;
  i64 ee = ((e % n) + n) % n;
  return exp_[ee];
}

unsigned FqField::order_of(unsigned a) const {
  if (a == 0) throw std::domain_error("FqField::order_of(0)");
  return (q - 1) / (unsigned)gcd_u64(q - 1, dlog(a));
}

bool FqField::is_square(unsigned a) const {
  if (a == 0) return true;
  if (p == 2) return true;
  return dlog(a) % 2 == 0;
}

std::string FqField::str(unsigned a) const {
  if (m == 1) return std::to_string(a);
  auto d = decode(a, p, m);
  std::string s = "[";
  for (unsigned i = 0; i < m; ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

}  // namespace spb
