#include "spb/fqmat.hpp"

#include <bit>

namespace spb {

FqMatrix FqMatrix::zero(const FqField& f, unsigned n) {
  if (n == 0 || n > 8) throw std::invalid_argument("FqMatrix: dimension out of range");
  FqMatrix m;
  m.F = &f;
  m.n = n;
  return m;
}

FqMatrix FqMatrix::ident(const FqField& f, unsigned n) {
  FqMatrix m = zero(f, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool FqMatrix::is_identity() const {
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (get(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix t = zero(*F, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) t.set(j, i, get(i, j));
  return t;
}

FqMatrix FqMatrix::inverse() const {
  // Gauss-Jordan on [A | I].
  std::array<std::array<unsigned, 16>, 8> w{};
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) w[i][j] = get(i, j);
    w[i][n + i] = 1;
  }
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && w[piv][c] == 0) ++piv;
    if (piv == n) throw std::domain_error("FqMatrix::inverse: singular");
    std::swap(w[c], w[piv]);
    unsigned s = F->inv(w[c][c]);
    for (unsigned j = 0; j < 2 * n; ++j) w[c][j] = F->mul(w[c][j], s);
    for (unsigned r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      unsigned f = w[r][c];
      for (unsigned j = 0; j < 2 * n; ++j) w[r][j] = F->sub(w[r][j], F->mul(f, w[c][j]));
    }
  }
  FqMatrix inv = zero(*F, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv.set(i, j, w[i][n + j]);
  return inv;
}

FqMatrix FqMatrix::pow(i64 e) const {
  FqMatrix base = *this;
  if (e < 0) { base = inverse(); e = -e; }
  FqMatrix r = ident(*F, n);
  while (e) {
    if (e & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return r;
}

unsigned FqMatrix::mult_order() const {
  FqMatrix x = *this;
  unsigned k = 1;
  while (!x.is_identity()) {
    x = mat_mul(x, *this);
    ++k;
    if (k > 2000000) throw std::logic_error("mult_order: runaway");
  }
  return k;
}

FqMatrix FqMatrix::frob(unsigned k) const {
  FqMatrix r = *this;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) r.set(i, j, F->frob_k(get(i, j), k));
  return r;
}

std::string FqMatrix::str() const {
  std::string s = "[";
  for (unsigned i = 0; i < n; ++i) {
    s += i ? "; " : "";
    for (unsigned j = 0; j < n; ++j) s += (j ? "," : "") + F->str(get(i, j));
  }
  return s + "]";
}

FqMatrix mat_mul_ref(const FqMatrix& A, const FqMatrix& B) {
  if (A.F != B.F || A.n != B.n) throw std::logic_error("mat_mul: shape/field mismatch");
  const FqField& F = *A.F;
  unsigned n = A.n;
  FqMatrix C = FqMatrix::zero(F, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      unsigned aik = A.get(i, k);
      if (!aik) continue;
      for (unsigned j = 0; j < n; ++j) {
        unsigned b = B.get(k, j);
        if (b) C.set(i, j, F.add(C.get(i, j), F.mul(aik, b)));
      }
    }
  return C;
}

namespace {

// Prime-field product with 16-bit SWAR lanes: row sums stay below 2^16 for
// p <= 13 and n <= 8, so a whole row accumulates in two u64 words.
FqMatrix mat_mul_swar(const FqMatrix& A, const FqMatrix& B) {
  const FqField& F = *A.F;
  unsigned n = A.n, p = F.p;
  u64 brow[8][2];
  for (unsigned k = 0; k < n; ++k) {
    u64 lo = 0, hi = 0;
    for (unsigned j = 0; j < n; ++j) {
      u64 v = B.get(k, j);
      if (j < 4) lo |= v << (16 * j);
      else hi |= v << (16 * (j - 4));
    }
    brow[k][0] = lo;
    brow[k][1] = hi;
  }
  FqMatrix C = FqMatrix::zero(F, n);
  for (unsigned i = 0; i < n; ++i) {
    u64 lo = 0, hi = 0;
    for (unsigned k = 0; k < n; ++k) {
      u64 c = A.get(i, k);
      if (!c) continue;
      lo += brow[k][0] * c;
      hi += brow[k][1] * c;
    }
    for (unsigned j = 0; j < n; ++j) {
      u64 v = j < 4 ? (lo >> (16 * j)) & 0xffff : (hi >> (16 * (j - 4))) & 0xffff;
      C.set(i, j, (unsigned)(v % p));
    }
  }
  return C;
}

}  // namespace

FqMatrix mat_mul(const FqMatrix& A, const FqMatrix& B) {
  if (A.F != B.F || A.n != B.n) throw std::logic_error("mat_mul: shape/field mismatch");
  if (A.F->m == 1) return mat_mul_swar(A, B);
  return mat_mul_ref(A, B);
}

bool is_isometry(const FqMatrix& M, const FqMatrix& J) {
  FqMatrix t = mat_mul(mat_mul(M.transpose(), J), M);
  return t == J;
}

int conformal_multiplier(const FqMatrix& M, const FqMatrix& J) {
  FqMatrix t = mat_mul(mat_mul(M.transpose(), J), M);
  const FqField& F = *M.F;
  int mu = -1;
  for (unsigned i = 0; i < M.n; ++i)
    for (unsigned j = 0; j < M.n; ++j) {
      unsigned jj = J.get(i, j);
      unsigned tt = t.get(i, j);
      if (jj == 0) {
        if (tt != 0) return -1;
      } else {
        unsigned cand = F.div(tt, jj);
        if (mu == -1) mu = (int)cand;
        else if ((unsigned)mu != cand) return -1;
      }
    }
  return mu;
}

unsigned mat_key_words(unsigned n, unsigned q) {
  unsigned bpe = q <= 4 ? 2 : q <= 16 ? 4 : 8;
  unsigned bits = n * n * bpe;
  return (bits + 63) / 64;
}

void mat_pack(const FqMatrix& M, u64* out) {
  unsigned q = M.F->q;
  unsigned bpe = q <= 4 ? 2 : q <= 16 ? 4 : 8;
  unsigned words = mat_key_words(M.n, q);
  for (unsigned w = 0; w < words; ++w) out[w] = 0;
  unsigned bit = 0;
  for (unsigned idx = 0; idx < M.n * M.n; ++idx) {
    out[bit >> 6] |= (u64)M.a[idx] << (bit & 63);
    bit += bpe;
  }
}

void mat_unpack(const FqField& F, unsigned n, const u64* in, FqMatrix* out) {
  unsigned q = F.q;
  unsigned bpe = q <= 4 ? 2 : q <= 16 ? 4 : 8;
  u64 mask = bpe == 64 ? ~0ull : (1ull << bpe) - 1;
  *out = FqMatrix::zero(F, n);
  unsigned bit = 0;
  for (unsigned idx = 0; idx < n * n; ++idx) {
    out->a[idx] = (std::uint8_t)((in[bit >> 6] >> (bit & 63)) & mask);
    bit += bpe;
  }
}

u64 mat_key_hash(const u64* w, unsigned words) {
  u64 h = 0x9E3779B97F4A7C15ull;
  for (unsigned i = 0; i < words; ++i) {
    u64 x = w[i] + h;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    h = x;
  }
  return h;
}

}  // namespace spb
