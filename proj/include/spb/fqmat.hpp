#pragma once

#include <array>
#include <cstring>

#include "spb/numeric.hpp"

namespace spb {

// Square matrix over F_q, dimension n <= 8. Entries are field codes stored
// row-major with stride n; the tail of the buffer stays zero so packed
// encodings are canonical.
struct FqMatrix {
  const FqField* F = nullptr;
  unsigned n = 0;
  std::array<std::uint8_t, 64> a{};

  static FqMatrix zero(const FqField& f, unsigned n);
  static FqMatrix ident(const FqField& f, unsigned n);

  std::uint8_t get(unsigned i, unsigned j) const { return a[i * n + j]; }
  void set(unsigned i, unsigned j, unsigned code) { a[i * n + j] = (std::uint8_t)code; }

  bool operator==(const FqMatrix& o) const {
    return F == o.F && n == o.n && std::memcmp(a.data(), o.a.data(), n * n) == 0;
  }
  bool is_identity() const;

  FqMatrix transpose() const;
  FqMatrix inverse() const;  // throws std::domain_error if singular
  FqMatrix pow(i64 e) const;
  unsigned mult_order() const;
  // Entrywise field Frobenius iterate x -> x^(p^k).
  FqMatrix frob(unsigned k = 1) const;
  std::string str() const;
};

// Reference product: schoolbook with field table ops. Always correct.
FqMatrix mat_mul_ref(const FqMatrix& A, const FqMatrix& B);
// Dispatching product: SWAR lanes for prime fields, reference otherwise.
FqMatrix mat_mul(const FqMatrix& A, const FqMatrix& B);

// M^T J M == J
bool is_isometry(const FqMatrix& M, const FqMatrix& J);
// M^T J M == mu J for some scalar mu; returns mu code or -1.
int conformal_multiplier(const FqMatrix& M, const FqMatrix& J);

// Packed canonical encoding: ceil-log2 bits per entry, little-endian bit
// stream over the n*n entries. At most 8 words.
struct MatKeyView {
  const u64* w;
  unsigned words;
};

unsigned mat_key_words(unsigned n, unsigned q);
void mat_pack(const FqMatrix& M, u64* out);       // out has mat_key_words entries
void mat_unpack(const FqField& F, unsigned n, const u64* in, FqMatrix* out);
u64 mat_key_hash(const u64* w, unsigned words);

}  // namespace spb
