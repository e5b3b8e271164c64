#pragma once

#include <memory>
#include <optional>
#include <string>

#include "spb/fqmat.hpp"

namespace spb {

struct BudgetExceeded : std::runtime_error {
  std::string group_name;
  u64 budget;
  BudgetExceeded(std::string name, u64 b)
      : std::runtime_error("enumeration budget exceeded for " + name +
                           " (budget " + std::to_string(b) + ")"),
        group_name(std::move(name)),
        budget(b) {}
};

// A finite matrix group enumerated by breadth-first closure of its
// generators. Elements are stored as packed keys (one flat array) and
// unpacked on demand; index 0 is the identity. Enumeration order, and hence
// every derived table, is deterministic in the generator list.
class FinGroup {
 public:
  std::string name;

  static FinGroup generate(std::string name, const std::vector<FqMatrix>& gens,
                           u64 budget, u64 expected_order = 0);

  const FqField& field() const { return *F_; }
  unsigned dim() const { return n_; }
  u64 order() const { return count_; }
  FqMatrix mat(std::uint32_t i) const;
  std::int64_t index_of(const FqMatrix& m) const;  // -1 if absent
  bool contains(const FqMatrix& m) const { return index_of(m) >= 0; }
  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t inv(std::uint32_t i) const;
  unsigned element_order(std::uint32_t i) const;
  const std::vector<std::uint32_t>& generator_ids() const { return gen_ids_; }
  std::vector<FqMatrix> generator_mats() const;
  bool subset_of(const FinGroup& g) const;

  struct Classes {
    std::vector<std::uint32_t> class_of;             // per element
    std::vector<std::uint32_t> rep;                  // per class, first-seen element
    std::vector<u64> size;
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<unsigned> rep_order;
    std::vector<std::uint32_t> inverse_class;
    unsigned exponent = 1;
    unsigned count() const { return (unsigned)rep.size(); }
  };
  const Classes& classes() const;  // computed once, cached

  // Smallest subgroup containing the given elements, as a new FinGroup.
  FinGroup subgroup(std::string name, const std::vector<FqMatrix>& gens, u64 budget) const;

 private:
  const FqField* F_ = nullptr;
  unsigned n_ = 0;
  unsigned words_ = 0;
  u64 count_ = 0;
  std::vector<u64> keys_;               // count_ * words_
  std::vector<std::uint32_t> slots_;    // open addressing, power-of-two size
  std::vector<std::uint32_t> gen_ids_;
  mutable std::shared_ptr<Classes> classes_;

  void rehash(std::size_t cap);
  std::int64_t find_key(const u64* key) const;
  bool insert_key(const u64* key, std::uint32_t* out_idx);
};

}  // namespace spb
