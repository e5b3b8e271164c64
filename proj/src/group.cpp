#include "spb/group.hpp"

#include <algorithm>

namespace spb {

namespace {
constexpr std::uint32_t kEmpty = 0xffffffffu;
}

void FinGroup::rehash(std::size_t cap) {
  std::size_t sz = 16;
  while (sz < cap * 2) sz <<= 1;
  slots_.assign(sz, kEmpty);
  for (std::uint32_t i = 0; i < count_; ++i) {
    const u64* k = keys_.data() + (std::size_t)i * words_;
    std::size_t h = mat_key_hash(k, words_) & (sz - 1);
    while (slots_[h] != kEmpty) h = (h + 1) & (sz - 1);
    slots_[h] = i;
  }
}

std::int64_t FinGroup::find_key(const u64* key) const {
  std::size_t mask = slots_.size() - 1;
  std::size_t h = mat_key_hash(key, words_) & mask;
  while (slots_[h] != kEmpty) {
    const u64* k = keys_.data() + (std::size_t)slots_[h] * words_;
    bool eq = true;
    for (unsigned w = 0; w < words_; ++w)
      if (k[w] != key[w]) { eq = false; break; }
    if (eq) return slots_[h];
    h = (h + 1) & mask;
  }
  return -1;
}

bool FinGroup::insert_key(const u64* key, std::uint32_t* out_idx) {
  if ((count_ + 1) * 2 > slots_.size()) rehash((std::size_t)count_ + 1);
  std::size_t mask = slots_.size() - 1;
  std::size_t h = mat_key_hash(key, words_) & mask;
  while (slots_[h] != kEmpty) {
    const u64* k = keys_.data() + (std::size_t)slots_[h] * words_;
    bool eq = true;
    for (unsigned w = 0; w < words_; ++w)
      if (k[w] != key[w]) { eq = false; break; }
    if (eq) { *out_idx = slots_[h]; return false; }
    h = (h + 1) & mask;
  }
  keys_.insert(keys_.end(), key, key + words_);
  slots_[h] = (std::uint32_t)count_;
  *out_idx = (std::uint32_t)count_;
  ++count_;
  return true;
}

FinGroup FinGroup::generate(std::string name, const std::vector<FqMatrix>& gens,
                            u64 budget, u64 expected_order) {
  if (gens.empty()) throw std::invalid_argument("FinGroup::generate: no generators");
  FinGroup g;
  g.name = std::move(name);
  g.F_ = gens[0].F;
  g.n_ = gens[0].n;
  g.words_ = mat_key_words(g.n_, g.F_->q);
  for (auto& m : gens)
    if (m.F != g.F_ || m.n != g.n_)
      throw std::invalid_argument("FinGroup::generate: mixed generator shapes");

  u64 reserve = expected_order ? expected_order : 1024;
  if (reserve > budget) reserve = budget;
  g.keys_.reserve((std::size_t)reserve * g.words_);
  g.rehash((std::size_t)reserve);

  u64 kident[8];
  mat_pack(FqMatrix::ident(*g.F_, g.n_), kident);
  std::uint32_t idx;
  g.insert_key(kident, &idx);

  std::vector<FqMatrix> gm;
  for (auto& m : gens) {
    u64 kb[8];
    mat_pack(m, kb);
    bool fresh = g.find_key(kb) < 0;
    if (fresh) {
      g.insert_key(kb, &idx);
      g.gen_ids_.push_back(idx);
      gm.push_back(m);
    } else {
      g.gen_ids_.push_back((std::uint32_t)g.find_key(kb));
      gm.push_back(m);
    }
    if (g.count_ > budget) throw BudgetExceeded(g.name, budget);
  }

  u64 kbuf[8];
  for (std::uint32_t i = 0; i < g.count_; ++i) {
    FqMatrix M = g.mat(i);
    for (auto& gen : gm) {
      FqMatrix P = mat_mul(M, gen);
      mat_pack(P, kbuf);
      std::uint32_t ni;
      if (g.insert_key(kbuf, &ni) && g.count_ > budget) throw BudgetExceeded(g.name, budget);
    }
  }
  if (expected_order && g.count_ != expected_order)
    throw std::logic_error("FinGroup::generate: order mismatch for " + g.name + ": got " +
                           std::to_string(g.count_) + ", expected " + std::to_string(expected_order));
  return g;
}

FqMatrix FinGroup::mat(std::uint32_t i) const {
  FqMatrix m;
  mat_unpack(*F_, n_, keys_.data() + (std::size_t)i * words_, &m);
  return m;
}

std::int64_t FinGroup::index_of(const FqMatrix& m) const {
  if (m.F != F_ || m.n != n_) return -1;
  u64 kb[8];
  mat_pack(m, kb);
  return find_key(kb);
}

std::uint32_t FinGroup::mul(std::uint32_t i, std::uint32_t j) const {
  auto r = index_of(mat_mul(mat(i), mat(j)));
  if (r < 0) throw std::logic_error("FinGroup::mul: product escaped the group");
  return (std::uint32_t)r;
}

std::uint32_t FinGroup::inv(std::uint32_t i) const {
  auto r = index_of(mat(i).inverse());
  if (r < 0) throw std::logic_error("FinGroup::inv: inverse escaped the group");
  return (std::uint32_t)r;
}

unsigned FinGroup::element_order(std::uint32_t i) const { return mat(i).mult_order(); }

std::vector<FqMatrix> FinGroup::generator_mats() const {
  std::vector<FqMatrix> v;
  v.reserve(gen_ids_.size());
  for (auto id : gen_ids_) v.push_back(mat(id));
  return v;
}

bool FinGroup::subset_of(const FinGroup& g) const {
  if (order() > g.order()) return false;
  for (std::uint32_t i = 0; i < count_; ++i)
    if (!g.contains(mat(i))) return false;
  return true;
}

const FinGroup::Classes& FinGroup::classes() const {
  if (classes_) return *classes_;
  auto cl = std::make_shared<Classes>();
  cl->class_of.assign((std::size_t)count_, kEmpty);

  std::vector<FqMatrix> gm = generator_mats();
  std::vector<FqMatrix> gi;
  for (auto& m : gm) gi.push_back(m.inverse());

  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < count_; ++s) {
    if (cl->class_of[s] != kEmpty) continue;
    std::uint32_t cid = (std::uint32_t)cl->rep.size();
    cl->rep.push_back(s);
    cl->members.emplace_back();
    cl->class_of[s] = cid;
    stack = {s};
    auto& mem = cl->members.back();
    mem.push_back(s);
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      FqMatrix Mx = mat(x);
      for (std::size_t t = 0; t < gm.size(); ++t) {
        FqMatrix C = mat_mul(mat_mul(gm[t], Mx), gi[t]);
        auto ci = index_of(C);
        if (ci < 0) throw std::logic_error("classes: conjugate escaped the group");
        if (cl->class_of[ci] == kEmpty) {
          cl->class_of[ci] = cid;
          mem.push_back((std::uint32_t)ci);
          stack.push_back((std::uint32_t)ci);
        }
      }
    }
    std::sort(mem.begin(), mem.end());
    cl->size.push_back(mem.size());
  }

  cl->exponent = 1;
  for (std::size_t c = 0; c < cl->rep.size(); ++c) {
    cl->rep_order.push_back(element_order(cl->rep[c]));
    cl->exponent = (unsigned)lcm_u64(cl->exponent, cl->rep_order.back());
  }
  for (std::size_t c = 0; c < cl->rep.size(); ++c)
    cl->inverse_class.push_back(cl->class_of[inv(cl->rep[c])]);

  classes_ = cl;
  return *classes_;
}

FinGroup FinGroup::subgroup(std::string name, const std::vector<FqMatrix>& gens, u64 budget) const {
  FinGroup h = generate(std::move(name), gens, budget);
  if (order() % h.order() != 0) throw std::logic_error("subgroup: order does not divide");
  return h;
}

}  // namespace spb
