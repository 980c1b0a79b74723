#pragma once

#include <bit>
#include <span>
#include <vector>

#include "waring/modulus.hpp"

namespace waring {

/// A subset of Z_q stored as a membership bitset over {0, ..., q-1}.
class ResidueSet {
 public:
  static constexpr u64 kMaxModulus = u64{1} << 26;

  ResidueSet() = default;
  /// Empty subset of Z_q. Throws RangeError for q > 2^26.
  explicit ResidueSet(FactoredModulus q);
  explicit ResidueSet(u64 q) : ResidueSet(FactoredModulus(q)) {}

  /// Members are reduced mod q.
  static ResidueSet from_members(const FactoredModulus& q, std::span<const u64> members);
  static ResidueSet from_members(u64 q, std::initializer_list<u64> members);
  static ResidueSet full(const FactoredModulus& q);

  u64 modulus() const { return modulus_.value(); }
  const FactoredModulus& factored_modulus() const { return modulus_; }

  bool contains(u64 x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  void insert(u64 x) { words_[x >> 6] |= u64{1} << (x & 63); }
  void erase(u64 x) { words_[x >> 6] &= ~(u64{1} << (x & 63)); }

  u64 size() const;
  bool empty() const;
  std::vector<u64> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      u64 bits = words_[w];
      while (bits) {
        f(static_cast<u64>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  /// Smallest member, or modulus() when empty.
  u64 first() const;

  /// {x + a mod q : x in this}.
  ResidueSet shifted(u64 a) const;
  /// this |= {x + a mod q : x in other}.
  void or_shifted(const ResidueSet& other, u64 a);

  ResidueSet& operator|=(const ResidueSet& other);
  ResidueSet& operator&=(const ResidueSet& other);
  bool operator==(const ResidueSet& other) const;
  bool is_subset_of(const ResidueSet& other) const;

 private:
  void check_same_modulus(const ResidueSet& other) const;
  void clear_tail();

  FactoredModulus modulus_;
  std::vector<u64> words_;
};

}  // namespace waring
