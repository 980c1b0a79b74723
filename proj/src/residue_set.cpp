#include "waring/residue_set.hpp"

#include <algorithm>

namespace waring {

ResidueSet::ResidueSet(FactoredModulus q) : modulus_(std::move(q)) {
  if (modulus_.value() > kMaxModulus) {
    throw RangeError("residue sets are limited to moduli <= 2^26, got " +
                     std::to_string(modulus_.value()));
  }
  words_.assign((modulus_.value() + 63) / 64, 0);
}

ResidueSet ResidueSet::from_members(const FactoredModulus& q, std::span<const u64> members) {
  ResidueSet s(q);
  for (u64 x : members) s.insert(x % q.value());
  return s;
}

ResidueSet ResidueSet::from_members(u64 q, std::initializer_list<u64> members) {
  return from_members(FactoredModulus(q), std::span<const u64>(members.begin(), members.size()));
}

ResidueSet ResidueSet::full(const FactoredModulus& q) {
  ResidueSet s(q);
  std::fill(s.words_.begin(), s.words_.end(), ~u64{0});
  s.clear_tail();
  return s;
}

u64 ResidueSet::size() const {
  u64 n = 0;
  for (u64 w : words_) n += std::popcount(w);
  return n;
}

bool ResidueSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](u64 w) { return w == 0; });
}

std::vector<u64> ResidueSet::members() const {
  std::vector<u64> out;
  for_each([&](u64 x) { out.push_back(x); });
  return out;
}

u64 ResidueSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
  }
  return modulus();
}

ResidueSet ResidueSet::shifted(u64 a) const {
  ResidueSet out(modulus_);
  out.or_shifted(*this, a);
  return out;
}

namespace {

// dst[bit dst_pos ...] |= src[bit src_pos ...] for `len` bits.
void or_bit_range(std::vector<u64>& dst, u64 dst_pos, const std::vector<u64>& src, u64 src_pos,
                  u64 len) {
  while (len > 0) {
    const u64 sw = src_pos >> 6, so = src_pos & 63;
    const u64 dw = dst_pos >> 6, doff = dst_pos & 63;
    // Gather up to 64 bits from src starting at src_pos.
    u64 chunk = src[sw] >> so;
    if (so && sw + 1 < src.size()) chunk |= src[sw + 1] << (64 - so);
    const u64 take = std::min<u64>({len, 64 - doff});
    if (take < 64) chunk &= (u64{1} << take) - 1;
    dst[dw] |= chunk << doff;
    dst_pos += take;
    src_pos += take;
    len -= take;
  }
}

}  // namespace

void ResidueSet::or_shifted(const ResidueSet& other, u64 a) {
  check_same_modulus(other);
  const u64 q = modulus();
  a %= q;
  // x in [0, q - a) maps to x + a; x in [q - a, q) maps to x + a - q.
  or_bit_range(words_, a, other.words_, 0, q - a);
  if (a) or_bit_range(words_, 0, other.words_, q - a, a);
}

ResidueSet& ResidueSet::operator|=(const ResidueSet& other) {
  check_same_modulus(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ResidueSet& ResidueSet::operator&=(const ResidueSet& other) {
  check_same_modulus(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool ResidueSet::operator==(const ResidueSet& other) const {
  return modulus() == other.modulus() && words_ == other.words_;
}

bool ResidueSet::is_subset_of(const ResidueSet& other) const {
  check_same_modulus(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

void ResidueSet::check_same_modulus(const ResidueSet& other) const {
  require(modulus() == other.modulus(), "residue sets have different moduli (" +
                                            std::to_string(modulus()) + " vs " +
                                            std::to_string(other.modulus()) + ")");
}

void ResidueSet::clear_tail() {
  const u64 rem = modulus() & 63;
  if (rem && !words_.empty()) words_.back() &= (u64{1} << rem) - 1;
}

}  // namespace waring
