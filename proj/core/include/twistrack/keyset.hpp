#ifndef TWISTRACK_KEYSET_HPP
#define TWISTRACK_KEYSET_HPP

#include <cstdint>
#include <vector>

#include "twistrack/mat.hpp"

namespace twr {

// Open-addressing set of Key128 (linear probing, power-of-two capacity).
// Used for visited sets in closure/orbit BFS; iteration order is never used.
class KeySet {
 public:
  explicit KeySet(size_t expected = 64) { rehash(round_up(expected * 2)); }

  bool insert(const Key128& k) {  // returns true if newly inserted
    if ((size_ + 1) * 10 >= cap_ * 7) rehash(cap_ * 2);
    size_t i = slot(k);
    while (used_[i]) {
      if (keys_[i] == k) return false;
      i = (i + 1) & (cap_ - 1);
    }
    used_[i] = 1;
    keys_[i] = k;
    ++size_;
    return true;
  }

  bool contains(const Key128& k) const {
    size_t i = slot(k);
    while (used_[i]) {
      if (keys_[i] == k) return true;
      i = (i + 1) & (cap_ - 1);
    }
    return false;
  }

  size_t size() const { return size_; }

 private:
  static size_t round_up(size_t v) {
    size_t c = 64;
    while (c < v) c <<= 1;
    return c;
  }
  size_t slot(const Key128& k) const { return Key128Hash{}(k) & (cap_ - 1); }
  void rehash(size_t ncap) {
    std::vector<Key128> ok = std::move(keys_);
    std::vector<char> ou = std::move(used_);
    cap_ = ncap;
    keys_.assign(cap_, Key128{});
    used_.assign(cap_, 0);
    size_ = 0;
    for (size_t i = 0; i < ou.size(); ++i)
      if (ou[i]) insert(ok[i]);
  }

  size_t cap_ = 0, size_ = 0;
  std::vector<Key128> keys_;
  std::vector<char> used_;
};

// Key -> uint32 map with the same layout (orbit ids etc.).
class KeyMap {
 public:
  static constexpr std::uint32_t kAbsent = 0xFFFFFFFFu;
  explicit KeyMap(size_t expected = 64) { rehash(round_up(expected * 2)); }

  // inserts if absent; returns existing or new value
  std::uint32_t insert_or_get(const Key128& k, std::uint32_t v) {
    if ((size_ + 1) * 10 >= cap_ * 7) rehash(cap_ * 2);
    size_t i = slot(k);
    while (used_[i]) {
      if (keys_[i] == k) return vals_[i];
      i = (i + 1) & (cap_ - 1);
    }
    used_[i] = 1;
    keys_[i] = k;
    vals_[i] = v;
    ++size_;
    return v;
  }

  std::uint32_t get(const Key128& k) const {
    size_t i = slot(k);
    while (used_[i]) {
      if (keys_[i] == k) return vals_[i];
      i = (i + 1) & (cap_ - 1);
    }
    return kAbsent;
  }

  size_t size() const { return size_; }

 private:
  static size_t round_up(size_t v) {
    size_t c = 64;
    while (c < v) c <<= 1;
    return c;
  }
  size_t slot(const Key128& k) const { return Key128Hash{}(k) & (cap_ - 1); }
  void rehash(size_t ncap) {
    std::vector<Key128> ok = std::move(keys_);
    std::vector<std::uint32_t> ov = std::move(vals_);
    std::vector<char> ou = std::move(used_);
    cap_ = ncap;
    keys_.assign(cap_, Key128{});
    vals_.assign(cap_, 0);
    used_.assign(cap_, 0);
    size_ = 0;
    for (size_t i = 0; i < ou.size(); ++i)
      if (ou[i]) insert_or_get(ok[i], ov[i]);
  }

  size_t cap_ = 0, size_ = 0;
  std::vector<Key128> keys_;
  std::vector<std::uint32_t> vals_;
  std::vector<char> used_;
};

}  // namespace twr

#endif
