#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace parsched {

/// Dense set of node indices backed by 64-bit words. The poset queries
/// (pred/comp/minimals) are row unions and intersections over these.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int n) : n_(n), w_(words(n), 0) {}

  int universe() const { return n_; }

  void set(int i) { w_[static_cast<std::size_t>(i >> 6)] |= bit(i); }
  void reset(int i) { w_[static_cast<std::size_t>(i >> 6)] &= ~bit(i); }
  bool test(int i) const { return (w_[static_cast<std::size_t>(i >> 6)] & bit(i)) != 0; }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  NodeSet& subtract(const NodeSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }

  bool operator==(const NodeSet& o) const { return w_ == o.w_; }

  int count() const {
    int c = 0;
    for (std::uint64_t x : w_) c += std::popcount(x);
    return c;
  }
  bool any() const {
    for (std::uint64_t x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const NodeSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const NodeSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  /// True when the intersection with `o` is exactly the single node i.
  bool intersection_is_single(const NodeSet& o, int i) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t x = w_[wi] & o.w_[wi];
      if (wi == static_cast<std::size_t>(i >> 6)) {
        if (x != bit(i)) return false;
      } else if (x) {
        return false;
      }
    }
    return true;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t x = w_[wi];
      while (x) {
        int b = std::countr_zero(x);
        fn(static_cast<int>(wi * 64) + b);
        x &= x - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

 private:
  static std::size_t words(int n) { return static_cast<std::size_t>((n + 63) / 64); }
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i & 63); }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace parsched
