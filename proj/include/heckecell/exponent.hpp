#pragma once

// Elements of Gamma = Z^k and coordinate-priority lexicographic orders on it.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "heckecell/error.hpp"

namespace heckecell {

inline constexpr int kMaxRank = 4;

class ExponentVec {
 public:
  ExponentVec() = default;
  explicit ExponentVec(int rank) : rank_(static_cast<std::uint8_t>(check_rank(rank))) {}
  ExponentVec(std::initializer_list<int> coords) : rank_(static_cast<std::uint8_t>(check_rank(coords.size()))) {
    std::copy(coords.begin(), coords.end(), v_.begin());
  }
  explicit ExponentVec(const std::vector<int>& coords)
      : rank_(static_cast<std::uint8_t>(check_rank(coords.size()))) {
    std::copy(coords.begin(), coords.end(), v_.begin());
  }

  static ExponentVec unit(int rank, int i) {
    ExponentVec e(rank);
    e.v_[i] = 1;
    return e;
  }

  int rank() const { return rank_; }
  int operator[](int i) const { return v_[i]; }
  int& operator[](int i) { return v_[i]; }
  bool is_zero() const {
    for (int i = 0; i < rank_; ++i)
      if (v_[i] != 0) return false;
    return true;
  }
  std::vector<int> to_vector() const { return {v_.begin(), v_.begin() + rank_}; }

  ExponentVec& operator+=(const ExponentVec& o) {
    for (int i = 0; i < rank_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  ExponentVec& operator-=(const ExponentVec& o) {
    for (int i = 0; i < rank_; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  ExponentVec operator-() const {
    ExponentVec r = *this;
    for (int i = 0; i < rank_; ++i) r.v_[i] = -r.v_[i];
    return r;
  }
  friend ExponentVec operator+(ExponentVec a, const ExponentVec& b) { return a += b; }
  friend ExponentVec operator-(ExponentVec a, const ExponentVec& b) { return a -= b; }
  friend ExponentVec operator*(int k, ExponentVec a) {
    for (int i = 0; i < a.rank_; ++i) a.v_[i] *= k;
    return a;
  }

  // Storage order: plain lexicographic on coordinates. Unrelated to any MonomialOrder.
  friend bool operator==(const ExponentVec& a, const ExponentVec& b) = default;
  friend std::strong_ordering operator<=>(const ExponentVec& a, const ExponentVec& b) {
    for (int i = 0; i < kMaxRank; ++i)
      if (auto c = a.v_[i] <=> b.v_[i]; c != 0) return c;
    return a.rank_ <=> b.rank_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(v_[i]);
    }
    return s + "]";
  }

 private:
  static int check_rank(std::size_t r) {
    if (r < 1 || r > static_cast<std::size_t>(kMaxRank))
      throw InputError("rank of Gamma must be between 1 and " + std::to_string(kMaxRank));
    return static_cast<int>(r);
  }

  std::array<std::int32_t, kMaxRank> v_{};
  std::uint8_t rank_ = 0;
};

class MonomialOrder {
 public:
  MonomialOrder() = default;
  // priority lists 0-based coordinates, highest priority first.
  explicit MonomialOrder(std::vector<int> priority) : priority_(std::move(priority)) {
    std::vector<int> sorted = priority_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
      if (sorted[i] != i) throw InputError("monomial order priority is not a permutation");
    if (priority_.empty() || priority_.size() > static_cast<std::size_t>(kMaxRank))
      throw InputError("monomial order has invalid rank");
  }

  static MonomialOrder natural(int rank) {
    std::vector<int> p(rank);
    for (int i = 0; i < rank; ++i) p[i] = i;
    return MonomialOrder(p);
  }

  int rank() const { return static_cast<int>(priority_.size()); }
  const std::vector<int>& priority() const { return priority_; }

  std::strong_ordering compare(const ExponentVec& a, const ExponentVec& b) const {
    for (int i : priority_)
      if (auto c = a[i] <=> b[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
  bool less(const ExponentVec& a, const ExponentVec& b) const { return compare(a, b) < 0; }
  int sign(const ExponentVec& g) const {
    for (int i : priority_)
      if (g[i] != 0) return g[i] > 0 ? 1 : -1;
    return 0;
  }
  bool positive(const ExponentVec& g) const { return sign(g) > 0; }
  bool nonnegative(const ExponentVec& g) const { return sign(g) >= 0; }
  const ExponentVec& min(const ExponentVec& a, const ExponentVec& b) const { return less(b, a) ? b : a; }
  const ExponentVec& max(const ExponentVec& a, const ExponentVec& b) const { return less(a, b) ? b : a; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<int> priority_;
};

}  // namespace heckecell
