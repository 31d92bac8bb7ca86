#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace juntalab {

/// Set of 1-based indices drawn from a universe of at most 256 elements.
/// Used both for qubit sets (subsets of [n]) and partition-part subsets
/// (subsets of [l]). Value type, cheap to copy and compare.
class IndexSet {
 public:
  static constexpr int kMaxUniverse = 256;

  IndexSet() = default;

  IndexSet(std::initializer_list<int> elems) {
    for (int e : elems) insert(e);
  }

  explicit IndexSet(const std::vector<int>& elems) {
    for (int e : elems) insert(e);
  }

  /// The full set {1, ..., universe}.
  static IndexSet full(int universe) {
    check_range(universe == 0 ? 1 : universe);
    IndexSet s;
    for (int i = 1; i <= universe; ++i) s.insert(i);
    return s;
  }

  void insert(int i) {
    check_range(i);
    words_[word(i)] |= bit(i);
  }

  void erase(int i) {
    check_range(i);
    words_[word(i)] &= ~bit(i);
  }

  bool contains(int i) const {
    if (i < 1 || i > kMaxUniverse) return false;
    return (words_[word(i)] & bit(i)) != 0;
  }

  int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  bool intersects(const IndexSet& other) const {
    for (int i = 0; i < 4; ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  bool subset_of(const IndexSet& other) const {
    for (int i = 0; i < 4; ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  /// Complement within {1, ..., universe}.
  IndexSet complement(int universe) const {
    IndexSet out = full(universe);
    for (int i = 0; i < 4; ++i) out.words_[i] &= ~words_[i];
    return out;
  }

  IndexSet& operator|=(const IndexSet& o) {
    for (int i = 0; i < 4; ++i) words_[i] |= o.words_[i];
    return *this;
  }

  IndexSet& operator&=(const IndexSet& o) {
    for (int i = 0; i < 4; ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.words_ == b.words_;
  }
  friend bool operator!=(const IndexSet& a, const IndexSet& b) {
    return !(a == b);
  }

  /// Elements in ascending order (1-based).
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int w = 0; w < 4; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        int b = std::countr_zero(bits);
        out.push_back(w * 64 + b + 1);
        bits &= bits - 1;
      }
    }
    return out;
  }

  int max_element() const {
    for (int w = 3; w >= 0; --w) {
      if (words_[w] != 0) return w * 64 + 63 - std::countl_zero(words_[w]) + 1;
    }
    return 0;
  }

  /// Bitmask over the first 64 elements: bit (i-1) set iff i is present.
  /// Precondition: no element exceeds 64.
  std::uint64_t mask64() const {
    if (words_[1] != 0 || words_[2] != 0 || words_[3] != 0)
      throw std::logic_error("IndexSet::mask64: element above 64 present");
    return words_[0];
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    s += "}";
    return s;
  }

 private:
  static void check_range(int i) {
    if (i < 1 || i > kMaxUniverse)
      throw std::invalid_argument("IndexSet: index " + std::to_string(i) +
                                  " outside [1, " +
                                  std::to_string(kMaxUniverse) + "]");
  }
  static int word(int i) { return (i - 1) / 64; }
  static std::uint64_t bit(int i) { return std::uint64_t{1} << ((i - 1) % 64); }

  std::array<std::uint64_t, 4> words_{};
};

/// Enumerates all size-r subsets of {1, ..., universe} in lexicographic
/// order of their sorted element sequences.
class CombinationIterator {
 public:
  CombinationIterator(int universe, int r) : universe_(universe), r_(r) {
    if (r < 0 || r > universe)
      throw std::invalid_argument("CombinationIterator: r outside [0, universe]");
    current_.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) current_[static_cast<std::size_t>(i)] = i + 1;
    done_ = false;
  }

  bool done() const { return done_; }

  const std::vector<int>& current() const { return current_; }

  IndexSet current_set() const { return IndexSet(current_); }

  void advance() {
    if (done_) return;
    int i = r_ - 1;
    while (i >= 0 && current_[static_cast<std::size_t>(i)] == universe_ - (r_ - 1 - i)) --i;
    if (i < 0) {
      done_ = true;
      return;
    }
    ++current_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r_; ++j)
      current_[static_cast<std::size_t>(j)] = current_[static_cast<std::size_t>(j - 1)] + 1;
  }

 private:
  int universe_;
  int r_;
  std::vector<int> current_;
  bool done_ = true;
};

}  // namespace juntalab
