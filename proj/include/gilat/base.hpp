#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gilat {

// Desk-scale capacity: subsets of vertices fit in one machine word,
// subsets of colors in one byte.
inline constexpr int kMaxRank = 8;
inline constexpr int kMaxVertices = 64;

/// Malformed input: unresolved ids, violated preconditions, bad documents.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A configured capacity bound was exceeded; results are never truncated.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An oracle could not decide (e.g. evaluation box too small).
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Subset of the color set [k], bit i <-> color axis i (0-based).
using FMask = uint32_t;

inline int popcount(uint64_t x) { return __builtin_popcountll(x); }

/// Subset of the vertex set of a graph, as a bit mask over the declared
/// vertex order.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(uint64_t bits) : bits_(bits) {}

  static VertexSet full(int n) {
    return VertexSet(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
  }
  static VertexSet single(int v) { return VertexSet(uint64_t{1} << v); }

  uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int count() const { return popcount(bits_); }
  bool contains(int v) const { return (bits_ >> v) & 1; }

  VertexSet& add(int v) {
    bits_ |= uint64_t{1} << v;
    return *this;
  }
  VertexSet& remove(int v) {
    bits_ &= ~(uint64_t{1} << v);
    return *this;
  }

  /// Least element, -1 when empty.
  int first() const { return bits_ == 0 ? -1 : __builtin_ctzll(bits_); }

  bool subset_of(const VertexSet& o) const { return (bits_ & ~o.bits_) == 0; }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return a.bits_ != b.bits_; }
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.bits_ < b.bits_; }

  template <class Fn>
  void for_each(Fn fn) const {
    for (uint64_t b = bits_; b != 0; b &= b - 1) fn(__builtin_ctzll(b));
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

 private:
  uint64_t bits_ = 0;
};

/// Element of Z_+^k: the degree of a path, componentwise lattice order.
class Degree {
 public:
  Degree() = default;
  explicit Degree(int rank) : rank_(rank), entries_(rank, 0) {
    if (rank < 0 || rank > kMaxRank) throw InputError("rank out of range");
  }
  static Degree zero(int rank) { return Degree(rank); }
  static Degree unit(int rank, int color) {
    Degree d(rank);
    d.entries_[color] = 1;
    return d;
  }

  int rank() const { return rank_; }
  int operator[](int color) const { return entries_[color]; }
  int& operator[](int color) { return entries_[color]; }

  int total() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  FMask support() const {
    FMask m = 0;
    for (int i = 0; i < rank_; ++i)
      if (entries_[i] > 0) m |= FMask{1} << i;
    return m;
  }

  /// supp(n) disjoint from F.
  bool perp(FMask f) const { return (support() & f) == 0; }

  bool is_zero() const { return total() == 0; }

  friend Degree operator+(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank_; ++i) r.entries_[i] += b.entries_[i];
    return r;
  }
  friend Degree operator-(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank_; ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }
  friend bool operator<=(const Degree& a, const Degree& b) {
    for (int i = 0; i < a.rank_; ++i)
      if (a.entries_[i] > b.entries_[i]) return false;
    return true;
  }
  friend bool operator==(const Degree& a, const Degree& b) { return a.entries_ == b.entries_; }
  friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }

  static Degree join(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank_; ++i) r.entries_[i] = std::max(a.entries_[i], b.entries_[i]);
    return r;
  }
  static Degree meet(const Degree& a, const Degree& b) {
    Degree r = a;
    for (int i = 0; i < r.rank_; ++i) r.entries_[i] = std::min(a.entries_[i], b.entries_[i]);
    return r;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(entries_[i]);
    }
    return s + ")";
  }

 private:
  int rank_ = 0;
  std::vector<int> entries_;
};

/// All subsets of [k] as masks, 0 .. 2^k-1.
inline int num_fmasks(int rank) { return 1 << rank; }

/// Colors of F ascending (0-based axes).
inline std::vector<int> fmask_colors(FMask f) {
  std::vector<int> out;
  for (int i = 0; i < kMaxRank; ++i)
    if (f & (FMask{1} << i)) out.push_back(i);
  return out;
}

/// Proper nonempty rendering "{1,3}" with 1-based colors; "{}" for the
/// empty set.
inline std::string fmask_to_string(FMask f) {
  std::string s = "{";
  bool first = true;
  for (int c : fmask_colors(f)) {
    if (!first) s += ",";
    s += std::to_string(c + 1);
    first = false;
  }
  return s + "}";
}

/// Strict supersets of f inside [rank].
inline std::vector<FMask> strict_supersets(FMask f, int rank) {
  std::vector<FMask> out;
  FMask all = (FMask{1} << rank) - 1;
  for (FMask d = 0; d <= all; ++d)
    if ((d & f) == f && d != f) out.push_back(d);
  return out;
}

/// All subsets of f (including f and 0), ascending by mask.
inline std::vector<FMask> subsets_of(FMask f) {
  std::vector<FMask> out;
  FMask s = f;
  while (true) {
    out.push_back(s);
    if (s == 0) break;
    s = (s - 1) & f;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gilat
