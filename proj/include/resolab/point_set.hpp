#ifndef RESOLAB_POINT_SET_HPP
#define RESOLAB_POINT_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace resolab {

using Point = std::uint32_t;

// Subset of the ground set {0, ..., n-1}, stored as a packed bitset.
// Bits past n in the last word are always zero.
class PointSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PointSet() = default;
  explicit PointSet(std::size_t n) : n_(n), words_(word_count(n), 0) {}
  PointSet(std::size_t n, std::initializer_list<Point> points);
  PointSet(std::size_t n, std::span<const Point> points);

  static PointSet full(std::size_t n);
  // Low n bits of `mask`; n <= 64.
  static PointSet from_mask(std::size_t n, std::uint64_t mask);

  static constexpr std::size_t word_count(std::size_t n) {
    return (n + kWordBits - 1) / kWordBits;
  }

  std::size_t universe() const { return n_; }
  std::size_t count() const;
  // count() >= k, stopping as soon as k members are seen.
  bool count_at_least(std::size_t k) const;
  bool empty() const;
  bool contains(Point p) const {
    return p < n_ && ((words_[p / kWordBits] >> (p % kWordBits)) & 1U) != 0;
  }

  void insert(Point p);
  void erase(Point p);

  bool is_subset_of(const PointSet& other) const;
  bool intersects(const PointSet& other) const;
  std::size_t intersection_count(const PointSet& other) const;
  // Least member, or universe() when empty.
  Point first() const;

  PointSet complement() const;
  PointSet& operator&=(const PointSet& other);
  // *this = a & b without the intermediate copy.
  void assign_intersection(const PointSet& a, const PointSet& b);
  PointSet& operator|=(const PointSet& other);
  PointSet& operator-=(const PointSet& other);

  std::vector<Point> to_vector() const;
  // Only valid for universe() <= 64.
  std::uint64_t to_mask() const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        fn(static_cast<Point>(w * kWordBits + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  void check_universe(const PointSet& other) const;
  void trim();

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

PointSet operator&(PointSet a, const PointSet& b);
PointSet operator|(PointSet a, const PointSet& b);
PointSet operator-(PointSet a, const PointSet& b);

}  // namespace resolab

#endif  // RESOLAB_POINT_SET_HPP
