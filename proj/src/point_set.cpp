#include "resolab/point_set.hpp"

#include <string>

#include "resolab/errors.hpp"

namespace resolab {

PointSet::PointSet(std::size_t n, std::initializer_list<Point> points)
    : PointSet(n, std::span<const Point>(points.begin(), points.size())) {}

PointSet::PointSet(std::size_t n, std::span<const Point> points)
    : PointSet(n) {
  for (Point p : points) insert(p);
}

PointSet PointSet::full(std::size_t n) {
  PointSet s(n);
  for (Word& w : s.words_) w = ~Word{0};
  s.trim();
  return s;
}

PointSet PointSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > kWordBits) throw PreconditionError("from_mask: universe exceeds 64");
  PointSet s(n);
  if (n > 0) s.words_[0] = mask;
  s.trim();
  return s;
}

std::size_t PointSet::count() const {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool PointSet::count_at_least(std::size_t k) const {
  std::size_t c = 0;
  for (Word w : words_) {
    if (c >= k) return true;
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c >= k;
}

bool PointSet::empty() const {
  for (Word w : words_) {
    if (w != 0) return false;
  }
  return true;
}

void PointSet::insert(Point p) {
  if (p >= n_) {
    throw DomainError("point " + std::to_string(p) + " outside ground set of " +
                      std::to_string(n_));
  }
  words_[p / kWordBits] |= Word{1} << (p % kWordBits);
}

void PointSet::erase(Point p) {
  if (p >= n_) return;
  words_[p / kWordBits] &= ~(Word{1} << (p % kWordBits));
}

void PointSet::check_universe(const PointSet& other) const {
  if (n_ != other.n_) {
    throw DomainError("point sets over different ground sets (" +
                      std::to_string(n_) + " vs " + std::to_string(other.n_) +
                      ")");
  }
}

bool PointSet::is_subset_of(const PointSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool PointSet::intersects(const PointSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

std::size_t PointSet::intersection_count(const PointSet& other) const {
  check_universe(other);
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    c += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  }
  return c;
}

Point PointSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return static_cast<Point>(w * kWordBits +
                                static_cast<std::size_t>(std::countr_zero(words_[w])));
    }
  }
  return static_cast<Point>(n_);
}

PointSet PointSet::complement() const {
  PointSet s(*this);
  for (Word& w : s.words_) w = ~w;
  s.trim();
  return s;
}

PointSet& PointSet::operator&=(const PointSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

void PointSet::assign_intersection(const PointSet& a, const PointSet& b) {
  a.check_universe(b);
  if (n_ != a.n_) {
    n_ = a.n_;
    words_.assign(a.words_.size(), 0);
  }
  const Word* x = a.words_.data();
  const Word* y = b.words_.data();
  Word* out = words_.data();
  for (std::size_t w = 0; w < words_.size(); ++w) out[w] = x[w] & y[w];
}

PointSet& PointSet::operator|=(const PointSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::vector<Point> PointSet::to_vector() const {
  std::vector<Point> out;
  out.reserve(count());
  for_each([&](Point p) { out.push_back(p); });
  return out;
}

std::uint64_t PointSet::to_mask() const {
  if (n_ > kWordBits) throw PreconditionError("to_mask: universe exceeds 64");
  return words_.empty() ? 0 : words_[0];
}

void PointSet::trim() {
  const std::size_t tail = n_ % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= (Word{1} << tail) - 1;
}

PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

}  // namespace resolab
