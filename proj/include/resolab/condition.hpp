#ifndef RESOLAB_CONDITION_HPP
#define RESOLAB_CONDITION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace resolab {

// A finite partial function from partition labels to {0, 1}. Bindings are kept
// sorted by label so equal conditions compare equal regardless of build order.
class Condition {
 public:
  using Binding = std::pair<std::string, std::uint8_t>;

  Condition() = default;
  // Throws PreconditionError on duplicate labels or values other than 0/1.
  Condition(std::initializer_list<std::pair<std::string, int>> bindings);
  static Condition from_bindings(std::vector<Binding> bindings);

  std::size_t depth() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  std::optional<int> get(const std::string& label) const;
  bool binds(const std::string& label) const { return get(label).has_value(); }
  const std::vector<Binding>& bindings() const { return bindings_; }

  // True when every binding of *this also appears in `other`.
  bool is_sub_of(const Condition& other) const;

  std::string to_string() const;

  friend bool operator==(const Condition&, const Condition&) = default;
  friend auto operator<=>(const Condition&, const Condition&) = default;

 private:
  std::vector<Binding> bindings_;
};

// Adds one binding. Throws PreconditionError if `label` is already bound.
Condition extend(const Condition& cond, const std::string& label, int value);

// c1 ∪ c2 when they agree on every shared label, std::nullopt on a clash.
std::optional<Condition> compatible(const Condition& c1, const Condition& c2);

class PartitionFamily;
// As above, but both conditions must be over `family`; DomainError otherwise.
std::optional<Condition> compatible(const PartitionFamily& family,
                                    const Condition& c1, const Condition& c2);

}  // namespace resolab

#endif  // RESOLAB_CONDITION_HPP
