#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tisim {

using NodeId = std::int32_t;
using AgentId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr AgentId kNoAgent = -1;

// Ordered above every finite hop count so that argmin over distances is total.
inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Small sorted-vector set; node and agent sets here rarely exceed a few dozen
// elements.
template <typename T>
class FlatSet {
 public:
  FlatSet() = default;
  FlatSet(std::initializer_list<T> init) : items_(init) { normalize(); }
  explicit FlatSet(std::vector<T> items) : items_(std::move(items)) { normalize(); }

  bool contains(T v) const { return std::binary_search(items_.begin(), items_.end(), v); }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  void clear() { items_.clear(); }

  bool insert(T v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it != items_.end() && *it == v) return false;
    items_.insert(it, v);
    return true;
  }
  bool erase(T v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it == items_.end() || *it != v) return false;
    items_.erase(it);
    return true;
  }
  void insert_all(const FlatSet& other) {
    std::vector<T> merged;
    merged.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(merged));
    items_ = std::move(merged);
  }
  void erase_all(const FlatSet& other) {
    std::vector<T> kept;
    kept.reserve(items_.size());
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(kept));
    items_ = std::move(kept);
  }
  bool intersects(const FlatSet& other) const {
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
      if (*a < *b) ++a;
      else if (*b < *a) ++b;
      else return true;
    }
    return false;
  }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<T>& items() const { return items_; }

  bool operator==(const FlatSet&) const = default;

 private:
  void normalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  std::vector<T> items_;
};

using NodeSet = FlatSet<NodeId>;
using AgentSet = FlatSet<AgentId>;

}  // namespace tisim
