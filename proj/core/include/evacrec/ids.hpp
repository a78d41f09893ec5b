#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace evacrec {

// Identifier of a stored entity. Unique within its entity kind; ordering is
// plain byte-wise string ordering and is what every deterministic sort uses.
class EntityId {
 public:
  EntityId() = default;
  explicit EntityId(std::string value) : value_(std::move(value)) {}
  explicit EntityId(std::string_view value) : value_(value) {}
  explicit EntityId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend std::strong_ordering operator<=>(const EntityId& a,
                                          const EntityId& b) noexcept {
    return a.value_.compare(b.value_) <=> 0;
  }
  friend std::ostream& operator<<(std::ostream& os, const EntityId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

}  // namespace evacrec

template <>
struct std::hash<evacrec::EntityId> {
  std::size_t operator()(const evacrec::EntityId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
