#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sharegraph {

// Interned identifier. Equality and hashing are O(1); the ordering is
// interning order, which is stable for a process but not across processes,
// so anything user-visible sorts by name().
class Symbol {
 public:
  Symbol() = default;

  static Symbol intern(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

 private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

}  // namespace sharegraph

template <>
struct std::hash<sharegraph::Symbol> {
  std::size_t operator()(sharegraph::Symbol s) const noexcept { return s.id(); }
};
