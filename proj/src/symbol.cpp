#include "sharegraph/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace sharegraph {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names{""};
  std::unordered_map<std::string_view, std::uint32_t> ids;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end()) return Symbol(it->second);
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(name); it != t.ids.end()) return Symbol(it->second);
  const auto id = static_cast<std::uint32_t>(t.names.size());
  // deque never relocates existing elements, so the views stay valid
  t.names.emplace_back(name);
  t.ids.emplace(t.names.back(), id);
  return Symbol(id);
}

const std::string& Symbol::name() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names[id_];
}

}  // namespace sharegraph
