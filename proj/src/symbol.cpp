#include "literepair/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace literepair {

namespace {

// Node-based, so element addresses stay valid for the process lifetime.
struct InternTable {
  std::mutex mutex;
  std::unordered_set<std::string> strings;
};

InternTable& table() {
  static auto* t = new InternTable();
  return *t;
}

const std::string* intern(std::string_view spelling) {
  InternTable& t = table();
  std::lock_guard lock(t.mutex);
  return &*t.strings.emplace(spelling).first;
}

}  // namespace

Symbol::Symbol() : text_(intern("")) {}

Symbol::Symbol(std::string_view spelling) : text_(intern(spelling)) {}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(text.front())) return false;
  for (char c : text) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

}  // namespace literepair
