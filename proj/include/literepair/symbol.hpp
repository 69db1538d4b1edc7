#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace literepair {

// Interned, case-sensitive identifier. Equality and hashing are pointer
// based; ordering is lexicographic on the spelling so that every container
// keyed by symbols iterates in a reproducible order.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view spelling);

  const std::string& str() const { return *text_; }
  bool empty() const { return text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return a.text_->compare(*b.text_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  std::size_t hash() const { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_;
};

inline std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.str(); }

// [A-Za-z_][A-Za-z0-9_]*
bool is_identifier(std::string_view text);

}  // namespace literepair

template <>
struct std::hash<literepair::Symbol> {
  std::size_t operator()(literepair::Symbol s) const noexcept { return s.hash(); }
};
