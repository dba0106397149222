#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace abduct {

/// One attribute observation: false, true, or unobserved.
enum class TriValue : std::uint8_t { False = 0, True = 1, Unobserved = 2 };

constexpr char to_char(TriValue v) {
  switch (v) {
    case TriValue::False: return '0';
    case TriValue::True: return '1';
    default: return '*';
  }
}

// '?' is accepted as an input alias for '*'.
constexpr std::optional<TriValue> trivalue_from_char(char c) {
  switch (c) {
    case '0': return TriValue::False;
    case '1': return TriValue::True;
    case '*':
    case '?': return TriValue::Unobserved;
    default: return std::nullopt;
  }
}

/// A partial assignment to n attributes; one row of a dataset.
struct PartialExample {
  std::vector<TriValue> values;

  PartialExample() = default;
  explicit PartialExample(std::size_t n, TriValue fill = TriValue::Unobserved)
      : values(n, fill) {}
  explicit PartialExample(std::vector<TriValue> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  TriValue operator[](std::size_t i) const { return values[i]; }
  TriValue& operator[](std::size_t i) { return values[i]; }
  bool observed(std::size_t i) const { return values[i] != TriValue::Unobserved; }

  bool operator==(const PartialExample&) const = default;

  static PartialExample from_string(std::string_view s) {
    PartialExample out;
    out.values.reserve(s.size());
    for (char c : s) {
      auto v = trivalue_from_char(c);
      if (!v) throw std::invalid_argument(std::string("illegal value character '") + c + "'");
      out.values.push_back(*v);
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(values.size());
    for (TriValue v : values) s.push_back(to_char(v));
    return s;
  }
};

}  // namespace abduct
