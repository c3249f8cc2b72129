#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace emknot {

/// A number in (1/2)Z, stored as twice its value so that spin labels
/// compare and index exactly.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInteger from_int(int value) { return from_twice(2 * value); }

  /// Parses "3/2", "-1/2", "1", "0". Any denominator other than 1 or 2 is
  /// rejected, as are fractions that do not reduce to a half-integer.
  static HalfInteger parse(std::string_view text);

  /// Accepts only values exactly representable as k/2.
  static HalfInteger from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// Exact fraction string: "3/2", "-1/2", "0", "2".
  std::string to_string() const;

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) {
    twice_ += o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  int twice_ = 0;
};

namespace literals {
constexpr HalfInteger operator""_h(unsigned long long twice) {
  return HalfInteger::from_twice(static_cast<int>(twice));
}
}  // namespace literals

constexpr HalfInteger kHalf = HalfInteger::from_twice(1);

/// Integer difference a - b, valid when a - b is integral.
constexpr int integer_difference(HalfInteger a, HalfInteger b) { return (a.twice() - b.twice()) / 2; }

}  // namespace emknot
