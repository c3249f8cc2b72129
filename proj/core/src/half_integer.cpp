#include "emknot/half_integer.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace emknot {
namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int value = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("not a half-integer: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return from_int(parse_int(s, text));

  const int num = parse_int(trim(s.substr(0, slash)), text);
  const int den = parse_int(trim(s.substr(slash + 1)), text);
  if (den == 1) return from_int(num);
  if (den == 2) return from_twice(num);
  if (den > 0 && (2 * num) % den == 0) return from_twice(2 * num / den);
  throw std::invalid_argument("not a half-integer: '" + std::string(text) + "'");
}

HalfInteger HalfInteger::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9) {
    throw std::invalid_argument("not a half-integer: " + std::to_string(value));
  }
  return from_twice(static_cast<int>(rounded));
}

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace emknot
