#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace valueplan {

/// Fixed-point decimal with six fractional digits.
///
/// Costs, budgets, expected values and value bounds live in this type so that
/// budget and bound checks never depend on binary rounding. Magnitudes are
/// limited to below one billion whole units, which keeps every representable
/// value exactly round-trippable through a binary64 shortest representation.
class Decimal {
 public:
  static constexpr int kFractionDigits = 6;
  static constexpr std::int64_t kScale = 1'000'000;
  static constexpr std::int64_t kMaxWhole = 1'000'000'000;

  constexpr Decimal() = default;

  static constexpr Decimal from_units(std::int64_t scaled) {
    Decimal d;
    d.scaled_ = scaled;
    return d;
  }
  static constexpr Decimal from_integer(std::int64_t whole) {
    return from_units(whole * kScale);
  }

  /// Parses a JSON-style number lexeme ("12", "-0.5", "1.25e2"). Returns
  /// nullopt when the text is malformed, needs more than six fractional
  /// digits, or is out of range.
  static std::optional<Decimal> parse(std::string_view text);

  constexpr std::int64_t scaled() const { return scaled_; }
  bool is_integer() const { return scaled_ % kScale == 0; }
  double to_double() const;
  /// Shortest exact decimal text, e.g. "5", "0.25", "-3.1".
  std::string to_string() const;

  constexpr auto operator<=>(const Decimal&) const = default;

  constexpr Decimal operator-() const { return from_units(-scaled_); }
  constexpr Decimal& operator+=(Decimal o) {
    scaled_ += o.scaled_;
    return *this;
  }
  constexpr Decimal& operator-=(Decimal o) {
    scaled_ -= o.scaled_;
    return *this;
  }
  friend constexpr Decimal operator+(Decimal a, Decimal b) { return a += b; }
  friend constexpr Decimal operator-(Decimal a, Decimal b) { return a -= b; }

 private:
  std::int64_t scaled_ = 0;
};

}  // namespace valueplan

namespace valueplan {

/// Shortest text that reads back to the same double ("0.1", "16", "-2.5e-07").
std::string format_number(double value);

}  // namespace valueplan
