#include "valueplan/decimal.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace valueplan {

std::optional<Decimal> Decimal::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }

  std::string digits;
  int exponent = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    int exp_value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exp_value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (exp_value > 64 || exp_value < -64) return std::nullopt;
    exponent += exp_value;
    pos = text.size();
  }
  if (pos != text.size()) return std::nullopt;

  // Fold the exponent into the digit string so that digits * 10^-6 is the value.
  int shift = exponent + kFractionDigits;
  while (shift < 0) {
    if (digits.empty() || digits.back() != '0') return std::nullopt;
    digits.pop_back();
    ++shift;
  }
  digits.append(static_cast<std::size_t>(shift), '0');

  std::size_t first_nonzero = digits.find_first_not_of('0');
  if (first_nonzero == std::string::npos) return Decimal{};
  digits.erase(0, first_nonzero);
  // kMaxWhole * kScale has 16 digits.
  if (digits.size() > 16) return std::nullopt;
  std::int64_t scaled = 0;
  for (char c : digits) scaled = scaled * 10 + (c - '0');
  if (scaled >= kMaxWhole * kScale) return std::nullopt;
  return from_units(negative ? -scaled : scaled);
}

double Decimal::to_double() const {
  return static_cast<double>(scaled_) / static_cast<double>(kScale);
}

std::string Decimal::to_string() const {
  std::int64_t magnitude = scaled_ < 0 ? -scaled_ : scaled_;
  std::string out = scaled_ < 0 ? "-" : "";
  out += std::to_string(magnitude / kScale);
  std::int64_t frac = magnitude % kScale;
  if (frac != 0) {
    std::string frac_digits = std::to_string(frac);
    frac_digits.insert(0, static_cast<std::size_t>(kFractionDigits) - frac_digits.size(), '0');
    while (frac_digits.back() == '0') frac_digits.pop_back();
    out += '.';
    out += frac_digits;
  }
  return out;
}

}  // namespace valueplan

namespace valueplan {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

}  // namespace valueplan
