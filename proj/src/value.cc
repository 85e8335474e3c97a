// Copyright 2026 The Rulesel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rulesel/value.h"

#include <cstdlib>
#include <string>

namespace rulesel {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Compares two normalized non-negative magnitudes.
std::strong_ordering CompareMagnitude(const std::string& a_int,
                                      const std::string& a_frac,
                                      const std::string& b_int,
                                      const std::string& b_frac) {
  if (a_int.size() != b_int.size()) return a_int.size() <=> b_int.size();
  if (int c = a_int.compare(b_int); c != 0) return c <=> 0;
  // Fractions carry no trailing zeros, so plain lexicographic order is
  // numeric order.
  return a_frac.compare(b_frac) <=> 0;
}

}  // namespace

std::optional<Decimal> Decimal::Parse(std::string_view text) {
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  size_t int_begin = pos;
  while (pos < text.size() && IsDigit(text[pos])) ++pos;
  if (pos == int_begin) return std::nullopt;
  std::string_view int_part = text.substr(int_begin, pos - int_begin);
  std::string_view frac_part;
  if (pos < text.size()) {
    if (text[pos] != '.') return std::nullopt;
    ++pos;
    size_t frac_begin = pos;
    while (pos < text.size() && IsDigit(text[pos])) ++pos;
    if (pos == frac_begin || pos != text.size()) return std::nullopt;
    frac_part = text.substr(frac_begin);
  }

  Decimal d;
  size_t first_nonzero = int_part.find_first_not_of('0');
  d.int_digits_ = first_nonzero == std::string_view::npos
                      ? "0"
                      : std::string(int_part.substr(first_nonzero));
  size_t last_nonzero = frac_part.find_last_not_of('0');
  d.frac_digits_ = last_nonzero == std::string_view::npos
                       ? ""
                       : std::string(frac_part.substr(0, last_nonzero + 1));
  d.negative_ = negative && !d.is_zero();
  return d;
}

Decimal Decimal::FromInt(int64_t value) {
  return *Parse(std::to_string(value));
}

std::string Decimal::ToString() const {
  std::string out;
  if (negative_) out += '-';
  out += int_digits_;
  if (!frac_digits_.empty()) {
    out += '.';
    out += frac_digits_;
  }
  return out;
}

double Decimal::ToDouble() const { return std::strtod(ToString().c_str(), nullptr); }

bool Decimal::FractionAtLeast(uint64_t numerator, uint64_t denominator) const {
  if (negative_) return true;
  uint64_t quotient = numerator / denominator;
  uint64_t remainder = numerator % denominator;
  std::string q = std::to_string(quotient);
  auto order = CompareMagnitude(q, "", int_digits_, "");
  if (order != 0) return order > 0;
  for (char digit : frac_digits_) {
    // remainder < denominator, so remainder * 10 stays in range for any
    // denominator below 2^60.
    remainder *= 10;
    uint64_t next = remainder / denominator;
    remainder %= denominator;
    uint64_t want = static_cast<uint64_t>(digit - '0');
    if (next != want) return next > want;
  }
  return true;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  if (a.negative_ != b.negative_) {
    return a.negative_ ? std::strong_ordering::less
                       : std::strong_ordering::greater;
  }
  auto magnitude =
      CompareMagnitude(a.int_digits_, a.frac_digits_, b.int_digits_, b.frac_digits_);
  if (a.negative_) return 0 <=> magnitude;
  return magnitude;
}

std::string QuoteText(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string Value::ToLiteral() const {
  return is_text() ? QuoteText(text()) : number().ToString();
}

std::string Value::Render() const {
  return is_text() ? text() : number().ToString();
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.is_number() != b.is_number()) {
    return a.is_number() ? std::strong_ordering::less
                         : std::strong_ordering::greater;
  }
  if (a.is_number()) return a.number() <=> b.number();
  // std::string::compare orders bytes as unsigned char, which for UTF-8 is
  // code point order.
  return a.text().compare(b.text()) <=> 0;
}

}  // namespace rulesel
