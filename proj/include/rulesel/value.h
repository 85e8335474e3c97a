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

#ifndef RULESEL_VALUE_H_
#define RULESEL_VALUE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace rulesel {

// Exact decimal number of arbitrary precision. Stored normalized: no leading
// zeros in the integer part, no trailing zeros in the fraction, and zero is
// never negative, so "1.50" and "1.5" are the same value.
class Decimal {
 public:
  Decimal() = default;

  // Accepts -?[0-9]+(\.[0-9]+)?; returns nullopt for anything else.
  static std::optional<Decimal> Parse(std::string_view text);
  static Decimal FromInt(int64_t value);

  // Canonical literal, e.g. "-3", "0.25".
  std::string ToString() const;

  bool negative() const { return negative_; }
  bool is_integer() const { return frac_digits_.empty(); }
  bool is_zero() const { return int_digits_ == "0" && frac_digits_.empty(); }

  // True iff numerator/denominator >= *this, computed exactly by long
  // division. denominator must be positive.
  bool FractionAtLeast(uint64_t numerator, uint64_t denominator) const;

  double ToDouble() const;

  friend bool operator==(const Decimal& a, const Decimal& b) = default;
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

 private:
  bool negative_ = false;
  std::string int_digits_ = "0";
  std::string frac_digits_;
};

// A constant: either a number or a UTF-8 text. Numbers order before texts;
// texts order by code point. Equality never coerces between the two kinds.
class Value {
 public:
  Value() : data_(Decimal()) {}

  static Value Text(std::string text) { return Value(std::move(text)); }
  static Value Number(Decimal number) { return Value(number); }
  static Value Int(int64_t number) { return Value(Decimal::FromInt(number)); }

  bool is_text() const { return std::holds_alternative<std::string>(data_); }
  bool is_number() const { return std::holds_alternative<Decimal>(data_); }
  const std::string& text() const { return std::get<std::string>(data_); }
  const Decimal& number() const { return std::get<Decimal>(data_); }

  // Literal form as written in rule and fact files: quoted and escaped text,
  // or the canonical decimal.
  std::string ToLiteral() const;
  // Raw content: the text itself, or the canonical decimal.
  std::string Render() const;

  friend bool operator==(const Value& a, const Value& b) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  explicit Value(std::string text) : data_(std::move(text)) {}
  explicit Value(Decimal number) : data_(number) {}

  std::variant<Decimal, std::string> data_;
};

// Quotes and escapes a text for the rule/fact file syntax.
std::string QuoteText(std::string_view text);

}  // namespace rulesel

#endif  // RULESEL_VALUE_H_
