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

#include "rulesel/builtins.h"

#include <algorithm>
#include <iterator>

namespace rulesel {
namespace {

bool IsTokenChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

// Same-kind comparison; nullopt across kinds.
std::optional<std::strong_ordering> CompareSameKind(const Value& a,
                                                    const Value& b) {
  if (a.is_number() != b.is_number()) return std::nullopt;
  return a <=> b;
}

}  // namespace

BuiltinRegistry::BuiltinRegistry() {
  auto add = [this](BuiltinSpec spec) {
    std::string name = spec.name;
    specs_.emplace(std::move(name), std::move(spec));
  };
  add({"neq", 2, false, [](std::span<const Value> v, const auto&) {
         return v[0] != v[1];
       }});
  add({"eq", 2, false, [](std::span<const Value> v, const auto&) {
         return v[0] == v[1];
       }});
  add({"jaccard_geq", 2, true,
       [](std::span<const Value> v, const std::optional<Decimal>& t) {
         JaccardRatio r = JaccardCounts(v[0], v[1]);
         return t->FractionAtLeast(r.intersection, r.union_size);
       }});
  add({"geq", 2, false, [](std::span<const Value> v, const auto&) {
         auto order = CompareSameKind(v[0], v[1]);
         return order.has_value() && *order >= 0;
       }});
  add({"leq", 2, false, [](std::span<const Value> v, const auto&) {
         auto order = CompareSameKind(v[0], v[1]);
         return order.has_value() && *order <= 0;
       }});
}

const BuiltinRegistry& BuiltinRegistry::Default() {
  static const BuiltinRegistry* registry = new BuiltinRegistry();
  return *registry;
}

const BuiltinSpec* BuiltinRegistry::Find(std::string_view name) const {
  auto it = specs_.find(name);
  return it == specs_.end() ? nullptr : &it->second;
}

std::set<std::string> JaccardTokens(std::string_view text) {
  std::set<std::string> tokens;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (IsTokenChar(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
    } else if (!current.empty()) {
      tokens.insert(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.insert(std::move(current));
  return tokens;
}

JaccardRatio JaccardCounts(const Value& a, const Value& b) {
  std::set<std::string> left = JaccardTokens(a.Render());
  std::set<std::string> right = JaccardTokens(b.Render());
  if (left.empty() && right.empty()) return {1, 1};
  std::vector<std::string> common;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(common));
  uint64_t inter = common.size();
  return {inter, left.size() + right.size() - inter};
}

double Jaccard(const Value& a, const Value& b) {
  JaccardRatio r = JaccardCounts(a, b);
  return static_cast<double>(r.intersection) /
         static_cast<double>(r.union_size);
}

}  // namespace rulesel
