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

#include "rulesel/parser.h"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "rulesel/builtins.h"

namespace rulesel {
namespace {

enum class TokenKind {
  kIdent,
  kString,
  kNumber,
  kLParen,
  kRParen,
  kComma,
  kColon,
  kDot,
  kArrow,
  kEnd,
};

struct Token {
  TokenKind kind;
  std::string text;  // identifier, unescaped string, or number literal
  int line;
  int column;
};

bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
bool IsIdentChar(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c) || c == '_'; }
bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }

bool IsValidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    size_t extra;
    uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file)
      : text_(text), file_(file) {}

  std::vector<Token> Tokenize() {
    std::vector<Token> tokens;
    for (;;) {
      SkipSpaceAndComments();
      if (pos_ >= text_.size()) {
        // Anchor end of input on the last token so positions stay inside
        // the text.
        if (tokens.empty()) {
          tokens.push_back({TokenKind::kEnd, "", 1, 1});
        } else {
          tokens.push_back({TokenKind::kEnd, "", tokens.back().line,
                            tokens.back().column});
        }
        return tokens;
      }
      tokens.push_back(Next());
    }
  }

  [[noreturn]] void Fail(int line, int column, const std::string& message) const {
    throw ParseError(file_, line, column, message, LineText(line));
  }

  std::string LineText(int line) const {
    size_t begin = 0;
    for (int l = 1; l < line && begin < text_.size(); ++l) {
      size_t nl = text_.find('\n', begin);
      if (nl == std::string_view::npos) return "";
      begin = nl + 1;
    }
    size_t end = text_.find('\n', begin);
    std::string_view s = text_.substr(
        begin, end == std::string_view::npos ? std::string_view::npos
                                             : end - begin);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return std::string(s.substr(0, 120));
  }

 private:
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void Advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      char c = Peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        Advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && Peek() != '\n') Advance();
      } else {
        return;
      }
    }
  }

  Token Next() {
    int line = line_;
    int column = column_;
    char c = Peek();
    auto single = [&](TokenKind kind) {
      Advance();
      return Token{kind, std::string(1, c), line, column};
    };
    switch (c) {
      case '(': return single(TokenKind::kLParen);
      case ')': return single(TokenKind::kRParen);
      case ',': return single(TokenKind::kComma);
      case ':': return single(TokenKind::kColon);
      case '.': return single(TokenKind::kDot);
      case '"': return LexString(line, column);
      default: break;
    }
    if (c == '-' && Peek(1) == '>') {
      Advance();
      Advance();
      return {TokenKind::kArrow, "->", line, column};
    }
    if (IsAsciiDigit(c) || (c == '-' && IsAsciiDigit(Peek(1)))) {
      std::string number;
      if (c == '-') {
        number += c;
        Advance();
      }
      while (IsAsciiDigit(Peek())) {
        number += Peek();
        Advance();
      }
      if (Peek() == '.' && IsAsciiDigit(Peek(1))) {
        number += '.';
        Advance();
        while (IsAsciiDigit(Peek())) {
          number += Peek();
          Advance();
        }
      }
      return {TokenKind::kNumber, number, line, column};
    }
    if (IsAsciiAlpha(c) || c == '_') {
      std::string ident;
      while (IsIdentChar(Peek())) {
        ident += Peek();
        Advance();
      }
      return {TokenKind::kIdent, ident, line, column};
    }
    std::string shown = static_cast<unsigned char>(c) < 0x20 ||
                                static_cast<unsigned char>(c) >= 0x7f
                            ? "byte 0x" + Hex(static_cast<unsigned char>(c))
                            : "'" + std::string(1, c) + "'";
    Fail(line, column, "unexpected character " + shown);
  }

  static std::string Hex(unsigned char c) {
    char buf[3];
    std::snprintf(buf, sizeof(buf), "%02x", c);
    return buf;
  }

  Token LexString(int line, int column) {
    Advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= text_.size() || Peek() == '\n') {
        Fail(line, column, "unterminated string");
      }
      char c = Peek();
      if (c == '"') {
        Advance();
        break;
      }
      if (c == '\\') {
        int esc_line = line_;
        int esc_column = column_;
        Advance();
        char e = Peek();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          default:
            Fail(esc_line, esc_column, "invalid escape sequence");
        }
        Advance();
        continue;
      }
      out += c;
      Advance();
    }
    if (!IsValidUtf8(out)) Fail(line, column, "string is not valid UTF-8");
    return {TokenKind::kString, out, line, column};
  }

  std::string_view text_;
  const std::string& file_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const char* Describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdent: return "identifier";
    case TokenKind::kString: return "string";
    case TokenKind::kNumber: return "number";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kComma: return "','";
    case TokenKind::kColon: return "':'";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kArrow: return "'->'";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

// Shared recursive-descent machinery for both file kinds.
class Parser {
 public:
  Parser(std::string_view text, const std::string& file)
      : lexer_(text, file), tokens_(lexer_.Tokenize()) {}

  RuleSet ParseRuleFile() {
    std::vector<Rule> rules;
    while (Current().kind != TokenKind::kEnd) rules.push_back(ParseRule());
    return RuleSet::FromRules(std::move(rules));
  }

  Instance ParseFactFile(const Schema& schema) {
    Instance instance(schema);
    while (Current().kind != TokenKind::kEnd) {
      const Token& start = Current();
      int line = start.line;
      Fact fact = ParseFact();
      if (Current().kind != TokenKind::kEnd && Current().line == line) {
        FailAt(Current(), "expected end of line after fact");
      }
      auto it = instance.schema().find(fact.relation);
      if (!schema.empty() && !schema.count(fact.relation)) {
        FailAt(start, "relation " + fact.relation + " is not in the schema");
      }
      if (it != instance.schema().end() && it->second != fact.args.size()) {
        FailAt(start, "relation " + fact.relation + " has arity " +
                          std::to_string(it->second) + ", fact has " +
                          std::to_string(fact.args.size()) + " arguments");
      }
      instance.Insert(std::move(fact));
    }
    return instance;
  }

 private:
  const Token& Current() const { return tokens_[index_]; }
  const Token& Take() { return tokens_[index_++]; }

  [[noreturn]] void FailAt(const Token& token, const std::string& message) const {
    lexer_.Fail(token.line, token.column, message);
  }

  const Token& Expect(TokenKind kind, const char* context) {
    if (Current().kind != kind) {
      FailAt(Current(), std::string("expected ") + Describe(kind) + " " +
                            context + ", found " + Describe(Current().kind));
    }
    return Take();
  }

  Rule ParseRule() {
    const Token& keyword = Expect(TokenKind::kIdent, "at start of rule");
    if (keyword.text != "rule") FailAt(keyword, "expected keyword 'rule'");
    const Token& name = Expect(TokenKind::kIdent, "for rule name");
    if (name.text[0] == '_') {
      FailAt(name, "rule names may not start with '_'");
    }
    Expect(TokenKind::kColon, "after rule name");
    anonymous_count_ = 0;
    Rule rule;
    rule.name = name.text;
    rule.premise.push_back(ParseAtom(/*in_premise=*/true));
    while (Current().kind == TokenKind::kComma) {
      Take();
      rule.premise.push_back(ParseAtom(/*in_premise=*/true));
    }
    Expect(TokenKind::kArrow, "before conclusion");
    rule.conclusion = ParseAtom(/*in_premise=*/false);
    Expect(TokenKind::kDot, "at end of rule");
    return rule;
  }

  Atom ParseAtom(bool in_premise) {
    const Token& name = Expect(TokenKind::kIdent, "for atom");
    bool builtin = !IsUpper(name.text[0]);
    if (builtin) {
      if (!in_premise) FailAt(name, "conclusion must be a relation atom");
      if (!BuiltinRegistry::Default().Contains(name.text)) {
        FailAt(name, "unknown builtin '" + name.text +
                         "' (relation names start with an uppercase letter)");
      }
    }
    std::vector<Term> terms = ParseArguments(/*constants_only=*/false);
    if (!builtin) return Atom::Relational(name.text, std::move(terms));

    const BuiltinSpec& spec = *BuiltinRegistry::Default().Find(name.text);
    size_t expected = spec.arity + (spec.has_threshold ? 1 : 0);
    if (terms.size() != expected) {
      FailAt(name, "builtin " + name.text + " takes " +
                       std::to_string(expected) + " arguments, got " +
                       std::to_string(terms.size()));
    }
    std::optional<Decimal> threshold;
    if (spec.has_threshold) {
      const Term& last = terms.back();
      if (!last.is_constant() || !last.constant().is_number()) {
        FailAt(name, "builtin " + name.text +
                         " needs a numeric threshold as last argument");
      }
      threshold = last.constant().number();
      terms.pop_back();
    }
    return Atom::Builtin(name.text, std::move(terms), threshold);
  }

  std::vector<Term> ParseArguments(bool constants_only) {
    const Token& open = Expect(TokenKind::kLParen, "after relation name");
    std::vector<Term> terms;
    for (;;) {
      if (Current().kind == TokenKind::kEnd) FailAt(open, "unclosed '('");
      terms.push_back(ParseTerm(constants_only));
      if (Current().kind == TokenKind::kEnd) FailAt(open, "unclosed '('");
      if (Current().kind == TokenKind::kRParen) {
        Take();
        return terms;
      }
      Expect(TokenKind::kComma, "between arguments");
    }
  }

  Term ParseTerm(bool constants_only) {
    const Token& token = Current();
    switch (token.kind) {
      case TokenKind::kString:
        Take();
        return Term::Const(Value::Text(token.text));
      case TokenKind::kNumber: {
        Take();
        auto number = Decimal::Parse(token.text);
        if (!number) FailAt(token, "malformed number");
        return Term::Const(Value::Number(*number));
      }
      case TokenKind::kIdent:
        if (constants_only) {
          FailAt(token, "variables are not allowed in facts; quote text "
                        "constants");
        }
        Take();
        if (token.text == "_") {
          return Term::Var("_" + std::to_string(++anonymous_count_));
        }
        if (token.text[0] == '_') {
          FailAt(token, "identifiers starting with '_' are reserved");
        }
        return Term::Var(token.text);
      case TokenKind::kComma:
      case TokenKind::kRParen:
        FailAt(token, "empty term");
      default:
        FailAt(token, std::string("expected a term, found ") +
                          Describe(token.kind));
    }
  }

  Fact ParseFact() {
    const Token& name = Expect(TokenKind::kIdent, "for fact");
    if (!IsUpper(name.text[0])) {
      FailAt(name, "relation names start with an uppercase letter");
    }
    std::vector<Term> terms = ParseArguments(/*constants_only=*/true);
    if (tokens_[index_ - 1].line != name.line) {
      FailAt(name, "a fact must fit on one line");
    }
    Fact fact{name.text, {}};
    for (Term& t : terms) fact.args.push_back(t.constant());
    return fact;
  }

  Lexer lexer_;
  std::vector<Token> tokens_;
  size_t index_ = 0;
  int anonymous_count_ = 0;
};

}  // namespace

RuleSet ParseRules(std::string_view text, const std::string& file) {
  RuleSet rules = Parser(text, file).ParseRuleFile();
  ValidateOrThrow(rules, std::nullopt);
  return rules;
}

Instance ParseFacts(std::string_view text, const Schema& schema,
                    const std::string& file) {
  return Parser(text, file).ParseFactFile(schema);
}

std::string WriteRules(const RuleSet& rules) {
  std::string out;
  for (const Rule& rule : rules.rules) {
    out += rule.ToString();
    out += '\n';
  }
  return out;
}

std::string WriteFacts(const Instance& instance) {
  std::string out;
  for (const Fact& fact : instance.facts()) {
    out += fact.ToString();
    out += '\n';
  }
  return out;
}

std::string Fingerprint(const RuleSet& rules, const DataExample& example) {
  // FNV-1a, 64 bit.
  uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::string_view s) {
    for (char c : s) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
  };
  mix("rules\n");
  mix(WriteRules(rules));
  mix("premise\n");
  mix(WriteFacts(example.premise));
  mix("truth\n");
  mix(WriteFacts(example.truth));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace rulesel
