// Copyright 2026 The TAAF Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Closed-form parameter expressions over named fixed parameters, serialized
// as prefix strings: "1", "a", "neg(mul(a,b))", "div(c,b)", "recip(b)".

#include <cctype>
#include <cmath>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/format.hpp"

namespace taaf {

class ParamExpr {
 public:
  enum class Op { constant, ref, neg, mul, div, recip };

  ParamExpr() = default;

  static ParamExpr constant(double v) {
    ParamExpr e;
    e.op_ = Op::constant;
    e.value_ = v;
    return e;
  }
  static ParamExpr ref(std::string name) {
    ParamExpr e;
    e.op_ = Op::ref;
    e.name_ = std::move(name);
    return e;
  }
  static ParamExpr neg(ParamExpr x) { return unary(Op::neg, std::move(x)); }
  static ParamExpr recip(ParamExpr x) { return unary(Op::recip, std::move(x)); }
  static ParamExpr mul(ParamExpr x, ParamExpr y) { return binary(Op::mul, std::move(x), std::move(y)); }
  static ParamExpr div(ParamExpr x, ParamExpr y) { return binary(Op::div, std::move(x), std::move(y)); }

  Op op() const { return op_; }

  double evaluate(const FixedParamBinding& binding) const {
    switch (op_) {
      case Op::constant:
        return value_;
      case Op::ref: {
        auto it = binding.find(name_);
        if (it == binding.end()) throw DomainError("binding lacks parameter '" + name_ + "'");
        return it->second;
      }
      case Op::neg:
        return -args_[0].evaluate(binding);
      case Op::mul:
        return args_[0].evaluate(binding) * args_[1].evaluate(binding);
      case Op::div: {
        const double den = args_[1].evaluate(binding);
        if (den == 0.0) throw DivisionGuardError("division by zero in '" + to_string() + "'");
        return args_[0].evaluate(binding) / den;
      }
      case Op::recip: {
        const double den = args_[0].evaluate(binding);
        if (den == 0.0) throw DivisionGuardError("division by zero in '" + to_string() + "'");
        return 1.0 / den;
      }
    }
    return 0.0;
  }

  std::string to_string() const {
    switch (op_) {
      case Op::constant:
        return format_double(value_);
      case Op::ref:
        return name_;
      case Op::neg:
        return "neg(" + args_[0].to_string() + ")";
      case Op::recip:
        return "recip(" + args_[0].to_string() + ")";
      case Op::mul:
        return "mul(" + args_[0].to_string() + "," + args_[1].to_string() + ")";
      case Op::div:
        return "div(" + args_[0].to_string() + "," + args_[1].to_string() + ")";
    }
    return {};
  }

  void collect_refs(std::set<std::string>& out) const {
    if (op_ == Op::ref) out.insert(name_);
    for (const auto& a : args_) a.collect_refs(out);
  }

  static ParamExpr parse(std::string_view text) {
    Parser p{text, 0};
    ParamExpr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return e;
  }

  friend bool operator==(const ParamExpr&, const ParamExpr&) = default;

 private:
  static ParamExpr unary(Op op, ParamExpr x) {
    ParamExpr e;
    e.op_ = op;
    e.args_.push_back(std::move(x));
    return e;
  }
  static ParamExpr binary(Op op, ParamExpr x, ParamExpr y) {
    ParamExpr e;
    e.op_ = op;
    e.args_.push_back(std::move(x));
    e.args_.push_back(std::move(y));
    return e;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& why) const {
      throw ParseError("bad parameter expression '" + std::string(s) + "' at " +
                       std::to_string(pos) + ": " + why);
    }
    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c) {
      skip_ws();
      if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
      ++pos;
    }
    ParamExpr expr() {
      skip_ws();
      if (pos >= s.size()) fail("unexpected end");
      const char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
        std::size_t end = pos;
        while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) ||
                                  s[end] == '.' || s[end] == '-' || s[end] == '+')) {
          ++end;
        }
        const double v = parse_double(s.substr(pos, end - pos));
        pos = end;
        return constant(v);
      }
      if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("unexpected character");
      std::size_t end = pos;
      while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) {
        ++end;
      }
      const std::string word(s.substr(pos, end - pos));
      pos = end;
      skip_ws();
      if (pos >= s.size() || s[pos] != '(') return ref(word);
      ++pos;
      if (word == "neg" || word == "recip") {
        ParamExpr x = expr();
        expect(')');
        return word == "neg" ? neg(std::move(x)) : recip(std::move(x));
      }
      if (word == "mul" || word == "div") {
        ParamExpr x = expr();
        expect(',');
        ParamExpr y = expr();
        expect(')');
        return word == "mul" ? mul(std::move(x), std::move(y)) : div(std::move(x), std::move(y));
      }
      fail("unknown operator '" + word + "'");
    }
  };

  Op op_ = Op::constant;
  double value_ = 0.0;
  std::string name_;
  std::vector<ParamExpr> args_;
};

}  // namespace taaf
