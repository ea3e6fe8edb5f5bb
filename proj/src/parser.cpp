#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "dsgauss/expr.hpp"

namespace dsgauss {

namespace {

constexpr std::pair<const char*, Func> kFuncs[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh},
    {"tanh", Func::Tanh}, {"exp", Func::Exp},   {"ln", Func::Ln},   {"sqrt", Func::Sqrt},
};

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string>* declared) : s_(text), declared_(declared) {}

  ExprPtr run() {
    auto e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  ExprPtr expr() {
    auto lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, term(), at);
      else if (accept('-'))
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term(), at);
      else
        return lhs;
    }
  }

  ExprPtr term() {
    auto lhs = factor();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*'))
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, factor(), at);
      else if (accept('/'))
        lhs = Expr::make_binary(Expr::Kind::Div, lhs, factor(), at);
      else
        return lhs;
    }
  }

  ExprPtr factor() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) return Expr::make_unary(Expr::Kind::Neg, power(), at);
    return power();
  }

  ExprPtr power() {
    auto base = atom();
    skip_ws();
    const std::size_t at = pos_;
    if (accept('^')) return Expr::make_binary(Expr::Kind::Pow, base, factor(), at);
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      const std::string id(s_.substr(pos_, end - pos_));
      pos_ = end;
      if (auto f = func_from_name(id)) {
        skip_ws();
        if (!accept('(')) fail_at("function '" + id + "' used without an argument", at);
        auto arg = expr();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') fail("function '" + id + "' takes exactly one argument");
        expect(')');
        return Expr::make_call(*f, arg, at);
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') fail_at("unknown function '" + id + "'", at);
      if (id == "u") return Expr::make_leaf(Expr::Kind::VarU, at);
      if (id == "v") return Expr::make_leaf(Expr::Kind::VarV, at);
      if (id == "pi") return Expr::make_leaf(Expr::Kind::Pi, at);
      if (declared_ && !declared_->count(id)) fail_at("unknown identifier '" + id + "'", at);
      return Expr::make_param(id, at);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end, ++n;
      return n;
    };
    std::size_t n = digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", at);
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t save = end;
      ++end;
      if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) ++end;
      if (digits() == 0) fail_at("malformed exponent", save);
    }
    double x = 0.0;
    const auto r = std::from_chars(s_.data() + pos_, s_.data() + end, x);
    if (r.ec != std::errc() || r.ptr != s_.data() + end) fail_at("malformed number", at);
    pos_ = end;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      fail("identifier directly after a number");
    return Expr::make_number(x, at);
  }

  std::string_view s_;
  const std::set<std::string>* declared_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<Func> func_from_name(std::string_view name) {
  for (const auto& [n, f] : kFuncs)
    if (name == n) return f;
  return std::nullopt;
}

const char* func_name(Func f) {
  for (const auto& [n, g] : kFuncs)
    if (f == g) return n;
  return "?";
}

ExprPtr Expr::make_number(double x, std::size_t off) {
  Expr e;
  e.kind = Kind::Number;
  e.number = x;
  e.offset = off;
  return make(std::move(e));
}

ExprPtr Expr::make_leaf(Kind k, std::size_t off) {
  Expr e;
  e.kind = k;
  e.offset = off;
  return make(std::move(e));
}

ExprPtr Expr::make_param(std::string name, std::size_t off) {
  Expr e;
  e.kind = Kind::Param;
  e.name = std::move(name);
  e.offset = off;
  return make(std::move(e));
}

ExprPtr Expr::make_unary(Kind k, ExprPtr a, std::size_t off) {
  Expr e;
  e.kind = k;
  e.lhs = std::move(a);
  e.offset = off;
  return make(std::move(e));
}

ExprPtr Expr::make_binary(Kind k, ExprPtr a, ExprPtr b, std::size_t off) {
  Expr e;
  e.kind = k;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  e.offset = off;
  return make(std::move(e));
}

ExprPtr Expr::make_call(Func f, ExprPtr a, std::size_t off) {
  Expr e;
  e.kind = Kind::Call;
  e.func = f;
  e.lhs = std::move(a);
  e.offset = off;
  return make(std::move(e));
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  using K = Expr::Kind;
  switch (a.kind) {
    case K::Number: return a.number == b.number;
    case K::VarU:
    case K::VarV:
    case K::Pi: return true;
    case K::Param: return a.name == b.name;
    case K::Neg: return equal(*a.lhs, *b.lhs);
    case K::Call: return a.func == b.func && equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

ExprPtr parse(std::string_view text, const std::set<std::string>* declared) {
  return Parser(text, declared).run();
}

std::string unparse(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      return buf;
    }
    case K::VarU: return "u";
    case K::VarV: return "v";
    case K::Pi: return "pi";
    case K::Param: return e.name;
    case K::Neg: return "(-" + unparse(*e.lhs) + ")";
    case K::Call: return std::string(func_name(e.func)) + "(" + unparse(*e.lhs) + ")";
    case K::Add: return "(" + unparse(*e.lhs) + " + " + unparse(*e.rhs) + ")";
    case K::Sub: return "(" + unparse(*e.lhs) + " - " + unparse(*e.rhs) + ")";
    case K::Mul: return "(" + unparse(*e.lhs) + " * " + unparse(*e.rhs) + ")";
    case K::Div: return "(" + unparse(*e.lhs) + " / " + unparse(*e.rhs) + ")";
    case K::Pow: return "(" + unparse(*e.lhs) + " ^ " + unparse(*e.rhs) + ")";
  }
  return {};
}

bool is_constant(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::VarU:
    case K::VarV: return false;
    case K::Number:
    case K::Pi:
    case K::Param: return true;
    case K::Neg:
    case K::Call: return is_constant(*e.lhs);
    default: return is_constant(*e.lhs) && is_constant(*e.rhs);
  }
}

ExprPtr swap_uv(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::VarU: return Expr::make_leaf(K::VarV, e->offset);
    case K::VarV: return Expr::make_leaf(K::VarU, e->offset);
    case K::Number:
    case K::Pi:
    case K::Param: return e;
    case K::Neg: return Expr::make_unary(K::Neg, swap_uv(e->lhs), e->offset);
    case K::Call: return Expr::make_call(e->func, swap_uv(e->lhs), e->offset);
    default: return Expr::make_binary(e->kind, swap_uv(e->lhs), swap_uv(e->rhs), e->offset);
  }
}

namespace detail {

void rethrow_with_location(const Singularity& s, std::size_t offset) { throw LocatedSingularity(s.what(), offset); }

}  // namespace detail

}  // namespace dsgauss
