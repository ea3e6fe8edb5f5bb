#pragma once

// Expression language for surface components.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-'? power
//   power  := atom ('^' factor)?          right associative, binds tighter than unary '-'
//   atom   := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// Identifiers are case sensitive; u, v and pi are reserved. Functions: sin cos
// tan sinh cosh tanh exp ln sqrt, all of arity one.

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "dsgauss/jet.hpp"

namespace dsgauss {

using ParamMap = std::map<std::string, double>;

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt };

std::optional<Func> func_from_name(std::string_view name);
const char* func_name(Func f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, VarU, VarV, Pi, Param, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;  // Number
  std::string name;     // Param
  Func func = Func::Sin;  // Call
  ExprPtr lhs;          // Neg, Call operand; binary left
  ExprPtr rhs;          // binary right
  std::size_t offset = 0;  // byte offset in the source text

  static ExprPtr make_number(double x, std::size_t off = 0);
  static ExprPtr make_leaf(Kind k, std::size_t off = 0);
  static ExprPtr make_param(std::string name, std::size_t off = 0);
  static ExprPtr make_unary(Kind k, ExprPtr a, std::size_t off = 0);
  static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b, std::size_t off = 0);
  static ExprPtr make_call(Func f, ExprPtr a, std::size_t off = 0);
};

// Structural equality, ignoring source offsets.
bool equal(const Expr& a, const Expr& b);

// Parses `text`. When `declared` is given, identifiers other than u, v, pi and
// the declared names are rejected at parse time; otherwise they become
// parameters resolved at evaluation.
ExprPtr parse(std::string_view text, const std::set<std::string>* declared = nullptr);

// Canonical printer: every compound node is parenthesised, numbers use 17
// significant digits. parse(unparse(e)) is structurally equal to e.
std::string unparse(const Expr& e);

// True when the expression does not depend on u or v.
bool is_constant(const Expr& e);

// Exchanges the roles of u and v.
ExprPtr swap_uv(const ExprPtr& e);

// A Singularity tagged with the byte offset of the innermost failing node.
class LocatedSingularity : public Singularity {
 public:
  LocatedSingularity(const std::string& what, std::size_t offset)
      : Singularity(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

[[noreturn]] void rethrow_with_location(const Singularity& s, std::size_t offset);

inline double checked(Func f, double x) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan:
      if (std::abs(std::cos(x)) < 1e-12) throw Singularity("Singularity: tan at a pole");
      return std::tan(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Tanh: return std::tanh(x);
    case Func::Exp: return std::exp(x);
    case Func::Ln:
      if (!(x > 0)) throw Singularity("Singularity: ln of a non-positive value");
      return std::log(x);
    case Func::Sqrt:
      if (!(x > 0)) {
        if (x == 0) return 0.0;
        throw Singularity("Singularity: sqrt of a negative value");
      }
      return std::sqrt(x);
  }
  return 0.0;
}

template <typename T>
Jet2<T> checked(Func f, const Jet2<T>& x) {
  switch (f) {
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Tan: return tan(x);
    case Func::Sinh: return sinh(x);
    case Func::Cosh: return cosh(x);
    case Func::Tanh: return tanh(x);
    case Func::Exp: return exp(x);
    case Func::Ln: return log(x);
    case Func::Sqrt: return sqrt(x);
  }
  return x;
}

inline double divide(double a, double b) {
  if (b == 0.0) throw Singularity("Singularity: division by zero");
  return a / b;
}
template <typename T>
Jet2<T> divide(const Jet2<T>& a, const Jet2<T>& b) {
  return a / b;
}

inline double int_power(double b, long long n) {
  if (n < 0) return divide(1.0, int_power(b, -n));
  double r = 1.0;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}
template <typename T>
Jet2<T> int_power(Jet2<T> b, long long n) {
  if (n < 0) return reciprocal(int_power(b, -n));
  Jet2<T> r(T(1));
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

}  // namespace detail

// Evaluates e at (u, v). Scalar is double or a Jet2; for jets, u and v should
// be seeded variables. A '^' whose exponent is constant and integral is
// lowered to repeated multiplication; other exponents go through exp/ln and
// need a positive base.
template <typename Scalar>
Scalar evaluate(const Expr& e, const Scalar& u, const Scalar& v, const ParamMap& params) {
  using K = Expr::Kind;
  auto rec = [&](const Expr& x) { return evaluate<Scalar>(x, u, v, params); };
  try {
    switch (e.kind) {
      case K::Number: return Scalar(e.number);
      case K::VarU: return u;
      case K::VarV: return v;
      case K::Pi: return Scalar(M_PI);
      case K::Param: {
        auto it = params.find(e.name);
        if (it == params.end()) throw UnboundParameter(e.name);
        return Scalar(it->second);
      }
      case K::Neg: return -rec(*e.lhs);
      case K::Add: return rec(*e.lhs) + rec(*e.rhs);
      case K::Sub: return rec(*e.lhs) - rec(*e.rhs);
      case K::Mul: return rec(*e.lhs) * rec(*e.rhs);
      case K::Div: return detail::divide(rec(*e.lhs), rec(*e.rhs));
      case K::Call: return detail::checked(e.func, rec(*e.lhs));
      case K::Pow: {
        const Scalar base = rec(*e.lhs);
        if (is_constant(*e.rhs)) {
          const double p = evaluate<double>(*e.rhs, 0.0, 0.0, params);
          if (std::floor(p) == p && std::abs(p) < 1e9) return detail::int_power(base, static_cast<long long>(p));
          if (!(value_of(base) > 0))
            throw Singularity("Singularity: non-integer power of a non-positive value");
          return detail::checked(Func::Exp, Scalar(p) * detail::checked(Func::Ln, base));
        }
        if (!(value_of(base) > 0)) throw Singularity("Singularity: variable power of a non-positive value");
        return detail::checked(Func::Exp, rec(*e.rhs) * detail::checked(Func::Ln, base));
      }
    }
  } catch (const LocatedSingularity&) {
    throw;
  } catch (const Singularity& s) {
    detail::rethrow_with_location(s, e.offset);
  }
  return Scalar(0);
}

// Jet of e at (u0, v0) with u, v seeded as the variables.
inline Jet eval_jet(const Expr& e, double u0, double v0, const ParamMap& params) {
  return evaluate<Jet>(e, Jet::seed_u(u0), Jet::seed_v(v0), params);
}

inline double eval_value(const Expr& e, double u0, double v0, const ParamMap& params) {
  return evaluate<double>(e, u0, v0, params);
}

}  // namespace dsgauss
