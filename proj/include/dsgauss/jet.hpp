#pragma once

// Order-3 truncated bivariate jets.
//
// A Jet2 stores the value and all partial derivatives of total degree <= 3 of
// a scalar function of (u, v) at a fixed base point. Arithmetic follows the
// Leibniz and Faa di Bruno rules truncated at degree 3, so every slot of a
// result depends only on slots of equal or lower degree of the operands.
//
// d_u / d_v shift a jet down by one degree. The degree-3 slots of the result
// are unknown and set to zero; callers track how many differentiations a
// quantity has been through (see geometry.cpp).

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "dsgauss/errors.hpp"

namespace dsgauss {

namespace jet_detail {

// Slot of the derivative with `a` u-derivatives and `b` v-derivatives.
constexpr int slot(int a, int b) {
  const int n = a + b;
  return n * (n + 1) / 2 + b;
}

constexpr int binom(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct SlotDegree {
  int a;
  int b;
};

constexpr std::array<SlotDegree, 10> kDegrees = {{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                                   {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};

}  // namespace jet_detail

template <typename T>
class Jet2 {
 public:
  static constexpr int kSlots = 10;

  Jet2() { d_.fill(T(0)); }
  Jet2(T value) {  // NOLINT(google-explicit-constructor): scalars promote to constant jets
    d_.fill(T(0));
    d_[0] = value;
  }

  static Jet2 constant(T value) { return Jet2(value); }
  static Jet2 seed_u(T u0) {
    Jet2 j(u0);
    j.d_[1] = T(1);
    return j;
  }
  static Jet2 seed_v(T v0) {
    Jet2 j(v0);
    j.d_[2] = T(1);
    return j;
  }
  static Jet2 from_slots(const std::array<T, kSlots>& slots) {
    Jet2 j;
    j.d_ = slots;
    return j;
  }

  const T& value() const { return d_[0]; }
  const T& du() const { return d_[1]; }
  const T& dv() const { return d_[2]; }
  const T& duu() const { return d_[3]; }
  const T& duv() const { return d_[4]; }
  const T& dvv() const { return d_[5]; }
  const T& duuu() const { return d_[6]; }
  const T& duuv() const { return d_[7]; }
  const T& duvv() const { return d_[8]; }
  const T& dvvv() const { return d_[9]; }

  // Derivative with a u-derivatives and b v-derivatives, a + b <= 3.
  const T& partial(int a, int b) const { return d_[jet_detail::slot(a, b)]; }
  T& partial(int a, int b) { return d_[jet_detail::slot(a, b)]; }

  const std::array<T, kSlots>& slots() const { return d_; }

  Jet2& operator+=(const Jet2& o) {
    for (int i = 0; i < kSlots; ++i) d_[i] += o.d_[i];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    for (int i = 0; i < kSlots; ++i) d_[i] -= o.d_[i];
    return *this;
  }
  Jet2& operator*=(const Jet2& o) { return *this = *this * o; }
  Jet2& operator/=(const Jet2& o) { return *this = *this / o; }
  Jet2& operator*=(T s) {
    for (auto& x : d_) x *= s;
    return *this;
  }

  friend Jet2 operator-(const Jet2& a) {
    Jet2 r;
    for (int i = 0; i < kSlots; ++i) r.d_[i] = -a.d_[i];
    return r;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, T b) {
    a.d_[0] += b;
    return a;
  }
  friend Jet2 operator+(T a, Jet2 b) {
    b.d_[0] += a;
    return b;
  }
  friend Jet2 operator-(Jet2 a, T b) {
    a.d_[0] -= b;
    return a;
  }
  friend Jet2 operator-(T a, const Jet2& b) { return (-b) + a; }
  friend Jet2 operator*(Jet2 a, T s) { return a *= s; }
  friend Jet2 operator*(T s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, T s) {
    if (s == T(0)) throw Singularity("Singularity: division by zero");
    return a *= T(1) / s;
  }
  friend Jet2 operator/(T s, const Jet2& b) { return s * reciprocal(b); }

  friend Jet2 operator*(const Jet2& f, const Jet2& g) {
    using jet_detail::binom;
    using jet_detail::kDegrees;
    using jet_detail::slot;
    Jet2 r;
    for (int k = 0; k < kSlots; ++k) {
      const int a = kDegrees[k].a;
      const int b = kDegrees[k].b;
      T acc(0);
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j)
          acc += T(binom(a, i) * binom(b, j)) * f.d_[slot(i, j)] * g.d_[slot(a - i, b - j)];
      r.d_[k] = acc;
    }
    return r;
  }

  friend Jet2 operator/(const Jet2& f, const Jet2& g) { return f * reciprocal(g); }

  friend bool operator==(const Jet2& a, const Jet2& b) { return a.d_ == b.d_; }

  // Composition phi(g) given phi and its first three derivatives at g.value().
  static Jet2 compose(const Jet2& g, T p0, T p1, T p2, T p3) {
    using jet_detail::kDegrees;
    using jet_detail::slot;
    Jet2 r;
    r.d_[0] = p0;
    for (int k = 1; k < kSlots; ++k) {
      const int a = kDegrees[k].a;
      const int b = kDegrees[k].b;
      // Directions of the k-th derivative: a copies of u followed by b copies of v.
      std::array<int, 3> dir{};
      const int n = a + b;
      for (int t = 0; t < n; ++t) dir[t] = t < a ? 0 : 1;
      auto gd = [&](std::initializer_list<int> ds) -> T {
        int cu = 0, cv = 0;
        for (int d : ds) (d == 0 ? cu : cv)++;
        return g.d_[slot(cu, cv)];
      };
      if (n == 1) {
        r.d_[k] = p1 * gd({dir[0]});
      } else if (n == 2) {
        r.d_[k] = p2 * gd({dir[0]}) * gd({dir[1]}) + p1 * gd({dir[0], dir[1]});
      } else {
        r.d_[k] = p3 * gd({dir[0]}) * gd({dir[1]}) * gd({dir[2]}) +
                  p2 * (gd({dir[0], dir[1]}) * gd({dir[2]}) + gd({dir[0], dir[2]}) * gd({dir[1]}) +
                        gd({dir[1], dir[2]}) * gd({dir[0]})) +
                  p1 * gd({dir[0], dir[1], dir[2]});
      }
    }
    return r;
  }

  friend Jet2 reciprocal(const Jet2& g) {
    const T x = g.value();
    if (x == T(0)) throw Singularity("Singularity: division by a jet with zero value");
    const T r = T(1) / x;
    return compose(g, r, -r * r, T(2) * r * r * r, T(-6) * r * r * r * r);
  }

 private:
  std::array<T, kSlots> d_;
};

template <typename T>
const T& value_of(const Jet2<T>& j) {
  return j.value();
}
inline double value_of(double x) { return x; }

// Shifted derivatives. The degree-3 slots of the result are zero (unknown).
template <typename T>
Jet2<T> d_u(const Jet2<T>& f) {
  using jet_detail::slot;
  std::array<T, 10> s{};
  for (int n = 0; n <= 2; ++n)
    for (int b = 0; b <= n; ++b) s[slot(n - b, b)] = f.partial(n - b + 1, b);
  return Jet2<T>::from_slots(s);
}

template <typename T>
Jet2<T> d_v(const Jet2<T>& f) {
  using jet_detail::slot;
  std::array<T, 10> s{};
  for (int n = 0; n <= 2; ++n)
    for (int b = 0; b <= n; ++b) s[slot(n - b, b)] = f.partial(n - b, b + 1);
  return Jet2<T>::from_slots(s);
}

template <typename T>
Jet2<T> sin(const Jet2<T>& g) {
  const T s = std::sin(g.value()), c = std::cos(g.value());
  return Jet2<T>::compose(g, s, c, -s, -c);
}

template <typename T>
Jet2<T> cos(const Jet2<T>& g) {
  const T s = std::sin(g.value()), c = std::cos(g.value());
  return Jet2<T>::compose(g, c, -s, -c, s);
}

template <typename T>
Jet2<T> tan(const Jet2<T>& g) {
  if (std::abs(std::cos(g.value())) < T(1e-12)) throw Singularity("Singularity: tan at a pole");
  const T t = std::tan(g.value());
  const T s = T(1) + t * t;
  return Jet2<T>::compose(g, t, s, T(2) * t * s, (T(2) + T(6) * t * t) * s);
}

template <typename T>
Jet2<T> sinh(const Jet2<T>& g) {
  const T s = std::sinh(g.value()), c = std::cosh(g.value());
  return Jet2<T>::compose(g, s, c, s, c);
}

template <typename T>
Jet2<T> cosh(const Jet2<T>& g) {
  const T s = std::sinh(g.value()), c = std::cosh(g.value());
  return Jet2<T>::compose(g, c, s, c, s);
}

template <typename T>
Jet2<T> tanh(const Jet2<T>& g) {
  const T t = std::tanh(g.value());
  const T s = T(1) - t * t;
  return Jet2<T>::compose(g, t, s, T(-2) * t * s, (T(6) * t * t - T(2)) * s);
}

template <typename T>
Jet2<T> exp(const Jet2<T>& g) {
  const T e = std::exp(g.value());
  return Jet2<T>::compose(g, e, e, e, e);
}

template <typename T>
Jet2<T> log(const Jet2<T>& g) {
  const T x = g.value();
  if (!(x > T(0))) throw Singularity("Singularity: ln of a non-positive value");
  const T r = T(1) / x;
  return Jet2<T>::compose(g, std::log(x), r, -r * r, T(2) * r * r * r);
}

template <typename T>
Jet2<T> sqrt(const Jet2<T>& g) {
  const T x = g.value();
  if (!(x > T(0))) throw Singularity("Singularity: sqrt of a non-positive value");
  const T s = std::sqrt(x);
  return Jet2<T>::compose(g, s, T(0.5) / s, T(-0.25) / (s * x), T(0.375) / (s * x * x));
}

// g^p for a constant real exponent. Non-integer exponents need a positive base.
template <typename T>
Jet2<T> pow_const(const Jet2<T>& g, T p) {
  const T x = g.value();
  const bool integral = std::floor(p) == p;
  if (!integral && !(x > T(0))) throw Singularity("Singularity: non-integer power of a non-positive value");
  if (x == T(0) && p < T(0)) throw Singularity("Singularity: negative power of zero");
  // For integral p >= 0 at x = 0, every slot with a negative exponent carries a zero factor.
  auto pw = [&](T e) -> T { return (x == T(0) && e < T(0)) ? T(0) : std::pow(x, e); };
  return Jet2<T>::compose(g, pw(p), p * pw(p - 1), p * (p - 1) * pw(p - 2), p * (p - 1) * (p - 2) * pw(p - 3));
}

// |g| for a jet whose value is away from zero.
template <typename T>
Jet2<T> abs(const Jet2<T>& g) {
  return g.value() < T(0) ? -g : g;
}

using Jet = Jet2<double>;

}  // namespace dsgauss

namespace Eigen {

template <typename T>
struct NumTraits<dsgauss::Jet2<T>> : NumTraits<T> {
  using Real = dsgauss::Jet2<T>;
  using NonInteger = dsgauss::Jet2<T>;
  using Nested = dsgauss::Jet2<T>;
  using Literal = dsgauss::Jet2<T>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10 * NumTraits<T>::ReadCost,
    AddCost = 10 * NumTraits<T>::AddCost,
    MulCost = 100 * NumTraits<T>::MulCost
  };
  static inline Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<T>::highest()); }
  static inline Real lowest() { return Real(NumTraits<T>::lowest()); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<dsgauss::Jet2<T>, T, BinaryOp> {
  using ReturnType = dsgauss::Jet2<T>;
};

template <typename T, typename BinaryOp>
struct ScalarBinaryOpTraits<T, dsgauss::Jet2<T>, BinaryOp> {
  using ReturnType = dsgauss::Jet2<T>;
};

}  // namespace Eigen
