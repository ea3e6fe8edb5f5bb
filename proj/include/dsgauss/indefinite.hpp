#pragma once

// Semi-Euclidean spaces E^m_s: vectors, the indefinite inner product, causal
// character and orthonormal frames.
//
// Everything here is templated on the scalar so that the same frame
// construction runs on doubles and on Jet2 fields. Pivot decisions always look
// at value_of(...) only, which makes the jet version a smooth local extension
// of the double version.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dsgauss/errors.hpp"
#include "dsgauss/jet.hpp"

namespace dsgauss {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class Signature {
 public:
  Signature(int dim, int index) : dim_(dim), index_(index) {
    if (dim < 1) throw InputError("Signature: dimension must be positive");
    if (index < 0 || index > dim) throw InputError("Signature: index must lie in [0, dim]");
  }

  int dim() const { return dim_; }
  int index() const { return index_; }
  // The first `index` coordinates are time-like.
  double weight(int i) const { return i < index_ ? -1.0 : 1.0; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int dim_;
  int index_;
};

inline const Signature kMinkowski5{5, 1};

template <typename Scalar = double>
class SemiVector {
 public:
  SemiVector(Signature sig, VectorX<Scalar> components) : sig_(sig), c_(std::move(components)) {
    if (c_.size() != sig_.dim()) throw InputError("SemiVector: component count differs from dimension");
  }

  static SemiVector zero(Signature sig) { return SemiVector(sig, VectorX<Scalar>::Constant(sig.dim(), Scalar(0))); }
  static SemiVector axis(Signature sig, int i) {
    auto v = zero(sig);
    v.c_[i] = Scalar(1);
    return v;
  }

  const Signature& signature() const { return sig_; }
  const VectorX<Scalar>& components() const { return c_; }
  int dim() const { return sig_.dim(); }
  const Scalar& operator[](int i) const { return c_[i]; }
  Scalar& operator[](int i) { return c_[i]; }

  SemiVector& operator+=(const SemiVector& o) {
    check(o);
    c_ += o.c_;
    return *this;
  }
  SemiVector& operator-=(const SemiVector& o) {
    check(o);
    c_ -= o.c_;
    return *this;
  }
  friend SemiVector operator+(SemiVector a, const SemiVector& b) { return a += b; }
  friend SemiVector operator-(SemiVector a, const SemiVector& b) { return a -= b; }
  friend SemiVector operator-(const SemiVector& a) { return SemiVector(a.sig_, -a.c_); }
  friend SemiVector operator*(const Scalar& s, const SemiVector& a) { return SemiVector(a.sig_, a.c_ * s); }
  friend SemiVector operator*(const SemiVector& a, const Scalar& s) { return SemiVector(a.sig_, a.c_ * s); }

  void check(const SemiVector& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch();
  }

 private:
  Signature sig_;
  VectorX<Scalar> c_;
};

// Component-wise value of a (possibly jet-valued) vector.
template <typename Scalar>
SemiVector<double> values(const SemiVector<Scalar>& v) {
  VectorX<double> c(v.dim());
  for (int i = 0; i < v.dim(); ++i) c[i] = value_of(v[i]);
  return SemiVector<double>(v.signature(), c);
}

template <typename Scalar>
Scalar inner(const SemiVector<Scalar>& a, const SemiVector<Scalar>& b) {
  a.check(b);
  Scalar acc(0);
  const int s = a.signature().index();
  for (int i = 0; i < a.dim(); ++i) {
    if (i < s)
      acc -= a[i] * b[i];
    else
      acc += a[i] * b[i];
  }
  return acc;
}

template <typename Scalar>
double norm1(const SemiVector<Scalar>& v) {
  double n = 0.0;
  for (int i = 0; i < v.dim(); ++i) n += std::abs(value_of(v[i]));
  return n;
}

// Coordinate (Euclidean) norm; used for residuals where the indefinite norm
// would hide light-like errors.
template <typename Scalar>
double euclidean_norm(const SemiVector<Scalar>& v) {
  double n = 0.0;
  for (int i = 0; i < v.dim(); ++i) n += value_of(v[i]) * value_of(v[i]);
  return std::sqrt(n);
}

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "SPACELIKE";
    case CausalCharacter::Timelike: return "TIMELIKE";
    case CausalCharacter::Lightlike: return "LIGHTLIKE";
  }
  return "?";
}

// The zero vector counts as space-like.
inline CausalCharacter causal_character(const SemiVector<double>& v, double tol) {
  if (tol < 0) throw InputError("causal_character: negative tolerance");
  if (v.components().isZero(0.0)) return CausalCharacter::Spacelike;
  const double q = inner(v, v);
  const double n1 = norm1(v);
  if (std::abs(q) <= tol * (1.0 + n1 * n1)) return CausalCharacter::Lightlike;
  return q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

template <typename Scalar>
struct OrthonormalSet {
  std::vector<SemiVector<Scalar>> frame;
  std::vector<int> signs;  // <f_i, f_i> = signs[i]
};

inline constexpr double kPivotThreshold = 1e-10;

namespace detail {

// v minus its projection onto the orthonormal set (frame, signs).
template <typename Scalar>
SemiVector<Scalar> reject(SemiVector<Scalar> v, const std::vector<SemiVector<Scalar>>& frame,
                          const std::vector<int>& signs) {
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const Scalar c = inner(v, frame[j]) * double(signs[j]);
    v -= c * frame[j];
  }
  return v;
}

// A pivot is degenerate when its self product is negligible against the
// squared 1-norm of either the pivot or the largest input vector.
inline bool degenerate_pivot(double pp, double p1, double scale1) {
  const double ref = std::max(p1 * p1, scale1 * scale1);
  return !(ref > 0.0) || !(std::abs(pp) >= kPivotThreshold * ref);
}

template <typename Scalar>
Scalar sqrt_abs(const Scalar& x) {
  using std::sqrt;
  if (value_of(x) < 0) return sqrt(-x);
  return sqrt(x);
}

}  // namespace detail

// Indefinite Gram-Schmidt. Throws DegenerateFrame naming the first input whose
// projected pivot is light-like or vanishes.
template <typename Scalar>
OrthonormalSet<Scalar> gram_schmidt(std::span<const SemiVector<Scalar>> vs) {
  OrthonormalSet<Scalar> out;
  double scale = 0.0;
  for (const auto& v : vs) scale = std::max(scale, norm1(v));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) vs[i].check(vs[0]);
    auto p = detail::reject(vs[i], out.frame, out.signs);
    const Scalar pp = inner(p, p);
    if (detail::degenerate_pivot(value_of(pp), norm1(p), scale)) throw DegenerateFrame(static_cast<int>(i));
    const int sign = value_of(pp) > 0 ? 1 : -1;
    const Scalar n = detail::sqrt_abs(pp);
    out.frame.push_back(p * (Scalar(1) / n));
    out.signs.push_back(sign);
  }
  return out;
}

template <typename Scalar>
OrthonormalSet<Scalar> gram_schmidt(const std::vector<SemiVector<Scalar>>& vs) {
  return gram_schmidt(std::span<const SemiVector<Scalar>>(vs));
}

// Extends an orthonormal set of k vectors in E^m_s by m - k vectors to an
// orthonormal basis. Coordinate axes are tried in descending order of
// |<r, r>| for their rejection r from span(partial) (ties by axis index), and
// the basis [partial, completion] is oriented to positive determinant by
// flipping the last completion vector.
template <typename Scalar>
OrthonormalSet<Scalar> complete_frame(std::span<const SemiVector<Scalar>> partial, Signature sig) {
  const int m = sig.dim();
  const int k = static_cast<int>(partial.size());
  if (k >= m) {
    if (k == m) return {};
    throw InputError("complete_frame: more vectors than the dimension");
  }

  std::vector<SemiVector<Scalar>> basis;
  std::vector<int> signs;
  for (const auto& f : partial) {
    if (!(f.signature() == sig)) throw SignatureMismatch();
    const double q = value_of(inner(f, f));
    signs.push_back(q > 0 ? 1 : -1);
    basis.push_back(f);
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> weight(m);
  for (int a = 0; a < m; ++a) {
    const auto r = detail::reject(SemiVector<Scalar>::axis(sig, a), basis, signs);
    weight[a] = std::abs(value_of(inner(r, r)));
  }
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return weight[i] > weight[j]; });

  OrthonormalSet<Scalar> out;
  for (int a : order) {
    if (static_cast<int>(out.frame.size()) == m - k) break;
    auto p = detail::reject(SemiVector<Scalar>::axis(sig, a), basis, signs);
    const Scalar pp = inner(p, p);
    if (detail::degenerate_pivot(value_of(pp), norm1(p), 1.0)) continue;
    const int sign = value_of(pp) > 0 ? 1 : -1;
    auto f = p * (Scalar(1) / detail::sqrt_abs(pp));
    basis.push_back(f);
    signs.push_back(sign);
    out.frame.push_back(f);
    out.signs.push_back(sign);
  }
  if (static_cast<int>(out.frame.size()) != m - k) throw DegenerateFrame(k + static_cast<int>(out.frame.size()));

  Eigen::MatrixXd b(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) b(i, j) = value_of(basis[j][i]);
  if (b.determinant() < 0) out.frame.back() = -out.frame.back();
  return out;
}

template <typename Scalar>
OrthonormalSet<Scalar> complete_frame(const std::vector<SemiVector<Scalar>>& partial, Signature sig) {
  return complete_frame(std::span<const SemiVector<Scalar>>(partial), sig);
}

}  // namespace dsgauss
