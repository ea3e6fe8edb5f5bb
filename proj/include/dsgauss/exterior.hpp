#pragma once

// k-vectors over E^m_s for k = 1, 2, 3, stored densely over the
// lexicographically ordered basis e_I, I = (i_1 < ... < i_k). The basis
// ordering is part of the report format and must not change.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "dsgauss/indefinite.hpp"

namespace dsgauss {

// 0-based, strictly increasing.
using MultiIndex = std::vector<int>;

inline constexpr int kMaxGrade = 3;
inline constexpr int kMaxExteriorDim = 12;

namespace detail {

inline std::vector<MultiIndex> make_indices(int m, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(k);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace detail

// Lexicographic basis of Lambda^k(E^m).
inline const std::vector<MultiIndex>& basis_indices(int m, int k) {
  if (m < 1 || m > kMaxExteriorDim || k < 1 || k > kMaxGrade)
    throw GradeError("basis_indices: unsupported (dim, grade)");
  static const auto table = [] {
    std::array<std::array<std::vector<MultiIndex>, kMaxGrade + 1>, kMaxExteriorDim + 1> t;
    for (int mm = 1; mm <= kMaxExteriorDim; ++mm)
      for (int kk = 1; kk <= kMaxGrade; ++kk) t[mm][kk] = detail::make_indices(mm, kk);
    return t;
  }();
  return table[m][k];
}

inline int multi_index_rank(int m, const MultiIndex& I) {
  const auto& idx = basis_indices(m, static_cast<int>(I.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    if (idx[r] == I) return static_cast<int>(r);
  throw GradeError("multi_index_rank: not a strictly increasing index within range");
}

// Induced self product of the basis k-vector e_I: product of the coordinate weights.
inline double basis_weight(const Signature& sig, const MultiIndex& I) {
  double w = 1.0;
  for (int i : I) w *= sig.weight(i);
  return w;
}

inline std::string format_multi_index(const MultiIndex& I) {
  std::string s;
  for (int i : I) s += std::to_string(i + 1);
  return s;
}

template <typename Scalar = double>
class KVector {
 public:
  KVector(Signature sig, int grade) : sig_(sig), grade_(grade) {
    if (grade < 1 || grade > kMaxGrade || grade > sig.dim()) throw GradeError("KVector: unsupported grade");
    coeffs_ = VectorX<Scalar>::Constant(static_cast<Eigen::Index>(indices().size()), Scalar(0));
  }
  KVector(Signature sig, int grade, VectorX<Scalar> coeffs) : KVector(sig, grade) {
    if (coeffs.size() != coeffs_.size()) throw GradeError("KVector: coefficient count differs from C(m, k)");
    coeffs_ = std::move(coeffs);
  }

  const Signature& signature() const { return sig_; }
  int grade() const { return grade_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<MultiIndex>& indices() const { return basis_indices(sig_.dim(), grade_); }
  const VectorX<Scalar>& coefficients() const { return coeffs_; }
  VectorX<Scalar>& coefficients() { return coeffs_; }

  const Scalar& operator[](int r) const { return coeffs_[r]; }
  Scalar& operator[](int r) { return coeffs_[r]; }
  const Scalar& at(const MultiIndex& I) const { return coeffs_[multi_index_rank(sig_.dim(), I)]; }

  void check(const KVector& o) const {
    if (!(sig_ == o.sig_)) throw SignatureMismatch();
    if (grade_ != o.grade_) throw GradeError("KVector: grade mismatch");
  }

  KVector& operator+=(const KVector& o) {
    check(o);
    coeffs_ += o.coeffs_;
    return *this;
  }
  KVector& operator-=(const KVector& o) {
    check(o);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  friend KVector operator+(KVector a, const KVector& b) { return a += b; }
  friend KVector operator-(KVector a, const KVector& b) { return a -= b; }
  friend KVector operator-(const KVector& a) { return KVector(a.sig_, a.grade_, -a.coeffs_); }
  friend KVector operator*(const Scalar& s, const KVector& a) { return KVector(a.sig_, a.grade_, a.coeffs_ * s); }
  friend KVector operator*(const KVector& a, const Scalar& s) { return s * a; }

 private:
  Signature sig_;
  int grade_;
  VectorX<Scalar> coeffs_;
};

template <typename Scalar>
KVector<Scalar> as_kvector(const SemiVector<Scalar>& v) {
  return KVector<Scalar>(v.signature(), 1, v.components());
}

template <typename Scalar>
KVector<double> values(const KVector<Scalar>& a) {
  VectorX<double> c(a.size());
  for (int r = 0; r < a.size(); ++r) c[r] = value_of(a[r]);
  return KVector<double>(a.signature(), a.grade(), c);
}

template <typename Scalar>
double euclidean_norm(const KVector<Scalar>& a) {
  double n = 0.0;
  for (int r = 0; r < a.size(); ++r) n += value_of(a[r]) * value_of(a[r]);
  return std::sqrt(n);
}

// A ^ v for a k-vector A and a vector v:
//   (A ^ v)_I = sum_p (-1)^(k-p) A_{I \ i_p} v_{i_p}.
template <typename Scalar>
KVector<Scalar> wedge_ext(const KVector<Scalar>& A, const SemiVector<Scalar>& v) {
  if (!(A.signature() == v.signature())) throw SignatureMismatch();
  const int k = A.grade();
  const int m = A.signature().dim();
  if (k + 1 > m || k + 1 > kMaxGrade) throw GradeError("wedge_ext: grade overflow");
  KVector<Scalar> out(A.signature(), k + 1);
  const auto& idx = out.indices();
  MultiIndex sub(k);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& I = idx[r];
    Scalar acc(0);
    for (int p = 0; p <= k; ++p) {
      for (int q = 0, t = 0; q <= k; ++q)
        if (q != p) sub[t++] = I[q];
      const Scalar term = A.at(sub) * v[I[p]];
      if ((k - p) % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    out[static_cast<int>(r)] = acc;
  }
  return out;
}

template <typename Scalar>
KVector<Scalar> wedge(const SemiVector<Scalar>& u, const SemiVector<Scalar>& v) {
  u.check(v);
  KVector<Scalar> out(u.signature(), 2);
  const auto& idx = out.indices();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const int i = idx[r][0], j = idx[r][1];
    out[static_cast<int>(r)] = u[i] * v[j] - u[j] * v[i];
  }
  return out;
}

// Inner product induced by det(<X_i, Y_j>); the basis k-vectors are mutually
// orthogonal with self products basis_weight(I).
template <typename Scalar>
Scalar induced_inner(const KVector<Scalar>& A, const KVector<Scalar>& B) {
  A.check(B);
  const auto& idx = A.indices();
  Scalar acc(0);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const int ri = static_cast<int>(r);
    const Scalar term = A[ri] * B[ri];
    if (basis_weight(A.signature(), idx[r]) < 0)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

struct InducedSpace {
  int dim;    // N = C(m, n)
  int index;  // S
};

// Dimension and index of Lambda^n(E^m_s) with its induced product. S counts
// basis n-vectors with an odd number of time-like axes.
inline InducedSpace lambda_index(int m, int s, int n) {
  if (m < 1 || s < 0 || s > m || n < 1 || n > m) throw InputError("lambda_index: invalid (m, s, n)");
  long long N = 0, S = 0;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start, int timelike) -> void {
    if (static_cast<int>(cur.size()) == n) {
      ++N;
      if (timelike % 2 == 1) ++S;
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1, timelike + (i < s ? 1 : 0));
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return {static_cast<int>(N), static_cast<int>(S)};
}

}  // namespace dsgauss
