#pragma once

// Pointwise geometry of a space-like surface M in de Sitter space
// S^4_1(1) = {<x, x> = 1} inside E^5_1.
//
// Conventions
//   * e1, e2: Gram-Schmidt of (x_u, x_v); e1 is parallel to x_u.
//   * e3, e4: normal frame of M in S^4_1(1), <e3,e3> = -1, <e4,e4> = +1,
//     oriented so that det[e1, e2, e3, e4, x] > 0.
//   * h(X, Y): second fundamental form of M in S^4_1(1); h^a_ij = <h(e_i,e_j), e_a>
//     and A_a is the matrix (h^a_ij).
//   * H = (h11 + h22) / 2.
//   * omega34(X) = <D_X e3, e4>, R^D(e1,e2;e3,e4) = <R^D(e1,e2)e3, e4> with
//     R(X,Y) = [D_X, D_Y] - D_[X,Y]; by the Ricci equation this equals
//     <[A_3, A_4] e1, e2>.
//
// All fields are built as Jet2 vectors from the order-3 jet of x, so each
// quantity that needs k differentiations of x is exact to roundoff through
// order 3 - k.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dsgauss/surface_spec.hpp"

namespace dsgauss {

inline constexpr double kMembershipTol = 1e-9;

using JetVector = SemiVector<Jet>;

struct FramedPoint {
  double u = 0.0;
  double v = 0.0;
  SemiVector<double> x = SemiVector<double>::zero(kMinkowski5);
  JetVector jets = JetVector::zero(kMinkowski5);  // order-3 jet of x
  SemiVector<double> e1 = SemiVector<double>::zero(kMinkowski5);
  SemiVector<double> e2 = e1;
  SemiVector<double> e3 = e1;
  SemiVector<double> e4 = e1;
  Eigen::Matrix2d g = Eigen::Matrix2d::Identity();
  std::array<int, 4> eps{1, 1, -1, 1};

  // Frame fields e1..e4 as jets, exact through second order.
  std::vector<JetVector> frame_jets;
  // e_i = tangent_coeffs(i, 0) x_u + tangent_coeffs(i, 1) x_v
  Eigen::Matrix<Jet, 2, 2> tangent_coeffs;

  const SemiVector<double>& e(int i) const;  // 1-based, i in 1..4
};

struct ShapeData {
  std::array<SemiVector<double>, 3> h{SemiVector<double>::zero(kMinkowski5), SemiVector<double>::zero(kMinkowski5),
                                      SemiVector<double>::zero(kMinkowski5)};  // h11, h12, h22
  SemiVector<double> H = SemiVector<double>::zero(kMinkowski5);
  double K = 0.0;
  std::array<double, 2> omega12{};
  std::array<double, 2> omega34{};
  double RD = 0.0;        // from d omega34
  double RD_ricci = 0.0;  // <[A_3, A_4] e1, e2>
  std::array<SemiVector<double>, 2> DH{SemiVector<double>::zero(kMinkowski5), SemiVector<double>::zero(kMinkowski5)};
  Eigen::Matrix2d A3 = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d A4 = Eigen::Matrix2d::Zero();
  double h_asymmetry = 0.0;  // |h(e1,e2) - h(e2,e1)| before symmetrisation
};

// Same quantities for M viewed as a codimension-3 submanifold of E^5_1 with
// normal frame n = (e3, e4, x), signs (-1, +1, +1).
struct AmbientShapeData {
  std::array<SemiVector<double>, 3> hhat{SemiVector<double>::zero(kMinkowski5), SemiVector<double>::zero(kMinkowski5),
                                         SemiVector<double>::zero(kMinkowski5)};
  SemiVector<double> Hhat = SemiVector<double>::zero(kMinkowski5);
  double hhat_norm2 = 0.0;  // sum_ij <hhat_ij, hhat_ij>
  // RDhat(a, b) = <R^Dhat(e1, e2) n_a, n_b>, antisymmetric.
  Eigen::Matrix3d RDhat = Eigen::Matrix3d::Zero();
  std::array<SemiVector<double>, 2> DHhat{SemiVector<double>::zero(kMinkowski5),
                                          SemiVector<double>::zero(kMinkowski5)};
  std::array<int, 3> eps{-1, 1, 1};
};

// Builds the adapted frame from an order-3 jet of x at (u, v).
// Throws NotInDeSitter, DegenerateFrame, NotSpacelike, ValidationError (ambient not E^5_1).
FramedPoint frame_from_jet(const JetVector& x, double u, double v);
FramedPoint frame_at(const SurfaceSpec& spec, double u0, double v0, DiffMode mode = DiffMode::Jet);

// e_i(f) for a jet field f; drops one order of validity.
Jet directional(const FramedPoint& p, int i, const Jet& f);
JetVector directional(const FramedPoint& p, int i, const JetVector& f);

ShapeData shape_at(const FramedPoint& p);
AmbientShapeData ambient_shape_at(const FramedPoint& p);

// |(nabla_e1 h)(e2, Z) - (nabla_e2 h)(e1, Z)| over Z in {e1, e2}.
double codazzi_residual(const FramedPoint& p);
double codazzi_residual(const SurfaceSpec& spec, double u0, double v0, DiffMode mode = DiffMode::Jet);

// Gaussian curvature from the first fundamental form alone.
double gauss_curvature_brioschi(const JetVector& x);
double gauss_curvature_brioschi(const SurfaceSpec& spec, double u0, double v0, DiffMode mode = DiffMode::Jet);

// max |<e_a, e_b> - diag(1,1,-1,1,1)| over the basis (e1, e2, e3, e4, x).
double frame_gram_defect(const FramedPoint& p);

struct ProbeReport {
  double tangency = 0.0;           // max |<c0, e_i>|
  double c_mean = 0.0;             // mean <x, c0>
  double c_std = 0.0;              // std <x, c0>
  double parallelism = 0.0;        // max |D_X xi|
  double shape_proportionality = 0.0;  // max |A_xi + <c0, x> I|
  double xi_norm_mean = 0.0;       // mean <xi, xi>
  double xi_norm_std = 0.0;        // std <xi, xi>
  int points_used = 0;
  int points_skipped = 0;
};

// Diagnostics for the normal field xi = <c0, x> x - c0 attached to a
// hyperplane section {<x, c0> = const}. Purely a measurement.
ProbeReport sphere_intersection_probe(const SurfaceSpec& spec, const SemiVector<double>& c0,
                                      std::span<const std::pair<double, double>> samples,
                                      DiffMode mode = DiffMode::Jet);

}  // namespace dsgauss
