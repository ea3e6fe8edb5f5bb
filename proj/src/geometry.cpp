#include "dsgauss/geometry.hpp"

#include <cmath>

namespace dsgauss {

namespace {

JetVector map_components(const JetVector& f, Jet (*op)(const Jet&)) {
  VectorX<Jet> c(f.dim());
  for (int i = 0; i < f.dim(); ++i) c[i] = op(f[i]);
  return JetVector(f.signature(), c);
}

Jet du_jet(const Jet& f) { return d_u(f); }
Jet dv_jet(const Jet& f) { return d_v(f); }

// Orthogonal projection onto span{e3, e4} (signs -1, +1).
JetVector normal_part(const FramedPoint& p, const JetVector& w) {
  const auto& n3 = p.frame_jets[2];
  const auto& n4 = p.frame_jets[3];
  return (-inner(w, n3)) * n3 + inner(w, n4) * n4;
}

struct LocalShape {
  // D_i e_j as ambient vector fields, valid through first order.
  std::array<std::array<JetVector, 2>, 2> De{{{JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)},
                                              {JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)}}};
  // h^a_ij, a = 0 (e3), 1 (e4), with h12 symmetrised.
  std::array<Eigen::Matrix<Jet, 2, 2>, 2> A;
  // h(e_i, e_j) as normal vector fields (symmetrised).
  std::array<std::array<JetVector, 2>, 2> h{{{JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)},
                                             {JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)}}};
  JetVector H = JetVector::zero(kMinkowski5);
  double asymmetry = 0.0;
  // Gamma[i][j][k] = <D_i e_j, e_k> (values)
  double Gamma[2][2][2] = {};
};

LocalShape local_shape(const FramedPoint& p) {
  LocalShape s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s.De[i][j] = directional(p, i, p.frame_jets[j]);

  const std::array<const JetVector*, 2> normals{&p.frame_jets[2], &p.frame_jets[3]};
  for (int a = 0; a < 2; ++a) {
    const Jet h11 = inner(s.De[0][0], *normals[a]);
    const Jet h22 = inner(s.De[1][1], *normals[a]);
    const Jet h12 = inner(s.De[0][1], *normals[a]);
    const Jet h21 = inner(s.De[1][0], *normals[a]);
    const Jet sym = 0.5 * (h12 + h21);
    s.A[a] << h11, sym, sym, h22;
    s.asymmetry += std::pow(value_of(h12) - value_of(h21), 2);
  }
  s.asymmetry = std::sqrt(s.asymmetry);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      s.h[i][j] = (-s.A[0](i, j)) * p.frame_jets[2] + s.A[1](i, j) * p.frame_jets[3];
  s.H = 0.5 * (s.h[0][0] + s.h[1][1]);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) s.Gamma[i][j][k] = value_of(inner(s.De[i][j], p.frame_jets[k]));
  return s;
}

Eigen::Matrix2d values2(const Eigen::Matrix<Jet, 2, 2>& m) {
  Eigen::Matrix2d r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = value_of(m(i, j));
  return r;
}

// <[A, B] e1, e2> for shape matrices in an orthonormal tangent frame.
double commutator12(const Eigen::Matrix2d& A, const Eigen::Matrix2d& B) { return (B * A - A * B)(0, 1); }

}  // namespace

const SemiVector<double>& FramedPoint::e(int i) const {
  switch (i) {
    case 1: return e1;
    case 2: return e2;
    case 3: return e3;
    case 4: return e4;
  }
  throw InputError("FramedPoint::e: index must be 1..4");
}

Jet directional(const FramedPoint& p, int i, const Jet& f) {
  return p.tangent_coeffs(i, 0) * d_u(f) + p.tangent_coeffs(i, 1) * d_v(f);
}

JetVector directional(const FramedPoint& p, int i, const JetVector& f) {
  VectorX<Jet> c(f.dim());
  for (int k = 0; k < f.dim(); ++k) c[k] = directional(p, i, f[k]);
  return JetVector(f.signature(), c);
}

FramedPoint frame_from_jet(const JetVector& X, double u, double v) {
  if (!(X.signature() == kMinkowski5)) throw ValidationError("UnsupportedAmbient: surface geometry needs E^5_1");
  FramedPoint p;
  p.u = u;
  p.v = v;
  p.jets = X;
  p.x = values(X);

  const double n2 = p.x.components().squaredNorm();
  const double defect = std::abs(inner(p.x, p.x) - 1.0);
  if (!(defect <= kMembershipTol * (1.0 + n2))) throw NotInDeSitter(defect);

  const JetVector Xu = map_components(X, du_jet);
  const JetVector Xv = map_components(X, dv_jet);

  const auto tangent = gram_schmidt(std::vector<JetVector>{Xu, Xv});
  if (tangent.signs[0] < 0 || tangent.signs[1] < 0) throw NotSpacelike("tangent plane is not space-like");

  Eigen::Matrix<Jet, 2, 2> G;
  G << inner(Xu, Xu), inner(Xu, Xv), inner(Xu, Xv), inner(Xv, Xv);
  p.g = values2(G);
  if (!(p.g(0, 0) > 0) || !(p.g.determinant() > 0)) throw NotSpacelike("induced metric is not positive definite");

  const auto normal = complete_frame(std::vector<JetVector>{X, tangent.frame[0], tangent.frame[1]}, kMinkowski5);
  if (normal.signs[0] == normal.signs[1]) throw NotSpacelike("normal plane is not Lorentzian");
  JetVector n3 = normal.signs[0] < 0 ? normal.frame[0] : normal.frame[1];
  JetVector n4 = normal.signs[0] < 0 ? normal.frame[1] : normal.frame[0];

  Eigen::Matrix<double, 5, 5> basis;
  const std::array<SemiVector<double>, 5> cols{values(tangent.frame[0]), values(tangent.frame[1]), values(n3),
                                               values(n4), p.x};
  for (int j = 0; j < 5; ++j) basis.col(j) = cols[j].components();
  if (basis.determinant() < 0) n4 = -n4;

  p.frame_jets = {tangent.frame[0], tangent.frame[1], n3, n4};
  p.e1 = values(p.frame_jets[0]);
  p.e2 = values(p.frame_jets[1]);
  p.e3 = values(p.frame_jets[2]);
  p.e4 = values(p.frame_jets[3]);

  // e_i = sum_k E(i,k) X_k  =>  <e_i, X_l> = (E G)(i,l)  =>  E = B G^{-1}.
  Eigen::Matrix<Jet, 2, 2> B;
  for (int i = 0; i < 2; ++i) {
    B(i, 0) = inner(p.frame_jets[i], Xu);
    B(i, 1) = inner(p.frame_jets[i], Xv);
  }
  const Jet det = G(0, 0) * G(1, 1) - G(0, 1) * G(1, 0);
  Eigen::Matrix<Jet, 2, 2> Ginv;
  Ginv << G(1, 1) / det, -G(0, 1) / det, -G(1, 0) / det, G(0, 0) / det;
  p.tangent_coeffs = B * Ginv;
  return p;
}

FramedPoint frame_at(const SurfaceSpec& spec, double u0, double v0, DiffMode mode) {
  return frame_from_jet(position_jet(spec, u0, v0, mode), u0, v0);
}

ShapeData shape_at(const FramedPoint& p) {
  const LocalShape s = local_shape(p);
  ShapeData out;
  out.A3 = values2(s.A[0]);
  out.A4 = values2(s.A[1]);
  out.h = {values(s.h[0][0]), values(s.h[0][1]), values(s.h[1][1])};
  out.H = values(s.H);
  out.h_asymmetry = s.asymmetry;

  // Gauss equation in a curvature-one ambient; eps3 = -1, eps4 = +1.
  out.K = 1.0 - out.A3.determinant() + out.A4.determinant();

  std::array<Jet, 2> w34;
  for (int i = 0; i < 2; ++i) {
    out.omega12[i] = value_of(inner(s.De[i][0], p.frame_jets[1]));
    w34[i] = inner(directional(p, i, p.frame_jets[2]), p.frame_jets[3]);
    out.omega34[i] = value_of(w34[i]);
  }
  // [e1, e2] = D_1 e2 - D_2 e1 = c1 e1 + c2 e2
  const double c1 = s.Gamma[0][1][0] - s.Gamma[1][0][0];
  const double c2 = s.Gamma[0][1][1] - s.Gamma[1][0][1];
  out.RD = value_of(directional(p, 0, w34[1])) - value_of(directional(p, 1, w34[0])) -
           (c1 * out.omega34[0] + c2 * out.omega34[1]);
  out.RD_ricci = commutator12(out.A3, out.A4);

  for (int i = 0; i < 2; ++i) out.DH[i] = values(normal_part(p, directional(p, i, s.H)));
  return out;
}

AmbientShapeData ambient_shape_at(const FramedPoint& p) {
  AmbientShapeData out;
  const std::array<const JetVector*, 3> n{&p.frame_jets[2], &p.frame_jets[3], &p.jets};
  const std::array<double, 3> eps{-1.0, 1.0, 1.0};

  std::array<std::array<JetVector, 2>, 2> De{{{JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)},
                                              {JetVector::zero(kMinkowski5), JetVector::zero(kMinkowski5)}}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) De[i][j] = directional(p, i, p.frame_jets[j]);

  auto ambient_normal_part = [&](const JetVector& w) {
    JetVector r = JetVector::zero(kMinkowski5);
    for (int b = 0; b < 3; ++b) r += (eps[b] * inner(w, *n[b])) * *n[b];
    return r;
  };

  std::array<std::array<JetVector, 2>, 2> hh = De;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) hh[i][j] = ambient_normal_part(De[i][j]);
  // symmetrise the off-diagonal entry
  hh[0][1] = 0.5 * (hh[0][1] + hh[1][0]);
  hh[1][0] = hh[0][1];
  const JetVector Hhat = 0.5 * (hh[0][0] + hh[1][1]);

  out.hhat = {values(hh[0][0]), values(hh[0][1]), values(hh[1][1])};
  out.Hhat = values(Hhat);
  out.hhat_norm2 = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.hhat_norm2 += value_of(inner(hh[i][j], hh[i][j]));

  std::array<Eigen::Matrix2d, 3> A;
  for (int b = 0; b < 3; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A[b](i, j) = value_of(inner(hh[i][j], *n[b]));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out.RDhat(a, b) = commutator12(A[a], A[b]);

  for (int i = 0; i < 2; ++i) out.DHhat[i] = values(ambient_normal_part(directional(p, i, Hhat)));
  return out;
}

double codazzi_residual(const FramedPoint& p) {
  const LocalShape s = local_shape(p);
  // (nabla_a h)(e_b, e_c) = D_a h_bc - sum_k Gamma_ab^k h_kc - sum_k Gamma_ac^k h_bk
  auto cov = [&](int a, int b, int c) {
    SemiVector<double> r = values(normal_part(p, directional(p, a, s.h[b][c])));
    for (int k = 0; k < 2; ++k) {
      r -= s.Gamma[a][b][k] * values(s.h[k][c]);
      r -= s.Gamma[a][c][k] * values(s.h[b][k]);
    }
    return r;
  };
  double acc = 0.0;
  for (int c = 0; c < 2; ++c) {
    const double n = euclidean_norm(cov(0, 1, c) - cov(1, 0, c));
    acc += n * n;
  }
  return std::sqrt(acc);
}

double codazzi_residual(const SurfaceSpec& spec, double u0, double v0, DiffMode mode) {
  return codazzi_residual(frame_at(spec, u0, v0, mode));
}

double gauss_curvature_brioschi(const JetVector& X) {
  const JetVector Xu = map_components(X, du_jet);
  const JetVector Xv = map_components(X, dv_jet);
  const Jet E = inner(Xu, Xu), F = inner(Xu, Xv), G = inner(Xv, Xv);
  const double e = E.value(), f = F.value(), g = G.value();
  const double den = e * g - f * f;
  if (!(den > 0)) throw NotSpacelike("induced metric is not positive definite");

  Eigen::Matrix3d m1, m2;
  m1 << -0.5 * E.dvv() + F.duv() - 0.5 * G.duu(), 0.5 * E.du(), F.du() - 0.5 * E.dv(),  //
      F.dv() - 0.5 * G.du(), e, f,                                                     //
      0.5 * G.dv(), f, g;
  m2 << 0.0, 0.5 * E.dv(), 0.5 * G.du(),  //
      0.5 * E.dv(), e, f,                 //
      0.5 * G.du(), f, g;
  return (m1.determinant() - m2.determinant()) / (den * den);
}

double gauss_curvature_brioschi(const SurfaceSpec& spec, double u0, double v0, DiffMode mode) {
  return gauss_curvature_brioschi(position_jet(spec, u0, v0, mode));
}

double frame_gram_defect(const FramedPoint& p) {
  const std::array<const SemiVector<double>*, 5> b{&p.e1, &p.e2, &p.e3, &p.e4, &p.x};
  const std::array<double, 5> d{1, 1, -1, 1, 1};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(inner(*b[i], *b[j]) - (i == j ? d[i] : 0.0)));
  return worst;
}

ProbeReport sphere_intersection_probe(const SurfaceSpec& spec, const SemiVector<double>& c0,
                                      std::span<const std::pair<double, double>> samples, DiffMode mode) {
  if (c0.components().isZero(0.0)) throw InputError("sphere_intersection_probe: c0 must be non-zero");
  if (!(c0.signature() == kMinkowski5)) throw SignatureMismatch();
  VectorX<Jet> cj(5);
  for (int i = 0; i < 5; ++i) cj[i] = Jet(c0[i]);
  const JetVector C(kMinkowski5, cj);

  ProbeReport r;
  std::vector<double> cs, xis;
  for (const auto& [u, v] : samples) {
    FramedPoint p;
    try {
      p = frame_at(spec, u, v, mode);
    } catch (const GeometryError&) {
      ++r.points_skipped;
      continue;
    } catch (const StencilOutsideDomain&) {
      ++r.points_skipped;
      continue;
    } catch (const Singularity&) {
      ++r.points_skipped;
      continue;
    }
    const LocalShape s = local_shape(p);
    const double c = inner(p.x, c0);
    cs.push_back(c);
    r.tangency = std::max({r.tangency, std::abs(inner(c0, p.e1)), std::abs(inner(c0, p.e2))});

    const JetVector xi = inner(C, p.jets) * p.jets - C;
    xis.push_back(value_of(inner(xi, xi)));
    for (int i = 0; i < 2; ++i)
      r.parallelism = std::max(r.parallelism, euclidean_norm(normal_part(p, directional(p, i, xi))));

    Eigen::Matrix2d Axi;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) Axi(i, j) = value_of(inner(s.h[i][j], xi));
    r.shape_proportionality = std::max(r.shape_proportionality, (Axi + c * Eigen::Matrix2d::Identity()).norm());
  }
  r.points_used = static_cast<int>(cs.size());
  auto mean_std = [](const std::vector<double>& a, double& mean, double& sd) {
    mean = sd = 0.0;
    if (a.empty()) return;
    for (double x : a) mean += x;
    mean /= static_cast<double>(a.size());
    for (double x : a) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / static_cast<double>(a.size()));
  };
  mean_std(cs, r.c_mean, r.c_std);
  mean_std(xis, r.xi_norm_mean, r.xi_norm_std);
  return r;
}

}  // namespace dsgauss
