#include "dsgauss/gauss_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace dsgauss {

namespace {

JetVector partial(const JetVector& f, bool along_u) {
  VectorX<Jet> c(f.dim());
  for (int i = 0; i < f.dim(); ++i) c[i] = along_u ? d_u(f[i]) : d_v(f[i]);
  return JetVector(f.signature(), c);
}

// sqrt(det g) and sqrt(det g) g^{-1} as jets, valid through second order.
struct MetricDensity {
  Jet sg;
  Eigen::Matrix<Jet, 2, 2> W;
};

MetricDensity metric_density(const JetVector& x) {
  const JetVector Xu = partial(x, true);
  const JetVector Xv = partial(x, false);
  const Jet E = inner(Xu, Xu), F = inner(Xu, Xv), G = inner(Xv, Xv);
  const Jet det = E * G - F * F;
  if (!(det.value() > 0)) throw NotSpacelike("induced metric is not positive definite");
  MetricDensity m;
  m.sg = sqrt(det);
  const Jet s = m.sg / det;
  m.W << G * s, -F * s, -F * s, E * s;
  return m;
}

double laplace_beltrami(const MetricDensity& m, const Jet& f) {
  const Jet fu = d_u(f), fv = d_v(f);
  const Jet div = d_u(m.W(0, 0) * fu + m.W(0, 1) * fv) + d_v(m.W(1, 0) * fu + m.W(1, 1) * fv);
  return -div.value() / m.sg.value();
}

double max_abs(const SemiVector<double>& v) { return v.components().cwiseAbs().maxCoeff(); }

void mean_std(std::span<const GaussMapSample> s, double GaussMapSample::*field, double& mean, double& sd) {
  mean = sd = 0.0;
  if (s.empty()) return;
  for (const auto& x : s) mean += x.*field;
  mean /= static_cast<double>(s.size());
  for (const auto& x : s) sd += (x.*field - mean) * (x.*field - mean);
  sd = std::sqrt(sd / static_cast<double>(s.size()));
}

}  // namespace

Bivector gauss_map(const FramedPoint& p) { return wedge(p.e1, p.e2); }

double laplace_beltrami(const JetVector& x, const Jet& field) { return laplace_beltrami(metric_density(x), field); }

Bivector laplacian_direct(const JetVector& x) {
  const MetricDensity m = metric_density(x);
  const KVector<Jet> nu = wedge(partial(x, true), partial(x, false)) * reciprocal(m.sg);
  Bivector out(x.signature(), 2);
  for (int r = 0; r < nu.size(); ++r) out[r] = laplace_beltrami(m, nu[r]);
  return out;
}

Bivector laplacian_direct(const SurfaceSpec& spec, double u0, double v0, DiffMode mode) {
  return laplacian_direct(position_jet(spec, u0, v0, mode));
}

double type_function(const ShapeData& s) { return 4.0 - 2.0 * s.K + 4.0 * inner(s.H, s.H); }

Bivector laplacian_formula(const FramedPoint& p, const ShapeData& s) {
  return type_function(s) * gauss_map(p) - 2.0 * s.RD * wedge(p.e3, p.e4) - 2.0 * wedge(s.DH[0], p.e2) -
         2.0 * wedge(p.e1, s.DH[1]);
}

Bivector laplacian_ambient(const FramedPoint& p, const AmbientShapeData& a) {
  const std::array<const SemiVector<double>*, 3> n{&p.e3, &p.e4, &p.x};
  Bivector out = a.hhat_norm2 * gauss_map(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) out += (a.eps[i] * a.eps[j] * a.RDhat(i, j)) * wedge(*n[i], *n[j]);
  return out - 2.0 * wedge(a.DHhat[0], p.e2) - 2.0 * wedge(p.e1, a.DHhat[1]);
}

Tolerances Tolerances::for_mode(DiffMode mode) { return from_type_tol(mode == DiffMode::Jet ? 1e-5 : 1e-3); }

Tolerances Tolerances::from_type_tol(double tol) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  Tolerances t;
  t.type = tol;
  t.geometry = tol / 10.0;
  return t;
}

GaussMapSample gauss_map_sample(const FramedPoint& p) {
  const ShapeData s = shape_at(p);
  const AmbientShapeData a = ambient_shape_at(p);
  GaussMapSample g;
  g.u = p.u;
  g.v = p.v;
  g.x = p.x;
  g.nu = gauss_map(p);
  g.lap_direct = laplacian_direct(p.jets);
  g.lap_formula = laplacian_formula(p, s);
  g.lap_ambient = laplacian_ambient(p, a);
  g.f_value = type_function(s);
  g.residual_formula = euclidean_norm(g.lap_direct - g.lap_formula);
  g.residual_ambient = euclidean_norm(g.lap_direct - g.lap_ambient);
  g.residual_eigen = euclidean_norm(g.lap_direct - g.f_value * g.nu);
  g.K = s.K;
  g.K_brioschi = gauss_curvature_brioschi(p.jets);
  g.HH = inner(s.H, s.H);
  g.H_norm = euclidean_norm(s.H);
  g.H_max = max_abs(s.H);
  g.DH = std::max(euclidean_norm(s.DH[0]), euclidean_norm(s.DH[1]));
  g.RD = s.RD;
  g.RD_ricci = s.RD_ricci;
  g.codazzi = codazzi_residual(p);
  g.h_asymmetry = s.h_asymmetry;
  g.gram_defect = frame_gram_defect(p);
  g.nu_norm = induced_inner(g.nu, g.nu);
  return g;
}

GaussMapSample gauss_map_sample(const SurfaceSpec& spec, double u0, double v0, DiffMode mode) {
  return gauss_map_sample(frame_at(spec, u0, v0, mode));
}

PointwiseVerdict pointwise_type_test(std::span<const GaussMapSample> samples, double tol) {
  if (static_cast<int>(samples.size()) < kMinTypeSamples)
    throw InputError("pointwise_type_test: needs at least " + std::to_string(kMinTypeSamples) + " samples");
  PointwiseVerdict r;
  double lap_max = 0.0;
  for (const auto& s : samples) {
    lap_max = std::max(lap_max, euclidean_norm(s.lap_direct));
    r.residual_max = std::max(r.residual_max, s.residual_eigen);
  }
  r.scale = 1.0 + lap_max;
  mean_std(samples, &GaussMapSample::f_value, r.f_mean, r.f_std);
  r.pw1type = r.residual_max <= tol * r.scale;
  r.proper = r.pw1type && r.f_std > 10.0 * tol * r.scale;
  return r;
}

GlobalVerdict global_type_test(std::span<const GaussMapSample> samples, double tol, bool quasi_minimal) {
  const PointwiseVerdict pw = pointwise_type_test(samples, tol);
  GlobalVerdict r;
  r.global = pw.pw1type && !pw.proper;
  if (!r.global) return r;
  r.lambda = pw.f_mean;
  const double band = 10.0 * tol * pw.scale;
  r.eigenvalue_outside_2_4 = quasi_minimal && std::abs(pw.f_mean - 2.0) > band && std::abs(pw.f_mean - 4.0) > band;
  return r;
}

Bivector best_fit_constant(std::span<const GaussMapSample> samples) {
  Bivector num(kMinkowski5, 2);
  double den = 0.0;
  for (const auto& s : samples) {
    num += s.f_value * (s.lap_direct - s.f_value * s.nu);
    den += s.f_value * s.f_value;
  }
  if (!(den > 0)) return Bivector(kMinkowski5, 2);
  return (1.0 / den) * num;
}

const char* to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::CaseI: return "CASE_I";
    case TheoremCase::CaseII: return "CASE_II";
    case TheoremCase::CaseIII: return "CASE_III";
    case TheoremCase::CaseIV: return "CASE_IV";
    case TheoremCase::KaSlice: return "K_A_SLICE";
    case TheoremCase::LightconeSlice: return "LIGHTCONE_SLICE";
    case TheoremCase::SphereIntersection: return "SPHERE_INTERSECTION";
    case TheoremCase::HyperbolicIntersection: return "HYPERBOLIC_INTERSECTION";
    case TheoremCase::Unclassified: return "UNCLASSIFIED";
  }
  return "UNCLASSIFIED";
}

int default_thread_count() {
  if (const char* env = std::getenv("DSGAUSS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = default_thread_count();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace dsgauss
