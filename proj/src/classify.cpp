#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include <Eigen/SVD>

#include "dsgauss/catalog.hpp"
#include "dsgauss/gauss_map.hpp"

namespace dsgauss {

namespace {

struct Stats {
  double mean = 0.0;
  double sd = 0.0;
  double max_abs = 0.0;
};

template <typename F>
Stats stats(const std::vector<GaussMapSample>& s, F f) {
  Stats r;
  if (s.empty()) return r;
  for (const auto& x : s) {
    r.mean += f(x);
    r.max_abs = std::max(r.max_abs, std::abs(f(x)));
  }
  r.mean /= static_cast<double>(s.size());
  for (const auto& x : s) r.sd += (f(x) - r.mean) * (f(x) - r.mean);
  r.sd = std::sqrt(r.sd / static_cast<double>(s.size()));
  return r;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Smallest right singular vector of the centred, metric-weighted positions:
// eta with eta . (x - mean) ~ 0, i.e. <x, c0> constant for c0 = J eta.
HyperplaneSection find_hyperplane(const std::vector<GaussMapSample>& s, double tol, int& null_dim) {
  HyperplaneSection out;
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd X(n, 5);
  for (Eigen::Index k = 0; k < n; ++k) X.row(k) = s[static_cast<std::size_t>(k)].x.components().transpose();
  const Eigen::RowVectorXd mean = X.colwise().mean();
  X.rowwise() -= mean;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues() / std::sqrt(static_cast<double>(n));
  const double scale = 1.0 + X.cwiseAbs().maxCoeff() + mean.cwiseAbs().maxCoeff();

  null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= tol * scale) ++null_dim;
  out.residual = sv[sv.size() - 1];
  if (null_dim == 0) return out;

  Eigen::VectorXd eta = svd.matrixV().col(4);
  Eigen::Index big = 0;
  eta.cwiseAbs().maxCoeff(&big);
  if (eta[big] < 0) eta = -eta;
  Eigen::VectorXd c0 = eta;
  c0[0] = -c0[0];
  out.found = true;
  out.c0 = SemiVector<double>(kMinkowski5, c0);
  double c = 0.0;
  for (const auto& x : s) c += inner(x.x, out.c0);
  out.c = c / static_cast<double>(n);
  out.xi_norm = inner(out.c0, out.c0) - out.c * out.c;
  return out;
}

}  // namespace

GridSamples sample_grid(const SurfaceSpec& spec, DiffMode mode, int threads) {
  const auto points = sample_points(spec);
  const int n = static_cast<int>(points.size());
  std::vector<std::optional<GaussMapSample>> results(static_cast<std::size_t>(n));
  std::vector<std::string> reasons(static_cast<std::size_t>(n));
  std::vector<std::optional<double>> off_manifold(static_cast<std::size_t>(n));

  parallel_for(n, threads, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const auto [u, v] = points[k];
    try {
      results[k] = gauss_map_sample(spec, u, v, mode);
    } catch (const NotInDeSitter& e) {
      off_manifold[k] = e.defect();
    } catch (const GeometryError& e) {
      reasons[k] = e.what();
    } catch (const Singularity& e) {
      reasons[k] = e.what();
    } catch (const StencilOutsideDomain& e) {
      reasons[k] = e.what();
    }
  });

  GridSamples out;
  out.total = n;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (off_manifold[k]) throw NotInDeSitter(*off_manifold[k]);
    if (results[k])
      out.samples.push_back(std::move(*results[k]));
    else
      out.skipped.push_back({points[k].first, points[k].second, reasons[k]});
  }
  return out;
}

ClassificationReport classify(const SurfaceSpec& spec, const ClassifyOptions& options) {
  ClassificationReport r;
  r.surface_id = options.surface_id;
  r.spec = spec;
  r.mode = options.mode;
  r.tol = options.tol ? *options.tol : Tolerances::for_mode(options.mode);

  GridSamples grid = sample_grid(spec, options.mode, options.threads);
  r.samples = std::move(grid.samples);
  r.skipped = std::move(grid.skipped);
  const int n = grid.total;
  if (static_cast<double>(r.skipped.size()) > kMaxSkippedFraction * n)
    throw ValidationError("ValidationError: " + std::to_string(r.skipped.size()) + " of " + std::to_string(n) +
                          " grid points are degenerate");
  if (static_cast<int>(r.samples.size()) < kMinTypeSamples)
    throw ValidationError("ValidationError: only " + std::to_string(r.samples.size()) + " valid grid points");

  const auto& S = r.samples;
  const Stats K = stats(S, [](const GaussMapSample& s) { return s.K; });
  const Stats f = stats(S, [](const GaussMapSample& s) { return s.f_value; });
  r.K_mean = K.mean;
  r.K_std = K.sd;
  r.f_mean = f.mean;
  r.f_std = f.sd;
  double H_norm_max = 0.0;
  r.H_min = S.front().H_max;
  bool light_like = true;
  for (const auto& s : S) {
    r.residual_formula_max = std::max(r.residual_formula_max, s.residual_formula);
    r.residual_ambient_max = std::max(r.residual_ambient_max, s.residual_ambient);
    r.residual_eigen_max = std::max(r.residual_eigen_max, s.residual_eigen);
    r.membership_max = std::max(r.membership_max, std::abs(inner(s.x, s.x) - 1.0));
    r.HH_max = std::max(r.HH_max, std::abs(s.HH));
    r.H_min = std::min(r.H_min, s.H_max);
    r.DH_max = std::max(r.DH_max, s.DH);
    r.RD_max = std::max(r.RD_max, std::abs(s.RD));
    r.codazzi_max = std::max(r.codazzi_max, s.codazzi);
    r.brioschi_max = std::max(r.brioschi_max, std::abs(s.K - s.K_brioschi));
    H_norm_max = std::max(H_norm_max, s.H_norm);
    light_like = light_like && std::abs(s.HH) <= r.tol.geometry * (1.0 + s.H_norm * s.H_norm);
  }

  const double geom = r.tol.geometry;
  r.quasi_minimal = light_like && r.H_min > 1e3 * geom;
  r.parallel_H = r.DH_max <= geom * (1.0 + H_norm_max);
  r.flat_normal_bundle = r.RD_max <= geom;

  const PointwiseVerdict pw = pointwise_type_test(S, r.tol.type);
  const GlobalVerdict gv = global_type_test(S, r.tol.type, r.quasi_minimal);
  r.scale = pw.scale;
  r.pw1type = pw.pw1type;
  r.proper = pw.proper;
  r.global_1type = gv.global;
  r.lambda = gv.lambda;
  if (gv.eigenvalue_outside_2_4)
    r.diagnostics.push_back("quasi-minimal global 1-type with lambda = " + fmt(*gv.lambda) + " outside {2, 4}");
  if (r.residual_formula_max > 1e-6 * r.scale || r.residual_ambient_max > 1e-6 * r.scale)
    r.diagnostics.push_back("Laplacian routes disagree: formula " + fmt(r.residual_formula_max) + ", ambient " +
                            fmt(r.residual_ambient_max));

  // Region membership tests.
  const double constancy = 10.0 * r.tol.type * r.scale;
  const Stats ka = stats(S, [](const GaussMapSample& s) { return s.x[4] - s.x[0]; });
  r.in_Ka = ka.sd <= geom;
  double lc = 0.0;
  for (const auto& s : S) {
    const double y2 = inner(s.x, s.x) - s.x[4] * s.x[4];
    lc = std::max({lc, std::abs(s.x[4] - 1.0), std::abs(y2)});
  }
  r.in_LC1 = lc <= geom;
  r.family_match = match_family(spec);

  int null_dim = 0;
  r.section = find_hyperplane(S, geom, null_dim);
  if (r.section.found) {
    r.section.probe = sphere_intersection_probe(spec, r.section.c0, sample_points(spec), options.mode);
    const char* kind = r.section.xi_norm > geom ? "sphere" : r.section.xi_norm < -geom ? "hyperbolic" : "degenerate";
    r.diagnostics.push_back(std::string("hyperplane section <x, c0> = ") + fmt(r.section.c) + ", <xi, xi> = " +
                            fmt(r.section.xi_norm) + " (" + kind + " type" +
                            (null_dim > 1 ? ", " + std::to_string(null_dim) + " independent hyperplanes" : "") + ")");
  }
  if (options.fit_constant) r.best_fit_C = best_fit_constant(S);

  const bool curvature_one = std::abs(r.K_mean - 1.0) <= constancy && r.K_std <= constancy;
  if (!r.quasi_minimal) {
    r.diagnostics.push_back("not quasi-minimal: the classification theorems do not apply");
  } else if (r.global_1type) {
    if (r.in_Ka && curvature_one)
      r.theorem_case = TheoremCase::KaSlice;
    else if (r.in_LC1 && curvature_one)
      r.theorem_case = TheoremCase::LightconeSlice;
    else if (r.family_match)
      r.theorem_case = *r.family_match;
    else
      r.diagnostics.push_back("global 1-type but no K_a, LC_1 or explicit-family match");
  } else if (r.proper) {
    if (r.section.found && r.section.xi_norm > geom)
      r.theorem_case = TheoremCase::SphereIntersection;
    else if (r.section.found && r.section.xi_norm < -geom)
      r.theorem_case = TheoremCase::HyperbolicIntersection;
    else
      r.diagnostics.push_back("proper pointwise 1-type but no hyperplane section found");
  } else {
    r.diagnostics.push_back("Gauss map is not of pointwise 1-type");
  }
  return r;
}

}  // namespace dsgauss
