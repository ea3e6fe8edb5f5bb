#pragma once

// Gauss map nu = e1 ^ e2 of a space-like surface in S^4_1(1), its Laplacian by
// three independent routes, and the 1-type tests.
//
// Laplacian sign: Delta = -sum_i (e_i e_i - nabla_{e_i} e_i), so that
// Delta x = 2 x on a totally geodesic 2-sphere.
//
// Routes for Delta nu:
//   direct   coordinate Laplace-Beltrami applied to the ten components of
//            nu = x_u ^ x_v / sqrt(det g), all derivatives from jets;
//   formula  (4 - 2K + 4<H,H>) nu - 2 R^D(e1,e2;e3,e4) e3^e4
//            - 2 D_{e1}H ^ e2 - 2 e1 ^ D_{e2}H;
//   ambient  |hhat|^2 nu + sum_{a != b} eps_a eps_b <R^Dhat(e1,e2) n_a, n_b> n_a ^ n_b
//            - 2 Dhat_{e1}Hhat ^ e2 - 2 e1 ^ Dhat_{e2}Hhat,
//            over the E^5_1 normal frame n = (e3, e4, x).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsgauss/exterior.hpp"
#include "dsgauss/geometry.hpp"

namespace dsgauss {

using Bivector = KVector<double>;

Bivector gauss_map(const FramedPoint& p);

// Delta of a scalar field given as a jet (exact through second order), on
// the surface whose position jet is x.
double laplace_beltrami(const JetVector& x, const Jet& field);

Bivector laplacian_direct(const JetVector& x);
Bivector laplacian_direct(const SurfaceSpec& spec, double u0, double v0, DiffMode mode = DiffMode::Jet);
Bivector laplacian_formula(const FramedPoint& p, const ShapeData& s);
Bivector laplacian_ambient(const FramedPoint& p, const AmbientShapeData& a);

// f = 4 - 2K + 4<H,H> = |hhat|^2, the coefficient of nu in Delta nu.
double type_function(const ShapeData& s);

struct Tolerances {
  double type = 1e-5;        // 1-type residuals, relative to 1 + max |Delta nu|
  double geometry = 1e-6;    // quasi-minimality, parallel H, flat normal bundle
  double membership = kMembershipTol;

  static Tolerances for_mode(DiffMode mode);
  // Tolerances for a user-chosen type tolerance; geometry follows as type / 10.
  static Tolerances from_type_tol(double tol);
};

struct GaussMapSample {
  double u = 0.0;
  double v = 0.0;
  SemiVector<double> x = SemiVector<double>::zero(kMinkowski5);
  Bivector nu{kMinkowski5, 2};
  Bivector lap_direct{kMinkowski5, 2};
  Bivector lap_formula{kMinkowski5, 2};
  Bivector lap_ambient{kMinkowski5, 2};
  double f_value = 0.0;
  double residual_formula = 0.0;  // |lap_direct - lap_formula|
  double residual_ambient = 0.0;  // |lap_direct - lap_ambient|
  double residual_eigen = 0.0;    // |lap_direct - f nu|

  double K = 0.0;
  double K_brioschi = 0.0;
  double HH = 0.0;     // <H, H>
  double H_norm = 0.0; // coordinate norm of H
  double H_max = 0.0;  // max |component| of H
  double DH = 0.0;     // max_i |D_{e_i} H|
  double RD = 0.0;
  double RD_ricci = 0.0;
  double codazzi = 0.0;
  double h_asymmetry = 0.0;
  double gram_defect = 0.0;
  double nu_norm = 0.0;  // <nu, nu>
};

GaussMapSample gauss_map_sample(const FramedPoint& p);
GaussMapSample gauss_map_sample(const SurfaceSpec& spec, double u0, double v0, DiffMode mode = DiffMode::Jet);

inline constexpr int kMinTypeSamples = 16;

struct PointwiseVerdict {
  bool pw1type = false;
  bool proper = false;
  double scale = 1.0;  // 1 + max |Delta nu|
  double residual_max = 0.0;
  double f_mean = 0.0;
  double f_std = 0.0;
};

// Delta nu = f nu with f = 4 - 2K + 4<H,H> and C = 0; no constant vector is fitted.
PointwiseVerdict pointwise_type_test(std::span<const GaussMapSample> samples, double tol);

struct GlobalVerdict {
  bool global = false;
  std::optional<double> lambda;
  // Quasi-minimal with lambda away from both 2 and 4.
  bool eigenvalue_outside_2_4 = false;
};

GlobalVerdict global_type_test(std::span<const GaussMapSample> samples, double tol, bool quasi_minimal = false);

// Least-squares constant C in Delta nu = f (nu + C); diagnostic only.
Bivector best_fit_constant(std::span<const GaussMapSample> samples);

enum class TheoremCase {
  CaseI,
  CaseII,
  CaseIII,
  CaseIV,
  KaSlice,
  LightconeSlice,
  SphereIntersection,
  HyperbolicIntersection,
  Unclassified
};

const char* to_string(TheoremCase c);

struct SkippedPoint {
  double u;
  double v;
  std::string reason;
};

struct HyperplaneSection {
  bool found = false;
  SemiVector<double> c0 = SemiVector<double>::zero(kMinkowski5);
  double c = 0.0;        // <x, c0>
  double xi_norm = 0.0;  // <c0,c0> - c^2 = <xi, xi>
  double residual = 0.0; // rms deviation of <x, c0> from c
  ProbeReport probe;
};

struct ClassificationReport {
  std::string surface_id;
  SurfaceSpec spec;
  DiffMode mode = DiffMode::Jet;
  Tolerances tol;

  std::vector<GaussMapSample> samples;
  std::vector<SkippedPoint> skipped;

  double K_mean = 0, K_std = 0, f_mean = 0, f_std = 0;
  double residual_formula_max = 0, residual_ambient_max = 0, residual_eigen_max = 0;
  double scale = 1;
  double membership_max = 0, HH_max = 0, H_min = 0, DH_max = 0, RD_max = 0, codazzi_max = 0, brioschi_max = 0;

  bool quasi_minimal = false;
  bool parallel_H = false;
  bool flat_normal_bundle = false;
  bool pw1type = false;
  bool proper = false;
  bool global_1type = false;
  std::optional<double> lambda;
  TheoremCase theorem_case = TheoremCase::Unclassified;

  bool in_Ka = false;
  bool in_LC1 = false;
  std::optional<TheoremCase> family_match;
  HyperplaneSection section;
  std::optional<Bivector> best_fit_C;
  std::vector<std::string> diagnostics;
};

struct ClassifyOptions {
  DiffMode mode = DiffMode::Jet;
  std::optional<Tolerances> tol;  // defaults to Tolerances::for_mode(mode)
  std::string surface_id = "surface";
  bool fit_constant = false;
  int threads = 0;  // 0: DSGAUSS_THREADS or hardware concurrency
};

struct GridSamples {
  std::vector<GaussMapSample> samples;  // canonical grid order
  std::vector<SkippedPoint> skipped;
  int total = 0;
};

// Samples every grid point; points with a degenerate frame, a singular
// component or a stencil leaving the domain are skipped with their reason.
// Throws NotInDeSitter when any sample lies off S^4_1(1).
GridSamples sample_grid(const SurfaceSpec& spec, DiffMode mode = DiffMode::Jet, int threads = 0);

inline constexpr double kMaxSkippedFraction = 0.2;

// Full pipeline over the sample grid. Throws NotInDeSitter when a sample lies
// off S^4_1(1), and ValidationError when more than 20% of the grid is degenerate.
ClassificationReport classify(const SurfaceSpec& spec, const ClassifyOptions& options = {});

// Evaluates fn(i) for i in [0, n) on a small thread pool.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);
int default_thread_count();

}  // namespace dsgauss
