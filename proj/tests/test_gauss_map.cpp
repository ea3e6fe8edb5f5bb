#include <gtest/gtest.h>

#include <cmath>

#include "dsgauss/catalog.hpp"
#include "dsgauss/gauss_map.hpp"
#include "panels.hpp"
#include "test_support.hpp"

using namespace dsgauss;

namespace {

double dist(const Bivector& a, const Bivector& b) { return euclidean_norm(a - b); }

SurfaceSpec coarse(SurfaceSpec s, int n = 10) {
  s.n_u = n;
  s.n_v = n;
  return s;
}

// Synthetic samples with prescribed f and Delta nu = f nu + drift.
std::vector<GaussMapSample> synthetic(int n, const std::function<double(int)>& f,
                                      const std::function<double(int)>& off = [](int) { return 0.0; }) {
  std::vector<GaussMapSample> out(n);
  for (int i = 0; i < n; ++i) {
    auto& s = out[i];
    s.nu = wedge(SemiVector<double>::axis(kMinkowski5, 2), SemiVector<double>::axis(kMinkowski5, 3));
    s.f_value = f(i);
    s.lap_direct = s.f_value * s.nu;
    s.lap_direct[0] += off(i);
    s.residual_eigen = dist(s.lap_direct, s.f_value * s.nu);
  }
  return out;
}

}  // namespace

TEST(GaussMap, UnitSpacelikeBivector) {
  testkit::Rng rng(3);
  for (const auto& name : {"case_i", "case_ii", "case_iv", "random_poly", "clifford_torus"}) {
    const auto spec = instantiate(name);
    for (int n = 0; n < 10; ++n) {
      const double u = rng.uniform(spec.domain.u_min + 0.1, spec.domain.u_max - 0.1);
      const double v = rng.uniform(spec.domain.v_min + 0.1, spec.domain.v_max - 0.1);
      const Bivector nu = gauss_map(frame_at(spec, u, v));
      EXPECT_NEAR(induced_inner(nu, nu), 1.0, 1e-10) << name;
    }
  }
}

TEST(GaussMap, CaseThreeSupportAtOrigin) {
  // b = 0: x_u = e3 and x_v = e5 at the origin (1-based axes).
  const Bivector nu = gauss_map(frame_at(instantiate("case_iii", {{"b", 0.0}}), 0.0, 0.0));
  for (std::size_t r = 0; r < nu.indices().size(); ++r) {
    const auto& I = nu.indices()[r];
    const bool allowed = (I[0] == 1 || I[0] == 2) && (I[1] == 3 || I[1] == 4);
    if (!allowed) EXPECT_EQ(nu[static_cast<int>(r)], 0.0) << format_multi_index(I);
  }
  EXPECT_NEAR(nu.at({2, 4}), 1.0, 1e-15);
}

TEST(GaussMap, SwappingParametersReversesOrientation) {
  const auto spec = instantiate("case_iv");
  const auto swapped = swap_parameters(spec);
  const Bivector a = gauss_map(frame_at(spec, 0.2, 1.1));
  const Bivector b = gauss_map(frame_at(swapped, 1.1, 0.2));
  EXPECT_LE(dist(a, -1.0 * b), 1e-13);
}

TEST(LaplaceBeltrami, SphereCoordinates) {
  const auto spec = instantiate("geodesic_sphere");
  for (double u : {-0.7, 0.1, 0.9})
    for (double v : {0.5, 2.5}) {
      const auto x = position_jet(spec, u, v);
      for (int i = 0; i < 5; ++i) EXPECT_NEAR(laplace_beltrami(x, x[i]), 2.0 * x[i].value(), 1e-12);
      EXPECT_EQ(laplace_beltrami(x, Jet(3.0)), 0.0);
    }
}

TEST(LaplaceBeltrami, FlatTorusIsEuclidean) {
  // b = 0 is isometric to the plane: Delta = -(d_uu + d_vv).
  const auto x = position_jet(instantiate("case_iii", {{"b", 0.0}}), 0.4, 0.9);
  const Jet f = Jet::seed_u(0.4) * Jet::seed_u(0.4) * Jet::seed_v(0.9);
  EXPECT_NEAR(laplace_beltrami(x, f), -2.0 * 0.9, 1e-13);
}

TEST(Laplacian, SphereEigenvalueTwo) {
  for (const auto& name : {"case_i", "geodesic_sphere"}) {
    const auto spec = instantiate(name);
    const FramedPoint p = frame_at(spec, 0.3, 1.0);
    EXPECT_LE(dist(laplacian_direct(p.jets), 2.0 * gauss_map(p)), 1e-10) << name;
  }
}

TEST(Laplacian, FlatFamiliesEigenvalueFour) {
  for (double b : {-1.0, 0.0, 1.0}) {
    const FramedPoint p = frame_at(instantiate("case_iii", {{"b", b}}), 0.7, 2.1);
    const Bivector nu = gauss_map(p);
    EXPECT_LE(dist(laplacian_direct(p.jets), 4.0 * nu), 1e-10);
    EXPECT_LE(dist(laplacian_formula(p, shape_at(p)), 4.0 * nu), 1e-10);
  }
}

TEST(Laplacian, ThreeRoutesAgree) {
  testkit::Rng rng(21);
  std::vector<SurfaceSpec> specs = testkit::parallel_panel();
  for (int seed = 1; seed <= 5; ++seed) specs.push_back(instantiate("random_poly", {{"seed", double(seed)}}));
  for (const auto& spec : specs) {
    for (int n = 0; n < 20; ++n) {
      const double u = rng.uniform(spec.domain.u_min + 0.1, spec.domain.u_max - 0.1);
      const double v = rng.uniform(spec.domain.v_min + 0.1, spec.domain.v_max - 0.1);
      const GaussMapSample s = gauss_map_sample(spec, u, v);
      const double scale = 1 + euclidean_norm(s.lap_direct);
      EXPECT_LE(s.residual_formula, 1e-9 * scale);
      EXPECT_LE(s.residual_ambient, 1e-9 * scale);
      EXPECT_NEAR(s.residual_formula, dist(s.lap_direct, s.lap_formula), 0.0);
    }
  }
}

TEST(Laplacian, DropsNormalCurvatureTermWhenFlat) {
  // Parallel H and R^D = 0: Delta nu reduces to f nu.
  const FramedPoint p = frame_at(instantiate("clifford_torus"), 1.0, 2.0);
  const ShapeData s = shape_at(p);
  ASSERT_LE(std::abs(s.RD), 1e-12);
  EXPECT_LE(dist(laplacian_formula(p, s), type_function(s) * gauss_map(p)), 1e-12);
}

TEST(Laplacian, FiniteDifferenceMode) {
  const auto spec = instantiate("case_ii");
  const GaussMapSample s = gauss_map_sample(spec, 0.1, 1.5, DiffMode::FiniteDifference);
  EXPECT_LE(s.residual_formula, 1e-4);
  EXPECT_NEAR(s.f_value, 4.0, 1e-5);
}

TEST(TypeFunction, EqualsFourMinusTwoKPlusFourHH) {
  const GaussMapSample s = gauss_map_sample(instantiate("random_poly"), 0.1, -0.2);
  EXPECT_NEAR(s.f_value, 4 - 2 * s.K + 4 * s.HH, 1e-12);
  const GaussMapSample c = gauss_map_sample(instantiate("clifford_torus"), 0.4, 0.4);
  // r1 = 0.6, r2 = 0.8: K = 0 and <H,H> = (r2/r1 - r1/r2)^2 / 4.
  EXPECT_NEAR(c.f_value, 4 + 49.0 / 144.0, 1e-12);
}

TEST(Tolerances, ModesAndUserValue) {
  EXPECT_EQ(Tolerances::for_mode(DiffMode::Jet).type, 1e-5);
  EXPECT_EQ(Tolerances::for_mode(DiffMode::FiniteDifference).type, 1e-3);
  const Tolerances t = Tolerances::from_type_tol(2e-4);
  EXPECT_DOUBLE_EQ(t.geometry, 2e-5);
  EXPECT_THROW(Tolerances::from_type_tol(0.0), InputError);
}

TEST(TypeTests, TooFewSamples) {
  const auto s = synthetic(15, [](int) { return 4.0; });
  EXPECT_THROW(pointwise_type_test(s, 1e-5), InputError);
  EXPECT_NO_THROW(pointwise_type_test(synthetic(16, [](int) { return 4.0; }), 1e-5));
}

TEST(TypeTests, ConstantFunctionIsGlobal) {
  const auto s = synthetic(20, [](int) { return 4.0; });
  const auto pw = pointwise_type_test(s, 1e-5);
  EXPECT_TRUE(pw.pw1type);
  EXPECT_FALSE(pw.proper);
  const auto g = global_type_test(s, 1e-5, true);
  EXPECT_TRUE(g.global);
  ASSERT_TRUE(g.lambda.has_value());
  EXPECT_DOUBLE_EQ(*g.lambda, 4.0);
  EXPECT_FALSE(g.eigenvalue_outside_2_4);
}

TEST(TypeTests, DriftingFunctionIsProper) {
  const auto s = synthetic(20, [](int i) { return 3.0 + i / 19.0; });
  const auto pw = pointwise_type_test(s, 1e-5);
  EXPECT_TRUE(pw.pw1type);
  EXPECT_TRUE(pw.proper);
  EXPECT_FALSE(global_type_test(s, 1e-5).global);
}

TEST(TypeTests, ResidualBreaksPointwiseType) {
  const auto s = synthetic(20, [](int) { return 4.0; }, [](int i) { return i == 7 ? 1e-3 : 0.0; });
  EXPECT_FALSE(pointwise_type_test(s, 1e-5).pw1type);
  EXPECT_FALSE(global_type_test(s, 1e-5).global);
}

TEST(TypeTests, QuasiMinimalEigenvalueOffTwoAndFour) {
  const auto s = synthetic(20, [](int) { return 3.0; });
  EXPECT_TRUE(global_type_test(s, 1e-5, true).eigenvalue_outside_2_4);
  EXPECT_FALSE(global_type_test(s, 1e-5, false).eigenvalue_outside_2_4);
}

TEST(BestFit, ZeroOnExactEigenvectors) {
  const auto s = synthetic(20, [](int i) { return 1.0 + i; });
  EXPECT_LE(euclidean_norm(best_fit_constant(s)), 1e-15);
}

TEST(Proposition, ParallelMeanCurvatureIffPointwiseOneType) {
  int positives = 0, negatives = 0;
  for (const auto& spec : testkit::parallel_panel()) {
    const auto r = classify(spec);
    EXPECT_TRUE(r.pw1type) << dump_surface(spec);
    EXPECT_TRUE(r.parallel_H);
    positives += r.pw1type;
  }
  for (const auto& spec : testkit::nonparallel_panel()) {
    const auto r = classify(spec);
    EXPECT_FALSE(r.pw1type) << dump_surface(spec);
    EXPECT_FALSE(r.parallel_H);
    EXPECT_GE(r.DH_max, 1e-2);
    negatives += !r.pw1type;
  }
  EXPECT_GE(positives, 10);
  EXPECT_GE(negatives, 10);
}

TEST(Classify, CatalogEigenvalues) {
  const auto r1 = classify(instantiate("case_i"));
  EXPECT_TRUE(r1.global_1type);
  ASSERT_TRUE(r1.lambda);
  EXPECT_NEAR(*r1.lambda, 2.0, 1e-5);
  EXPECT_EQ(r1.theorem_case, TheoremCase::KaSlice);
  for (double b : {2.5, 3.0, 4.0}) {
    const auto r = classify(instantiate("case_iv", {{"b", b}}));
    ASSERT_TRUE(r.lambda);
    EXPECT_NEAR(*r.lambda, 4.0, 1e-5);
    EXPECT_EQ(r.theorem_case, TheoremCase::CaseIV);
    EXPECT_TRUE(r.section.found);
    EXPECT_NEAR(std::abs(r.section.c0[4]), 1.0, 1e-9);
  }
}

TEST(Classify, MinimalTorusIsNotQuasiMinimal) {
  const auto r = classify(instantiate("case_iii", {{"b", 0.0}}));
  EXPECT_FALSE(r.quasi_minimal);
  EXPECT_TRUE(r.global_1type);
  ASSERT_TRUE(r.lambda);
  EXPECT_NEAR(*r.lambda, 4.0, 1e-5);
  EXPECT_EQ(r.theorem_case, TheoremCase::Unclassified);
}

TEST(Classify, GeodesicSphereHasFlatNormalBundle) {
  const auto r = classify(instantiate("geodesic_sphere"));
  EXPECT_TRUE(r.pw1type);
  EXPECT_TRUE(r.flat_normal_bundle);
  EXPECT_LE(r.RD_max, 1e-8);
}

TEST(Classify, VerdictsSurviveParameterSwap) {
  for (const auto& spec : {instantiate("case_ii"), instantiate("clifford_torus"), instantiate("random_poly")}) {
    const auto a = classify(coarse(spec));
    const auto b = classify(coarse(swap_parameters(spec)));
    EXPECT_EQ(a.pw1type, b.pw1type);
    EXPECT_EQ(a.proper, b.proper);
    EXPECT_EQ(a.global_1type, b.global_1type);
    EXPECT_EQ(a.quasi_minimal, b.quasi_minimal);
    EXPECT_EQ(a.parallel_H, b.parallel_H);
    EXPECT_NEAR(a.f_mean, b.f_mean, 1e-10);
  }
}

TEST(Classify, EigenvaluesStayInTwoAndFour) {
  std::vector<SurfaceSpec> specs = testkit::parallel_panel();
  for (const auto& s : testkit::nonparallel_panel()) specs.push_back(s);
  for (const auto& spec : specs) {
    const auto r = classify(coarse(spec));
    if (r.quasi_minimal && r.global_1type) {
      ASSERT_TRUE(r.lambda);
      EXPECT_TRUE(std::abs(*r.lambda - 2) <= 1e-5 || std::abs(*r.lambda - 4) <= 1e-5) << *r.lambda;
    }
  }
}

TEST(Classify, SkippedPointsAndValidation) {
  // sqrt(u) is singular for u < 0; the factor 0 keeps the surface a sphere patch.
  const std::vector<std::string> comps = {"0", "0", "cos(u)*cos(v) + 0*sqrt(u)", "cos(u)*sin(v)", "sin(u)"};
  const auto few = make_surface(kMinkowski5, comps, {}, {-0.2, 1.0, 0.5, 2.0}, 12, 6);
  const auto r = classify(few);
  EXPECT_EQ(r.skipped.size(), 12u);  // two of twelve u columns
  EXPECT_EQ(r.samples.size(), 60u);
  for (const auto& s : r.skipped) EXPECT_NE(s.reason.find("Singularity"), std::string::npos) << s.reason;
  const auto many = make_surface(kMinkowski5, comps, {}, {-1.0, 1.0, 0.5, 2.0}, 12, 6);
  EXPECT_THROW(classify(many), ValidationError);
}

TEST(Classify, OffDeSitterThrows) {
  const auto plane = make_surface(kMinkowski5, {"0", "u", "v", "0", "1"}, {}, {-1, 1, -1, 1}, 6, 6);
  EXPECT_THROW(classify(plane), NotInDeSitter);
}

TEST(Classify, ThreadCountDoesNotChangeResults) {
  ClassifyOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto spec = coarse(instantiate("random_poly"), 12);
  const auto a = classify(spec, one);
  const auto b = classify(spec, four);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].u, b.samples[i].u);
    EXPECT_EQ(a.samples[i].f_value, b.samples[i].f_value);
  }
  EXPECT_EQ(a.f_mean, b.f_mean);
}

TEST(Classify, BestFitConstantIsSmallOnGlobalOneType) {
  ClassifyOptions o;
  o.fit_constant = true;
  const auto r = classify(coarse(instantiate("case_ii")), o);
  ASSERT_TRUE(r.best_fit_C);
  EXPECT_LE(euclidean_norm(*r.best_fit_C), 1e-10);
}

TEST(ParallelFor, RethrowsAndCoversRange) {
  std::vector<int> hit(100, 0);
  parallel_for(100, 3, [&](int i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 2, [](int i) {
                 if (i == 5) throw InputError("boom");
               }),
               InputError);
}
