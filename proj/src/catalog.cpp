#include "dsgauss/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace dsgauss {

namespace {

constexpr Rect kCaseIDomain{-1.2, 1.2, 0.0, 6.28};
constexpr int kDefaultGrid = 30;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<CatalogEntry> make_entries() {
  using P = Provenance;
  std::vector<CatalogEntry> out;

  CatalogEntry e;
  e.name = "case_i";
  e.description = "x = (1, sin u, cos u cos v, cos u sin v, 1)";
  e.expected.K = Tagged<double>{1.0, P::Derived};
  e.expected.lambda = Tagged<double>{2.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{true, P::Paper};
  e.expected.parallel_H = Tagged<bool>{true, P::Paper};
  e.expected.pw1type = Tagged<bool>{true, P::Paper};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::KaSlice, P::Derived};
  out.push_back(e);

  e = {};
  e.name = "case_ii";
  e.description = "x = (2u^2 - 1, 2u^2 - 2, 2u, sin 2v, cos 2v) / 2";
  e.expected.K = Tagged<double>{0.0, P::Derived};
  e.expected.lambda = Tagged<double>{4.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{true, P::Paper};
  e.expected.parallel_H = Tagged<bool>{true, P::Paper};
  e.expected.pw1type = Tagged<bool>{true, P::Paper};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::CaseII, P::Paper};
  out.push_back(e);

  e = {};
  e.name = "case_iii";
  e.description = "x = (b/(cd), cos(cu)/c, sin(cu)/c, cos(dv)/d, sin(dv)/d), c = sqrt(2 - b), d = sqrt(2 + b); minimal (H = 0) at b = 0";
  e.params = {{"b", 1.0}};
  e.constraint = "|b|<2";
  e.expected.K = Tagged<double>{0.0, P::Derived};
  e.expected.lambda = Tagged<double>{4.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{true, P::Paper};
  e.expected.parallel_H = Tagged<bool>{true, P::Paper};
  e.expected.pw1type = Tagged<bool>{true, P::Paper};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::CaseIII, P::Paper};
  out.push_back(e);

  e = {};
  e.name = "case_iv";
  e.description = "x = (cosh(cu)/c, sinh(cu)/c, cos(dv)/d, sin(dv)/d, b/(cd)), c = sqrt(b - 2), d = sqrt(b + 2)";
  e.params = {{"b", 3.0}};
  e.constraint = "|b|>2";
  e.expected.K = Tagged<double>{0.0, P::Derived};
  e.expected.lambda = Tagged<double>{4.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{true, P::Paper};
  e.expected.parallel_H = Tagged<bool>{true, P::Paper};
  e.expected.pw1type = Tagged<bool>{true, P::Paper};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::CaseIV, P::Paper};
  out.push_back(e);

  e = {};
  e.name = "geodesic_sphere";
  e.description = "totally geodesic 2-sphere patch x = (0, 0, cos u cos v, cos u sin v, sin u)";
  e.expected.K = Tagged<double>{1.0, P::Derived};
  e.expected.lambda = Tagged<double>{2.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{false, P::Trivial};
  e.expected.parallel_H = Tagged<bool>{true, P::Trivial};
  e.expected.pw1type = Tagged<bool>{true, P::Paper};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::Unclassified, P::Trivial};
  out.push_back(e);

  e = {};
  e.name = "clifford_torus";
  e.description = "x = (0, r1 cos u, r1 sin u, r2 cos v, r2 sin v), r2 = sqrt(1 - r1^2)";
  e.params = {{"r1", 0.6}};
  e.constraint = "0<r1<1";
  e.expected.K = Tagged<double>{0.0, P::Derived};
  e.expected.quasi_minimal = Tagged<bool>{false, P::Derived};
  e.expected.parallel_H = Tagged<bool>{true, P::Derived};
  e.expected.pw1type = Tagged<bool>{true, P::Derived};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::Unclassified, P::Trivial};
  out.push_back(e);

  e = {};
  e.name = "random_poly";
  e.description = "seeded random cubic perturbation of (0, 0, u, v, 1), normalised onto S^4_1(1)";
  e.params = {{"seed", 42.0}};
  e.constraint = "seed integer, 0<=seed<2^53";
  e.expected.quasi_minimal = Tagged<bool>{false, P::Derived};
  e.expected.parallel_H = Tagged<bool>{false, P::Derived};
  e.expected.pw1type = Tagged<bool>{false, P::Derived};
  e.expected.theorem_case = Tagged<TheoremCase>{TheoremCase::Unclassified, P::Derived};
  out.push_back(e);
  return out;
}

ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& given) {
  ParamMap p;
  for (const auto& cp : entry.params) p[cp.name] = cp.default_value;
  for (const auto& [k, v] : given) {
    if (!p.count(k)) throw InputError("catalog entry '" + entry.name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw InputError("parameter '" + k + "' must be finite");
    p[k] = v;
  }
  return p;
}

SurfaceSpec build(const std::vector<std::string>& comps, ParamMap params, Rect domain) {
  return make_surface(kMinkowski5, comps, std::move(params), domain, kDefaultGrid, kDefaultGrid);
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Derived: return "derived";
    case Provenance::Trivial: return "trivial";
  }
  return "?";
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  throw UnknownEntry(name);
}

std::vector<std::string> random_poly_components(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double a, double b) { return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const char* monomials[] = {"u^2", "u*v", "v^2", "u^3", "u^2*v", "u*v^2", "v^3"};
  const char* base[] = {"0", "0", "u", "v", "1"};
  std::vector<std::string> y(5);
  for (int i = 0; i < 5; ++i) {
    y[i] = base[i];
    for (const char* m : monomials) y[i] += " + " + num(uniform(-0.3, 0.3)) + "*" + m;
  }
  std::string q = "-(" + y[0] + ")^2";
  for (int i = 1; i < 5; ++i) q += " + (" + y[i] + ")^2";
  std::vector<std::string> x(5);
  for (int i = 0; i < 5; ++i) x[i] = "(" + y[i] + ")/sqrt(" + q + ")";
  return x;
}

SurfaceSpec instantiate(const std::string& name, const ParamMap& given) {
  const CatalogEntry& entry = catalog_entry(name);
  ParamMap p = resolve_params(entry, given);

  if (name == "case_i")
    return build({"1", "sin(u)", "cos(u)*cos(v)", "cos(u)*sin(v)", "1"}, {}, kCaseIDomain);
  if (name == "case_ii")
    return build({"(2*u^2 - 1)/2", "(2*u^2 - 2)/2", "u", "sin(2*v)/2", "cos(2*v)/2"}, {}, {-1.0, 1.0, 0.0, 3.0});
  if (name == "case_iii") {
    const double b = p["b"];
    if (!(std::abs(b) < 2)) throw ConstraintViolation("|b|<2", "b = " + num(b));
    p["c"] = std::sqrt(2 - b);
    p["d"] = std::sqrt(2 + b);
    return build({"b/(c*d)", "cos(c*u)/c", "sin(c*u)/c", "cos(d*v)/d", "sin(d*v)/d"}, p, {0.0, 3.0, 0.0, 3.0});
  }
  if (name == "case_iv") {
    const double b = p["b"];
    if (!(std::abs(b) > 2)) throw ConstraintViolation("|b|>2", "b = " + num(b));
    // The family is real only for b > 2; for b < -2 both square roots are imaginary.
    if (!(b > 2)) throw ConstraintViolation("b>2", "c = sqrt(b - 2) is not real for b = " + num(b));
    p["c"] = std::sqrt(b - 2);
    p["d"] = std::sqrt(b + 2);
    return build({"cosh(c*u)/c", "sinh(c*u)/c", "cos(d*v)/d", "sin(d*v)/d", "b/(c*d)"}, p, {-1.0, 1.0, 0.0, 3.0});
  }
  if (name == "geodesic_sphere")
    return build({"0", "0", "cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)"}, {}, kCaseIDomain);
  if (name == "clifford_torus") {
    const double r1 = p["r1"];
    if (!(r1 > 0 && r1 < 1)) throw ConstraintViolation("0<r1<1", "r1 = " + num(r1));
    p["r2"] = std::sqrt(1 - r1 * r1);
    return build({"0", "r1*cos(u)", "r1*sin(u)", "r2*cos(v)", "r2*sin(v)"}, p, {0.0, 6.28, 0.0, 6.28});
  }
  if (name == "random_poly") {
    const double s = p["seed"];
    if (!(s >= 0 && s < 0x1.0p53 && std::floor(s) == s))
      throw ConstraintViolation("seed integer, 0<=seed<2^53", "seed = " + num(s));
    return build(random_poly_components(static_cast<std::uint64_t>(s)), {}, {-0.4, 0.4, -0.4, 0.4});
  }
  throw UnknownEntry(name);
}

double membership_defect(const SurfaceSpec& spec, std::span<const std::pair<double, double>> samples) {
  double worst = 0.0;
  for (const auto& [u, v] : samples) {
    const auto x = position(spec, u, v);
    worst = std::max(worst, std::abs(inner(x, x) - 1.0));
  }
  return worst;
}

double membership_defect(const SurfaceSpec& spec) {
  const auto pts = sample_points(spec);
  return membership_defect(spec, pts);
}

std::optional<TheoremCase> match_family(const SurfaceSpec& spec) {
  static const std::pair<const char*, TheoremCase> families[] = {{"case_i", TheoremCase::CaseI},
                                                                 {"case_ii", TheoremCase::CaseII},
                                                                 {"case_iii", TheoremCase::CaseIII},
                                                                 {"case_iv", TheoremCase::CaseIV}};
  if (!(spec.signature == kMinkowski5)) return std::nullopt;
  for (const auto& [name, label] : families) {
    const CatalogEntry& entry = catalog_entry(name);
    ParamMap given;
    for (const auto& cp : entry.params) {
      auto it = spec.params.find(cp.name);
      if (it != spec.params.end()) given[cp.name] = it->second;
    }
    SurfaceSpec ref;
    try {
      ref = instantiate(name, given);
    } catch (const InputError&) {
      continue;
    }
    if (ref.params != spec.params) continue;
    bool same = true;
    for (std::size_t i = 0; i < ref.components.size() && same; ++i)
      same = unparse(*ref.components[i]) == unparse(*spec.components[i]);
    if (same) return label;
  }
  return std::nullopt;
}

}  // namespace dsgauss
