// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dsgauss/catalog.hpp"
#include "dsgauss/exterior.hpp"
#include "dsgauss/gauss_map.hpp"
#include "dsgauss/geometry.hpp"
#include "panels.hpp"
#include "parser_corpus.hpp"
#include "test_support.hpp"

using namespace dsgauss;

namespace {

struct Named {
  std::string name;
  SurfaceSpec spec;
};

const ClassificationReport& report(const SurfaceSpec& spec) {
  static std::map<std::string, ClassificationReport> cache;
  const std::string key = dump_surface(spec);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, classify(spec)).first;
  return it->second;
}

std::vector<Named> families(bool include_minimal) {
  std::vector<Named> out;
  out.push_back({"case_i", instantiate("case_i")});
  out.push_back({"case_ii", instantiate("case_ii")});
  for (double b : {-1.0, 0.0, 1.0}) {
    if (b == 0.0 && !include_minimal) continue;
    out.push_back({"case_iii(b=" + std::to_string(b) + ")", instantiate("case_iii", {{"b", b}})});
  }
  for (double b : {2.5, 3.0, 4.0}) out.push_back({"case_iv(b=" + std::to_string(b) + ")", instantiate("case_iv", {{"b", b}})});
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome membership() {
  Outcome o;
  double worst = 0;
  for (const auto& f : families(true)) {
    const double d = membership_defect(f.spec);
    worst = std::max(worst, d);
    if (d > 1e-10) o.fail(f.name + " defect " + fmt(d));
  }
  if (o.pass) o.detail = "max defect " + fmt(worst) + " over 8 surfaces";
  return o;
}

Outcome quasi_minimal() {
  Outcome o;
  double hh = 0, hmin = 1e300;
  for (const auto& f : families(false)) {
    for (const auto& s : report(f.spec).samples) {
      hh = std::max(hh, std::abs(s.HH));
      hmin = std::min(hmin, s.H_max);
    }
    if (!report(f.spec).quasi_minimal) o.fail(f.name + " not quasi-minimal");
  }
  if (hh > 1e-8) o.fail("|<H,H>| " + fmt(hh));
  if (hmin < 0.1) o.fail("min H_max " + fmt(hmin));
  if (o.pass) o.detail = "max |<H,H>| " + fmt(hh) + ", min H_max " + fmt(hmin) + " (case_iii b=0 is minimal, excluded)";
  return o;
}

Outcome parallel_mean_curvature() {
  Outcome o;
  double worst = 0;
  for (const auto& f : families(true)) worst = std::max(worst, report(f.spec).DH_max);
  if (worst > 1e-6) o.fail("families DH " + fmt(worst));
  const double rnd = report(instantiate("random_poly", {{"seed", 42.0}})).DH_max;
  if (rnd < 1e-2) o.fail("random_poly(seed=42) DH " + fmt(rnd));
  if (o.pass) o.detail = "families DH " + fmt(worst) + ", random_poly DH " + fmt(rnd);
  return o;
}

Outcome three_routes() {
  Outcome o;
  std::vector<SurfaceSpec> specs;
  for (const auto& f : families(true)) specs.push_back(f.spec);
  for (int seed = 1; seed <= 5; ++seed) specs.push_back(instantiate("random_poly", {{"seed", double(seed)}}));
  double worst = 0;
  int points = 0;
  for (const auto& spec : specs)
    for (const auto& s : report(spec).samples) {
      const double rel = std::max(s.residual_formula, s.residual_ambient) / (1 + euclidean_norm(s.lap_direct));
      worst = std::max(worst, rel);
      ++points;
    }
  if (worst > 1e-6) o.fail("relative residual " + fmt(worst));
  if (o.pass) o.detail = "max relative residual " + fmt(worst) + " at " + std::to_string(points) + " points";
  return o;
}

Outcome eigenvalues() {
  Outcome o;
  for (const auto& f : families(true)) {
    const auto& r = report(f.spec);
    const double want = f.name == "case_i" ? 2.0 : 4.0;
    if (!r.lambda || std::abs(*r.lambda - want) > 1e-5)
      o.fail(f.name + " lambda " + (r.lambda ? fmt(*r.lambda) : std::string("none")));
  }
  std::vector<SurfaceSpec> all = testkit::parallel_panel();
  for (const auto& e : catalog_entries()) all.push_back(instantiate(e.name));
  int checked = 0;
  for (const auto& spec : all) {
    const auto& r = report(spec);
    if (!(r.quasi_minimal && r.global_1type)) continue;
    ++checked;
    if (!r.lambda || (std::abs(*r.lambda - 2) > 1e-5 && std::abs(*r.lambda - 4) > 1e-5))
      o.fail("quasi-minimal global 1-type with lambda " + (r.lambda ? fmt(*r.lambda) : std::string("none")));
  }
  if (o.pass) o.detail = "case_i 2, cases ii-iv 4; " + std::to_string(checked) + " quasi-minimal global verdicts in {2,4}";
  return o;
}

Outcome biconditional() {
  Outcome o;
  int pos = 0, neg = 0;
  for (const auto& spec : testkit::parallel_panel()) {
    const auto& r = report(spec);
    if (!(r.parallel_H && r.pw1type)) o.fail("parallel surface not pointwise 1-type: " + spec.component_text[0]);
    pos += r.pw1type;
  }
  for (const auto& spec : testkit::nonparallel_panel()) {
    const auto& r = report(spec);
    if (r.parallel_H || r.pw1type || r.DH_max < 1e-2) o.fail("non-parallel surface misclassified: " + spec.component_text[0]);
    neg += !r.pw1type;
  }
  if (o.pass) o.detail = std::to_string(pos) + " positives, " + std::to_string(neg) + " negatives";
  return o;
}

Outcome geodesic_sphere() {
  Outcome o;
  const auto& r = report(instantiate("geodesic_sphere"));
  if (!r.pw1type) o.fail("not pointwise 1-type");
  if (r.RD_max > 1e-8) o.fail("R^D " + fmt(r.RD_max));
  if (o.pass) o.detail = "pointwise 1-type, max |R^D| " + fmt(r.RD_max);
  return o;
}

std::vector<SurfaceSpec> everything() {
  std::vector<SurfaceSpec> out = testkit::parallel_panel();
  for (const auto& s : testkit::nonparallel_panel()) out.push_back(s);
  out.push_back(instantiate("case_iii", {{"b", 0.0}}));
  out.push_back(instantiate("random_poly", {{"seed", 42.0}}));
  return out;
}

Outcome codazzi() {
  Outcome o;
  double worst = 0;
  for (const auto& spec : everything()) worst = std::max(worst, report(spec).codazzi_max);
  if (worst > 1e-6) o.fail("residual " + fmt(worst));
  if (o.pass) o.detail = "max residual " + fmt(worst);
  return o;
}

Outcome brioschi() {
  Outcome o;
  double worst = 0;
  for (const auto& spec : everything())
    for (const auto& s : report(spec).samples) worst = std::max(worst, std::abs(s.K - s.K_brioschi));
  if (worst > 1e-7) o.fail("|K - K_B| " + fmt(worst));
  if (o.pass) o.detail = "max |K - K_B| " + fmt(worst);
  return o;
}

Outcome section_probe() {
  Outcome o;
  const auto spec = instantiate("case_iv", {{"b", 3.0}});
  const auto pts = sample_points(spec);
  const ProbeReport p = sphere_intersection_probe(spec, SemiVector<double>::axis(kMinkowski5, 4), pts);
  const double defect = std::max({p.tangency, p.parallelism, p.shape_proportionality});
  if (defect > 1e-7) o.fail("defect " + fmt(defect));
  if (p.c_std > 1e-10) o.fail("c_std " + fmt(p.c_std));
  if (p.points_used != static_cast<int>(pts.size())) o.fail("points used " + std::to_string(p.points_used));
  if (o.pass) o.detail = "defect " + fmt(defect) + ", c_std " + fmt(p.c_std) + ", c = " + fmt(p.c_mean);
  return o;
}

Outcome exterior() {
  Outcome o;
  const auto a = lambda_index(5, 1, 2), b = lambda_index(4, 1, 2);
  if (a.dim != 10 || a.index != 4) o.fail("Lambda^2(E^5_1) = (" + std::to_string(a.dim) + "," + std::to_string(a.index) + ")");
  if (b.dim != 6 || b.index != 3) o.fail("Lambda^2(E^4_1) = (" + std::to_string(b.dim) + "," + std::to_string(b.index) + ")");
  testkit::Rng rng(2024);
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    const auto u = rng.vector(kMinkowski5, 2.0), v = rng.vector(kMinkowski5, 2.0);
    const auto w = wedge(u, v);
    const double rhs = inner(u, u) * inner(v, v) - inner(u, v) * inner(u, v);
    worst = std::max(worst, std::abs(induced_inner(w, w) - rhs) / std::max(1.0, std::abs(rhs)));
  }
  if (worst > 1e-10) o.fail("Lagrange identity " + fmt(worst));
  if (o.pass) o.detail = "(10,4), (6,3), Lagrange identity " + fmt(worst) + " on 1000 pairs";
  return o;
}

Outcome parser() {
  Outcome o;
  int accepted = 0, rejected = 0;
  for (const auto& c : testkit::kParserCorpus) {
    bool ok = true;
    try {
      parse(c.text);
    } catch (const ParseError&) {
      ok = false;
    }
    if (ok != c.accept) o.fail(std::string("\"") + c.text + "\" " + (ok ? "accepted" : "rejected"));
    (ok ? accepted : rejected)++;
  }
  const double p = eval_value(*parse("2^3^2"), 0, 0, {});
  if (p != 512) o.fail("2^3^2 = " + fmt(p));
  testkit::Rng rng(314);
  int compared = 0;
  for (const auto& c : testkit::kParserCorpus) {
    if (!c.accept) continue;
    const auto e = parse(c.text);
    for (int n = 0; n < 100; ++n) {
      const double u0 = rng.uniform(0.2, 0.8), v0 = rng.uniform(0.2, 0.8);
      std::string why;
      if (!testkit::jet_matches_fd(*e, u0, v0, &why)) o.fail(std::string(c.text) + ": " + why);
      ++compared;
    }
  }
  if (o.pass)
    o.detail = std::to_string(accepted) + " accepted, " + std::to_string(rejected) + " rejected, 2^3^2 = 512, " +
               std::to_string(compared) + " jet/FD comparisons";
  return o;
}

Outcome deterministic_cli() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const std::string path = (dir / ("dsgauss_acceptance_" + std::to_string(run) + ".json")).string();
    const std::string cmd = std::string(DSGAUSS_CLI_PATH) + " classify --catalog case_iii --param b=0 >" + path;
    const int raw = std::system(cmd.c_str());
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) o.fail("run " + std::to_string(run) + " exited abnormally");
    outputs.push_back(slurp(path));
    std::filesystem::remove(path);
  }
  if (outputs[0].empty()) o.fail("empty output");
  if (outputs[0] != outputs[1]) o.fail("outputs differ");
  if (o.pass) o.detail = std::to_string(outputs[0].size()) + " identical bytes";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"family membership", membership},
      {"quasi-minimal families", quasi_minimal},
      {"parallel mean curvature vector", parallel_mean_curvature},
      {"three Laplacian routes agree", three_routes},
      {"global eigenvalues", eigenvalues},
      {"pointwise 1-type iff parallel H", biconditional},
      {"geodesic sphere", geodesic_sphere},
      {"Codazzi equation", codazzi},
      {"Gauss equation vs Brioschi", brioschi},
      {"hyperplane section probe", section_probe},
      {"exterior algebra", exterior},
      {"expression parser", parser},
      {"deterministic CLI output", deterministic_cli},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
