#include "dsgauss/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

namespace dsgauss {

namespace {

using ojson = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson vec_json(const SemiVector<double>& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
  return a;
}

ojson bivector_json(const Bivector& b) {
  ojson o = ojson::object();
  const auto& idx = b.indices();
  for (int r = 0; r < b.size(); ++r) o[format_multi_index(idx[static_cast<std::size_t>(r)])] = b[r];
  return o;
}

ojson surface_json(const std::string& id, const SurfaceSpec& s) {
  ojson o;
  o["id"] = id;
  o["ambient"] = {{"dim", s.signature.dim()}, {"index", s.signature.index()}};
  o["params"] = ojson::object();
  for (const auto& [k, v] : s.params) o["params"][k] = v;
  o["components"] = s.component_text;
  o["domain"] = {{"u", {s.domain.u_min, s.domain.u_max}}, {"v", {s.domain.v_min, s.domain.v_max}}};
  return o;
}

ojson grid_json(const SurfaceSpec& s) { return {{"n_u", s.n_u}, {"n_v", s.n_v}}; }

ojson skipped_json(const std::vector<SkippedPoint>& sk) {
  ojson a = ojson::array();
  for (const auto& p : sk) a.push_back({{"u", p.u}, {"v", p.v}, {"reason", p.reason}});
  return a;
}

ojson optional_json(const std::optional<double>& x) { return x ? ojson(*x) : ojson(nullptr); }

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string report_json(const ClassificationReport& r) {
  ojson j;
  j["surface"] = surface_json(r.surface_id, r.spec);
  j["grid"] = grid_json(r.spec);
  j["settings"] = {{"mode", to_string(r.mode)},
                   {"tol_type", r.tol.type},
                   {"tol_geometry", r.tol.geometry},
                   {"tol_membership", r.tol.membership}};
  j["aggregates"] = {{"K_mean", r.K_mean},
                     {"K_std", r.K_std},
                     {"f_mean", r.f_mean},
                     {"f_std", r.f_std},
                     {"residual_formula_max", r.residual_formula_max},
                     {"residual_eigen_max", r.residual_eigen_max},
                     {"residual_ambient_max", r.residual_ambient_max},
                     {"scale", r.scale},
                     {"membership_max", r.membership_max},
                     {"HH_max", r.HH_max},
                     {"H_min", r.H_min},
                     {"DH_max", r.DH_max},
                     {"RD_max", r.RD_max},
                     {"codazzi_max", r.codazzi_max},
                     {"brioschi_max", r.brioschi_max},
                     {"valid_points", r.samples.size()}};
  j["verdicts"] = {{"quasi_minimal", r.quasi_minimal},
                   {"parallel_H", r.parallel_H},
                   {"flat_normal_bundle", r.flat_normal_bundle},
                   {"pointwise_1type", r.pw1type},
                   {"proper", r.proper},
                   {"global_1type", r.global_1type},
                   {"lambda", optional_json(r.lambda)},
                   {"theorem_case", to_string(r.theorem_case)}};
  j["regions"] = {{"K_a", r.in_Ka},
                  {"LC_1", r.in_LC1},
                  {"family", r.family_match ? ojson(to_string(*r.family_match)) : ojson(nullptr)}};
  if (r.section.found) {
    const auto& p = r.section.probe;
    j["hyperplane_section"] = {{"c0", vec_json(r.section.c0)},
                               {"c", r.section.c},
                               {"xi_norm", r.section.xi_norm},
                               {"residual", r.section.residual},
                               {"probe",
                                {{"tangency", p.tangency},
                                 {"c_std", p.c_std},
                                 {"parallelism", p.parallelism},
                                 {"shape_proportionality", p.shape_proportionality},
                                 {"xi_norm_mean", p.xi_norm_mean},
                                 {"xi_norm_std", p.xi_norm_std},
                                 {"points_used", p.points_used},
                                 {"points_skipped", p.points_skipped}}}};
  } else {
    j["hyperplane_section"] = nullptr;
  }
  if (r.best_fit_C) j["best_fit_C"] = bivector_json(*r.best_fit_C);
  j["skipped_points"] = skipped_json(r.skipped);
  j["diagnostics"] = r.diagnostics;
  ojson samples = ojson::array();
  for (const auto& s : r.samples)
    samples.push_back({{"u", s.u},
                       {"v", s.v},
                       {"K", s.K},
                       {"f", s.f_value},
                       {"HH", s.HH},
                       {"DH", s.DH},
                       {"RD", s.RD},
                       {"residual_formula", s.residual_formula},
                       {"residual_ambient", s.residual_ambient},
                       {"residual_eigen", s.residual_eigen}});
  j["samples"] = std::move(samples);
  return dump(j);
}

std::string report_csv(const ClassificationReport& r) {
  std::string out = "u,v,K,f,HH,DH,RD,residual_formula,residual_ambient,residual_eigen\n";
  for (const auto& s : r.samples) {
    for (double x : {s.u, s.v, s.K, s.f_value, s.HH, s.DH, s.RD, s.residual_formula, s.residual_ambient})
      out += g17(x) + ",";
    out += g17(s.residual_eigen) + "\n";
  }
  return out;
}

VerifyThresholds VerifyThresholds::for_mode(DiffMode mode) {
  VerifyThresholds t;
  if (mode == DiffMode::FiniteDifference) {
    t.codazzi = 1e-4;
    t.brioschi = 1e-5;
  }
  return t;
}

VerifyReport verify(const SurfaceSpec& spec, DiffMode mode, const std::string& surface_id, int threads) {
  VerifyReport r;
  r.surface_id = surface_id;
  r.spec = spec;
  r.mode = mode;
  r.thresholds = VerifyThresholds::for_mode(mode);
  GridSamples grid = sample_grid(spec, mode, threads);
  r.membership_defect = membership_defect(spec);
  r.total_points = grid.total;
  r.spacelike_points = static_cast<int>(grid.samples.size());
  r.skipped = std::move(grid.skipped);
  for (const auto& s : grid.samples) {
    r.codazzi_max = std::max(r.codazzi_max, s.codazzi);
    r.brioschi_max = std::max(r.brioschi_max, std::abs(s.K - s.K_brioschi));
    r.frame_defect_max = std::max(r.frame_defect_max, s.gram_defect);
    r.h_asymmetry_max = std::max(r.h_asymmetry_max, s.h_asymmetry);
    r.nu_norm_defect_max = std::max(r.nu_norm_defect_max, std::abs(s.nu_norm - 1.0));
  }

  const auto& t = r.thresholds;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) r.failures.push_back(what);
  };
  check(static_cast<double>(r.skipped.size()) <= kMaxSkippedFraction * r.total_points,
        "more than 20% of grid points are degenerate");
  check(r.codazzi_max <= t.codazzi, "Codazzi residual " + g17(r.codazzi_max));
  check(r.brioschi_max <= t.brioschi, "Gauss equation vs Brioschi " + g17(r.brioschi_max));
  check(r.frame_defect_max <= t.frame, "frame Gram defect " + g17(r.frame_defect_max));
  check(r.nu_norm_defect_max <= t.nu_norm, "<nu, nu> defect " + g17(r.nu_norm_defect_max));
  return r;
}

std::string verify_json(const VerifyReport& r) {
  ojson j;
  j["surface"] = surface_json(r.surface_id, r.spec);
  j["grid"] = grid_json(r.spec);
  j["settings"] = {{"mode", to_string(r.mode)}};
  j["thresholds"] = {{"membership", r.thresholds.membership},
                     {"codazzi", r.thresholds.codazzi},
                     {"brioschi", r.thresholds.brioschi},
                     {"frame", r.thresholds.frame},
                     {"nu_norm", r.thresholds.nu_norm}};
  j["checks"] = {{"membership_defect", r.membership_defect},
                 {"spacelike_points", r.spacelike_points},
                 {"total_points", r.total_points},
                 {"codazzi_max", r.codazzi_max},
                 {"brioschi_max", r.brioschi_max},
                 {"frame_defect_max", r.frame_defect_max},
                 {"h_asymmetry_max", r.h_asymmetry_max},
                 {"nu_norm_defect_max", r.nu_norm_defect_max}};
  j["passed"] = r.passed();
  j["failures"] = r.failures;
  j["skipped_points"] = skipped_json(r.skipped);
  return dump(j);
}

std::vector<SweepRow> sweep(const std::function<SurfaceSpec(double)>& make, double a, double b, int steps,
                            const ClassifyOptions& options) {
  if (steps < 1) throw InputError("sweep: steps must be at least 1");
  std::vector<SweepRow> rows;
  for (int i = 0; i < steps; ++i) {
    SweepRow row;
    row.value = steps == 1 ? a : a + (b - a) * i / (steps - 1);
    try {
      const ClassificationReport r = classify(make(row.value), options);
      row.K_mean = r.K_mean;
      row.K_std = r.K_std;
      row.f_mean = r.f_mean;
      row.f_std = r.f_std;
      row.lambda = r.lambda;
      row.residual_eigen_max = r.residual_eigen_max;
      row.quasi_minimal = r.quasi_minimal;
    } catch (const ConstraintViolation& e) {
      row.skipped = e.constraint();
    } catch (const InputError& e) {
      row.skipped = e.what();
    } catch (const GeometryError& e) {
      row.skipped = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,K_mean,K_std,f_mean,f_std,lambda,residual_eigen_max,quasi_minimal\n";
  for (const auto& r : rows) {
    out += g17(r.value);
    if (!r.skipped.empty()) {
      std::string reason = r.skipped;
      for (char& c : reason)
        if (c == ',' || c == '\n') c = ';';
      out += ",skipped:" + reason + ",,,,,,\n";
      continue;
    }
    for (double x : {r.K_mean, r.K_std, r.f_mean, r.f_std}) out += "," + g17(x);
    out += "," + (r.lambda ? g17(*r.lambda) : std::string("nan"));
    out += "," + g17(r.residual_eigen_max);
    out += r.quasi_minimal ? ",true\n" : ",false\n";
  }
  return out;
}

std::string sweep_json(const std::string& param, const std::vector<SweepRow>& rows) {
  ojson a = ojson::array();
  for (const auto& r : rows) {
    ojson o;
    o["param"] = param;
    o["value"] = r.value;
    if (!r.skipped.empty()) {
      o["skipped"] = r.skipped;
    } else {
      o["K_mean"] = r.K_mean;
      o["K_std"] = r.K_std;
      o["f_mean"] = r.f_mean;
      o["f_std"] = r.f_std;
      o["lambda"] = optional_json(r.lambda);
      o["residual_eigen_max"] = r.residual_eigen_max;
      o["quasi_minimal"] = r.quasi_minimal;
    }
    a.push_back(std::move(o));
  }
  return dump(a);
}

namespace {

template <typename T, typename F>
void expected_lines(std::ostringstream& os, const char* name, const std::optional<Tagged<T>>& t, F show) {
  if (t) os << "  expected " << name << ": " << show(t->value) << " [" << to_string(t->provenance) << "]\n";
}

template <typename T, typename F>
void expected_json(ojson& o, const char* name, const std::optional<Tagged<T>>& t, F show) {
  if (t) o[name] = {{"value", show(t->value)}, {"provenance", to_string(t->provenance)}};
}

std::string short_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string catalog_text() {
  std::ostringstream os;
  auto yes_no = [](bool b) { return b ? "true" : "false"; };
  auto label = [](TheoremCase c) { return to_string(c); };
  for (const auto& e : catalog_entries()) {
    os << e.name << "\n  " << e.description << "\n";
    if (e.params.empty()) {
      os << "  params: none\n";
    } else {
      os << "  params:";
      for (const auto& p : e.params) os << " " << p.name << " (default " << short_num(p.default_value) << ")";
      os << "\n";
    }
    if (!e.constraint.empty()) os << "  constraint: " << e.constraint << "\n";
    expected_lines(os, "K", e.expected.K, short_num);
    expected_lines(os, "lambda", e.expected.lambda, short_num);
    expected_lines(os, "quasi_minimal", e.expected.quasi_minimal, yes_no);
    expected_lines(os, "parallel_H", e.expected.parallel_H, yes_no);
    expected_lines(os, "pointwise_1type", e.expected.pw1type, yes_no);
    expected_lines(os, "theorem_case", e.expected.theorem_case, label);
  }
  return os.str();
}

std::string catalog_json() {
  ojson a = ojson::array();
  auto same = [](auto x) { return x; };
  auto label = [](TheoremCase c) { return std::string(to_string(c)); };
  for (const auto& e : catalog_entries()) {
    ojson o;
    o["name"] = e.name;
    o["description"] = e.description;
    o["params"] = ojson::object();
    for (const auto& p : e.params) o["params"][p.name] = p.default_value;
    o["constraint"] = e.constraint.empty() ? ojson(nullptr) : ojson(e.constraint);
    ojson ex = ojson::object();
    expected_json(ex, "K", e.expected.K, same);
    expected_json(ex, "lambda", e.expected.lambda, same);
    expected_json(ex, "quasi_minimal", e.expected.quasi_minimal, same);
    expected_json(ex, "parallel_H", e.expected.parallel_H, same);
    expected_json(ex, "pointwise_1type", e.expected.pw1type, same);
    expected_json(ex, "theorem_case", e.expected.theorem_case, label);
    o["expected"] = std::move(ex);
    a.push_back(std::move(o));
  }
  return dump(a);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace dsgauss
