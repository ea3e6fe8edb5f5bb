// dsgauss: Gauss map analysis of space-like surfaces in de Sitter space S^4_1(1).
//
//   dsgauss verify   (--catalog NAME [--param K=V]... | --surface PATH) [options]
//   dsgauss classify (--catalog NAME [--param K=V]... | --surface PATH) [options]
//   dsgauss sweep    --catalog NAME --vary K --range A:B --steps N [options]
//   dsgauss catalog  [--format text|json] [--export NAME [--param K=V]...]
//
// Exit status: 0 success, 1 usage or input error, 2 geometric validation failure.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsgauss/catalog.hpp"
#include "dsgauss/report.hpp"

using namespace dsgauss;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitGeometry = 2;

double parse_number(const std::string& s, const std::string& what) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw InputError("invalid number for " + what + ": '" + s + "'");
  return x;
}

std::pair<double, double> parse_range(const std::string& s, const std::string& what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError(what + " must look like A:B");
  return {parse_number(s.substr(0, colon), what), parse_number(s.substr(colon + 1), what)};
}

struct RunConfig {
  std::string catalog;
  std::vector<std::string> params;
  std::string surface;
  std::string grid;
  std::string domain_u;
  std::string domain_v;
  std::string mode = "jet";
  std::optional<double> tol;
  std::string out = "-";
  std::string format;
  bool fit_c = false;
  std::string vary;
  std::string range;
  int steps = 0;
  std::string export_name;
};

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects K=V, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (p.count(key)) throw InputError("--param " + key + " given twice");
    p[key] = parse_number(item.substr(eq + 1), "--param " + key);
  }
  return p;
}

void apply_overrides(const RunConfig& cfg, SurfaceSpec& spec) {
  if (!cfg.grid.empty()) {
    const auto x = cfg.grid.find('x');
    if (x == std::string::npos) throw InputError("--grid must look like NUxNV");
    const double nu = parse_number(cfg.grid.substr(0, x), "--grid");
    const double nv = parse_number(cfg.grid.substr(x + 1), "--grid");
    if (nu != static_cast<int>(nu) || nv != static_cast<int>(nv)) throw InputError("--grid needs integers");
    spec.n_u = static_cast<int>(nu);
    spec.n_v = static_cast<int>(nv);
  }
  if (!cfg.domain_u.empty()) std::tie(spec.domain.u_min, spec.domain.u_max) = parse_range(cfg.domain_u, "--domain-u");
  if (!cfg.domain_v.empty()) std::tie(spec.domain.v_min, spec.domain.v_max) = parse_range(cfg.domain_v, "--domain-v");
  // Re-validate through the same path as documents.
  spec = make_surface(spec.signature, spec.component_text, spec.params, spec.domain, spec.n_u, spec.n_v);
}

std::string surface_id(const RunConfig& cfg, const ParamMap& params) {
  if (cfg.catalog.empty()) return cfg.surface;
  std::string id = cfg.catalog;
  for (const auto& [k, v] : params) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    id += std::string(id == cfg.catalog ? "(" : ",") + k + "=" + buf;
  }
  if (!params.empty()) id += ")";
  return id;
}

SurfaceSpec load_input(const RunConfig& cfg, const ParamMap& params) {
  if (cfg.catalog.empty() == cfg.surface.empty())
    throw InputError("exactly one of --catalog and --surface is required");
  SurfaceSpec spec;
  if (!cfg.catalog.empty()) {
    spec = instantiate(cfg.catalog, params);
  } else {
    spec = load_surface_file(cfg.surface);
    for (const auto& [k, v] : params) {
      if (!spec.params.count(k)) throw InputError("surface has no parameter '" + k + "'");
      spec.params[k] = v;
    }
  }
  apply_overrides(cfg, spec);
  return spec;
}

ClassifyOptions classify_options(const RunConfig& cfg, const std::string& id) {
  ClassifyOptions o;
  o.mode = diff_mode_from_string(cfg.mode);
  if (cfg.tol) o.tol = Tolerances::from_type_tol(*cfg.tol);
  o.surface_id = id;
  o.fit_constant = cfg.fit_c;
  return o;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--catalog", cfg.catalog, "Catalog entry name");
  cmd->add_option("--param", cfg.params, "Parameter override K=V (repeatable)");
  cmd->add_option("--surface", cfg.surface, "Surface document (JSON)");
  cmd->add_option("--grid", cfg.grid, "Sample grid NUxNV");
  cmd->add_option("--domain-u", cfg.domain_u, "u range A:B");
  cmd->add_option("--domain-v", cfg.domain_v, "v range A:B");
  cmd->add_option("--mode", cfg.mode, "Differentiation mode")->check(CLI::IsMember({"jet", "fd"}));
  cmd->add_option("--tol", cfg.tol, "1-type tolerance (geometry checks use tol/10)");
  cmd->add_option("--out", cfg.out, "Output path, '-' for stdout");
}

int run_verify(const RunConfig& cfg) {
  const ParamMap params = parse_params(cfg.params);
  if (!cfg.format.empty() && cfg.format != "json") throw InputError("verify supports --format json only");
  const SurfaceSpec spec = load_input(cfg, params);
  const VerifyReport r = verify(spec, diff_mode_from_string(cfg.mode), surface_id(cfg, params));
  write_output(cfg.out, verify_json(r));
  if (!r.passed()) {
    for (const auto& f : r.failures) std::cerr << "verify: " << f << "\n";
    return kExitGeometry;
  }
  return 0;
}

int run_classify(const RunConfig& cfg) {
  const ParamMap params = parse_params(cfg.params);
  const SurfaceSpec spec = load_input(cfg, params);
  const ClassificationReport r = classify(spec, classify_options(cfg, surface_id(cfg, params)));
  if (cfg.format.empty() || cfg.format == "json")
    write_output(cfg.out, report_json(r));
  else if (cfg.format == "csv")
    write_output(cfg.out, report_csv(r));
  else
    throw InputError("unknown --format '" + cfg.format + "'");
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  ParamMap params = parse_params(cfg.params);
  if (cfg.vary.empty() || cfg.range.empty() || cfg.steps < 1)
    throw InputError("sweep needs --vary, --range A:B and --steps N >= 1");
  const auto [a, b] = parse_range(cfg.range, "--range");
  // Validate the input once with its current parameters.
  SurfaceSpec base;
  if (!cfg.catalog.empty()) {
    const auto& entry = catalog_entry(cfg.catalog);
    bool known = false;
    for (const auto& p : entry.params) known = known || p.name == cfg.vary;
    if (!known) throw InputError("catalog entry '" + cfg.catalog + "' has no parameter '" + cfg.vary + "'");
  } else {
    if (cfg.surface.empty()) throw InputError("exactly one of --catalog and --surface is required");
    base = load_surface_file(cfg.surface);
    if (!base.params.count(cfg.vary)) throw InputError("surface has no parameter '" + cfg.vary + "'");
  }
  auto make = [&](double value) {
    ParamMap p = params;
    p[cfg.vary] = value;
    return load_input(cfg, p);
  };
  const auto rows = sweep(make, a, b, cfg.steps, classify_options(cfg, surface_id(cfg, params)));
  if (cfg.format.empty() || cfg.format == "csv")
    write_output(cfg.out, sweep_csv(rows));
  else if (cfg.format == "json")
    write_output(cfg.out, sweep_json(cfg.vary, rows));
  else
    throw InputError("unknown --format '" + cfg.format + "'");
  return 0;
}

int run_catalog(const RunConfig& cfg) {
  if (!cfg.export_name.empty()) {
    write_output(cfg.out, dump_surface(instantiate(cfg.export_name, parse_params(cfg.params))));
    return 0;
  }
  if (cfg.format.empty() || cfg.format == "text")
    write_output(cfg.out, catalog_text());
  else if (cfg.format == "json")
    write_output(cfg.out, catalog_json());
  else
    throw InputError("unknown --format '" + cfg.format + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss map analysis of space-like surfaces in de Sitter space S^4_1(1)", "dsgauss"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* verify_cmd = app.add_subcommand("verify", "Membership, frame, Codazzi and Gauss-equation checks");
  add_input_options(verify_cmd, cfg);
  verify_cmd->add_option("--format", cfg.format, "json");

  auto* classify_cmd = app.add_subcommand("classify", "Gauss map type and theorem case");
  add_input_options(classify_cmd, cfg);
  classify_cmd->add_option("--format", cfg.format, "json|csv");
  classify_cmd->add_flag("--fit-c", cfg.fit_c, "Also report the least-squares constant C");

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify over a range of one parameter");
  add_input_options(sweep_cmd, cfg);
  sweep_cmd->add_option("--format", cfg.format, "csv|json");
  sweep_cmd->add_option("--vary", cfg.vary, "Parameter to vary")->required();
  sweep_cmd->add_option("--range", cfg.range, "A:B")->required();
  sweep_cmd->add_option("--steps", cfg.steps, "Number of values")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "List built-in surfaces");
  catalog_cmd->add_option("--format", cfg.format, "text|json");
  catalog_cmd->add_option("--export", cfg.export_name, "Print the surface document of an entry");
  catalog_cmd->add_option("--param", cfg.params, "Parameter override K=V for --export");
  catalog_cmd->add_option("--out", cfg.out, "Output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*verify_cmd) return run_verify(cfg);
    if (*classify_cmd) return run_classify(cfg);
    if (*sweep_cmd) return run_sweep(cfg);
    if (*catalog_cmd) return run_catalog(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  }
  return kExitInput;
}
