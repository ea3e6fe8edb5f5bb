#include "dsgauss/surface_spec.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dsgauss {

namespace {

using nlohmann::json;

const std::set<std::string> kReserved = {"u", "v", "pi"};

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) throw SchemaError("unknown key '" + k + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError("missing key '" + key + "' in " + where);
  return *it;
}

int require_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw SchemaError(what + " must be an integer");
  return j.get<int>();
}

double require_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw SchemaError(what + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(what + " must be finite");
  return x;
}

std::pair<double, double> require_interval(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(what + " must be a two-element array");
  return {require_number(j[0], what), require_number(j[1], what)};
}

}  // namespace

const char* to_string(DiffMode m) { return m == DiffMode::Jet ? "jet" : "fd"; }

DiffMode diff_mode_from_string(const std::string& s) {
  if (s == "jet") return DiffMode::Jet;
  if (s == "fd") return DiffMode::FiniteDifference;
  throw InputError("unknown differentiation mode '" + s + "' (expected jet|fd)");
}

SurfaceSpec make_surface(Signature sig, std::vector<std::string> components, ParamMap params, Rect domain, int n_u,
                         int n_v) {
  if (static_cast<int>(components.size()) != sig.dim())
    throw SchemaError("expected " + std::to_string(sig.dim()) + " components, got " +
                      std::to_string(components.size()));
  if (n_u < kMinGrid || n_v < kMinGrid)
    throw SchemaError("grid must be at least " + std::to_string(kMinGrid) + "x" + std::to_string(kMinGrid));
  if (!(domain.u_min < domain.u_max) || !(domain.v_min < domain.v_max)) throw SchemaError("degenerate domain");
  std::set<std::string> declared;
  for (const auto& [name, value] : params) {
    if (!is_identifier(name) || kReserved.count(name) || func_from_name(name))
      throw SchemaError("invalid parameter name '" + name + "'");
    if (!std::isfinite(value)) throw SchemaError("parameter '" + name + "' must be finite");
    declared.insert(name);
  }

  SurfaceSpec spec;
  spec.signature = sig;
  spec.params = std::move(params);
  spec.domain = domain;
  spec.n_u = n_u;
  spec.n_v = n_v;
  for (std::size_t i = 0; i < components.size(); ++i) {
    try {
      spec.components.push_back(parse(components[i], &declared));
    } catch (const ParseError& e) {
      throw ParseError("component " + std::to_string(i) + ": " + e.what(), e.offset());
    }
  }
  spec.component_text = std::move(components);
  return spec;
}

SurfaceSpec load_surface(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  only_keys(doc, {"ambient", "params", "components", "domain", "grid"}, "document");

  const auto& amb = require(doc, "ambient", "document");
  if (!amb.is_object()) throw SchemaError("ambient must be an object");
  only_keys(amb, {"dim", "index"}, "ambient");
  const int dim = require_int(require(amb, "dim", "ambient"), "ambient.dim");
  const int index = require_int(require(amb, "index", "ambient"), "ambient.index");
  if (dim < 1 || index < 0 || index > dim) throw SchemaError("ambient: need dim >= 1 and 0 <= index <= dim");

  ParamMap params;
  if (auto it = doc.find("params"); it != doc.end()) {
    if (!it->is_object()) throw SchemaError("params must be an object");
    for (const auto& [k, val] : it->items()) params[k] = require_number(val, "params." + k);
  }

  const auto& comps = require(doc, "components", "document");
  if (!comps.is_array()) throw SchemaError("components must be an array");
  std::vector<std::string> text;
  for (const auto& c : comps) {
    if (!c.is_string()) throw SchemaError("components must be strings");
    text.push_back(c.get<std::string>());
  }

  const auto& dom = require(doc, "domain", "document");
  if (!dom.is_object()) throw SchemaError("domain must be an object");
  only_keys(dom, {"u", "v"}, "domain");
  const auto [u0, u1] = require_interval(require(dom, "u", "domain"), "domain.u");
  const auto [v0, v1] = require_interval(require(dom, "v", "domain"), "domain.v");

  const auto& grid = require(doc, "grid", "document");
  if (!grid.is_array() || grid.size() != 2) throw SchemaError("grid must be [n_u, n_v]");
  const int nu = require_int(grid[0], "grid"), nv = require_int(grid[1], "grid");

  return make_surface(Signature(dim, index), std::move(text), std::move(params), Rect{u0, u1, v0, v1}, nu, nv);
}

SurfaceSpec load_surface_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open surface file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_surface(ss.str());
}

std::string dump_surface(const SurfaceSpec& spec) {
  nlohmann::ordered_json doc;
  doc["ambient"] = {{"dim", spec.signature.dim()}, {"index", spec.signature.index()}};
  doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : spec.params) doc["params"][k] = v;
  doc["components"] = spec.component_text;
  doc["domain"] = {{"u", {spec.domain.u_min, spec.domain.u_max}}, {"v", {spec.domain.v_min, spec.domain.v_max}}};
  doc["grid"] = {spec.n_u, spec.n_v};
  return doc.dump(2) + "\n";
}

SurfaceSpec swap_parameters(const SurfaceSpec& spec) {
  SurfaceSpec out = spec;
  out.components.clear();
  out.component_text.clear();
  for (const auto& c : spec.components) {
    auto s = swap_uv(c);
    out.component_text.push_back(unparse(*s));
    out.components.push_back(std::move(s));
  }
  out.domain = Rect{spec.domain.v_min, spec.domain.v_max, spec.domain.u_min, spec.domain.u_max};
  std::swap(out.n_u, out.n_v);
  return out;
}

std::vector<std::pair<double, double>> sample_points(const SurfaceSpec& spec) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(spec.n_u) * spec.n_v);
  const double du = (spec.domain.u_max - spec.domain.u_min) / spec.n_u;
  const double dv = (spec.domain.v_max - spec.domain.v_min) / spec.n_v;
  for (int i = 0; i < spec.n_u; ++i)
    for (int j = 0; j < spec.n_v; ++j)
      pts.emplace_back(spec.domain.u_min + (i + 0.5) * du, spec.domain.v_min + (j + 0.5) * dv);
  return pts;
}

SemiVector<double> position(const SurfaceSpec& spec, double u, double v) {
  VectorX<double> c(spec.signature.dim());
  for (int i = 0; i < spec.signature.dim(); ++i) c[i] = eval_value(*spec.components[i], u, v, spec.params);
  return SemiVector<double>(spec.signature, c);
}

SemiVector<Jet> position_jet(const SurfaceSpec& spec, double u, double v, DiffMode mode, double fd_step) {
  VectorX<Jet> c(spec.signature.dim());
  for (int i = 0; i < spec.signature.dim(); ++i) {
    const Expr& e = *spec.components[i];
    if (mode == DiffMode::Jet) {
      c[i] = eval_jet(e, u, v, spec.params);
    } else {
      c[i] = fd_oracle([&](double a, double b) { return eval_value(e, a, b, spec.params); }, u, v, fd_step,
                       spec.domain);
    }
  }
  return SemiVector<Jet>(spec.signature, c);
}

}  // namespace dsgauss
