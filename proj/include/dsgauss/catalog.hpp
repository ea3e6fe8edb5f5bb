#pragma once

// Built-in surfaces: the four explicit quasi-minimal families with parallel
// mean curvature and three reference test surfaces.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsgauss/gauss_map.hpp"
#include "dsgauss/surface_spec.hpp"

namespace dsgauss {

enum class Provenance { Paper, Derived, Trivial };

const char* to_string(Provenance p);

template <typename T>
struct Tagged {
  T value;
  Provenance provenance;
};

struct ExpectedProperties {
  std::optional<Tagged<double>> K;
  std::optional<Tagged<double>> lambda;
  std::optional<Tagged<bool>> quasi_minimal;
  std::optional<Tagged<bool>> parallel_H;
  std::optional<Tagged<bool>> pw1type;
  std::optional<Tagged<TheoremCase>> theorem_case;
};

struct CatalogParam {
  std::string name;
  double default_value;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<CatalogParam> params;
  std::string constraint;  // empty when unconstrained
  ExpectedProperties expected;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);  // throws UnknownEntry

// Missing parameters take their defaults; unknown ones are rejected.
// Throws UnknownEntry, ConstraintViolation, InputError.
SurfaceSpec instantiate(const std::string& name, const ParamMap& params = {});

// Random quadratic/cubic perturbation y of (0, 0, u, v, 1), normalised to
// x = y / sqrt(<y, y>). Same seed, same components on every platform.
std::vector<std::string> random_poly_components(std::uint64_t seed);

double membership_defect(const SurfaceSpec& spec, std::span<const std::pair<double, double>> samples);
double membership_defect(const SurfaceSpec& spec);  // over sample_points(spec)

// Which of the explicit families (i)-(iv) the spec is, by identity of the
// parametrisation (canonical component text and family parameters).
std::optional<TheoremCase> match_family(const SurfaceSpec& spec);

}  // namespace dsgauss
