#pragma once

// JSON and CSV emission for the command-line tool. Key order is fixed and
// every run with the same inputs produces the same bytes.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsgauss/catalog.hpp"
#include "dsgauss/gauss_map.hpp"

namespace dsgauss {

std::string report_json(const ClassificationReport& r);
// One row per valid sample.
std::string report_csv(const ClassificationReport& r);

struct VerifyThresholds {
  double membership = kMembershipTol;
  double codazzi = 1e-6;
  double brioschi = 1e-7;
  double frame = 1e-9;
  double nu_norm = 1e-8;

  static VerifyThresholds for_mode(DiffMode mode);
};

struct VerifyReport {
  std::string surface_id;
  SurfaceSpec spec;
  DiffMode mode = DiffMode::Jet;
  VerifyThresholds thresholds;
  double membership_defect = 0.0;
  int spacelike_points = 0;
  int total_points = 0;
  double codazzi_max = 0.0;
  double brioschi_max = 0.0;
  double frame_defect_max = 0.0;
  double h_asymmetry_max = 0.0;
  double nu_norm_defect_max = 0.0;
  std::vector<SkippedPoint> skipped;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// Membership, space-likeness, Codazzi, Gauss-equation and frame checks over
// the sample grid. Throws NotInDeSitter like classify.
VerifyReport verify(const SurfaceSpec& spec, DiffMode mode = DiffMode::Jet, const std::string& surface_id = "surface",
                    int threads = 0);
std::string verify_json(const VerifyReport& r);

struct SweepRow {
  double value = 0.0;
  std::string skipped;  // reason; empty for computed rows
  double K_mean = 0.0, K_std = 0.0, f_mean = 0.0, f_std = 0.0;
  std::optional<double> lambda;
  double residual_eigen_max = 0.0;
  bool quasi_minimal = false;
};

// Evaluates make(value) for `steps` evenly spaced values in [a, b]. Input and
// geometry errors at a step mark the row skipped.
std::vector<SweepRow> sweep(const std::function<SurfaceSpec(double)>& make, double a, double b, int steps,
                            const ClassifyOptions& options);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::string& param, const std::vector<SweepRow>& rows);

std::string catalog_text();
std::string catalog_json();

// Writes to `path` through a temporary file and a rename; "-" or empty means stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace dsgauss
