#ifndef HFK_RUNNER_HPP
#define HFK_RUNNER_HPP

#include <string>

#include "hfk/energies_centers.hpp"
#include "hfk/reduction.hpp"

namespace hfk::runner {

inline constexpr const char* kVersion = "hfk 1.0.0";
inline constexpr int kLeafArchiveSchemaVersion = 1;

enum class ExperimentKind {
  Validate,
  SolveLeaf,
  Foliate,
  EnergyReport,
  CenterReport,
  MonotonicityReport,
};

ExperimentKind experiment_from_name(const std::string& name);

struct ExperimentConfig {
  models::InitialDataModel model;
  int l_max = 12;
  int n_theta = 32;
  int n_phi = 32;
  std::vector<double> radii;
  double beta = 0.49;
  reduction::SolverOptions solver;
  reduction::MinimizeOptions minimize;
  Vec3 xi = Vec3::Zero();  // solve-leaf
  Vec3 recenter_q = Vec3::Zero();  // center-report recentred columns
  std::optional<std::vector<Vec3>> xi_override;
  std::string out_dir = "out";
};

/// Parses and validates the JSON configuration; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& path);

/// Exit status: 0 ok, 2 configuration error, 3 numerical failure,
/// 4 hypothesis violation (boundary minimum / ordering failure / drift).
int run(ExperimentKind kind, const ExperimentConfig& config);

}  // namespace hfk::runner

#endif  // HFK_RUNNER_HPP
