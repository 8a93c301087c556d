#pragma once

#include <string>
#include <vector>

#include "floq/observables.hpp"
#include "floq/runspec.hpp"
#include "floq/symmetry.hpp"

namespace floq {

/// Plateau detection parameters used on the stroboscopic energy-density
/// series: window length in periods and the least-squares slope bound
/// (energy density per period).
inline constexpr int kPlateauWindow = 50;
inline constexpr double kPlateauSlopeTol = 2e-5;

struct TrajectoryResult {
  LadderConfig config;
  std::vector<TrajectoryRecord> records;  // flat, ordered by (m, offset)
  OddSeries odd1, odd2;
  Plateau energy_plateau;                 // on the offset-0 energy density
  OddObservableAudit audit1, audit2;
};

struct VanVleckResidual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ExperimentResult {
  RunSpec spec;
  std::vector<TrajectoryResult> trajectories;     // evolve: one; sweep: per grid point
  std::vector<SymmetryReport> symmetry_reports;   // symmetry-check mode
  double antiunitary_conjugation_residual = -1.0; // informational
  std::vector<VanVleckResidual> vanvleck_residuals;
};

/// Run one trajectory with all observables sampled at the spec's offsets.
TrajectoryResult run_trajectory(const RunSpec& spec);

/// Dispatch on spec.mode; sweep runs its grid points concurrently.
ExperimentResult run_experiment(const RunSpec& spec);

/// Write the result bundle: trajectory CSV files (schema below) plus a
/// structured report.json. Deterministic byte-for-byte for a fixed spec.
///
/// CSV columns: m, t, o_odd_at_mT, o_odd_at_mT_half, o_odd2_at_mT,
/// o_odd2_at_mT_half, o_s, o_s_norm, s_ent_over_page, energy_density.
/// Missing normalized values are written as the literal token NA.
void emit_results(const ExperimentResult& result, const std::string& out_dir);

/// The report.json payload as a string (also what emit_results writes).
std::string render_report(const ExperimentResult& result);

/// One trajectory as CSV text.
std::string render_trajectory_csv(const TrajectoryResult& t);

}  // namespace floq
