#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "floq/ladder.hpp"
#include "floq/propagator.hpp"

namespace floq {

enum class RunMode { evolve, symmetry_check, vanvleck_verify, sweep };

const char* run_mode_name(RunMode m);

struct InitialState {
  enum class Kind { neel, random_product, d0_eigenstate, basis };
  Kind kind = Kind::random_product;
  std::uint64_t seed = 1;
  int eigenstate_index = 0;
  std::string bitstring;

  friend bool operator==(const InitialState&, const InitialState&) = default;
};

/// A fully validated experiment description. sample_offsets are fractions
/// of the driving period.
struct RunSpec {
  RunMode mode = RunMode::evolve;
  LadderConfig config;
  int n_periods = 1;
  InitialState initial_state;
  std::string output_path = "out";
  std::vector<double> sample_offsets = {0.0, 0.5};
  KrylovSettings krylov;
  int vanvleck_order = 2;
  std::vector<std::pair<double, double>> lambda_grid;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

/// Parse the sectioned key-value config ([model], [run], [krylov]).
/// Unknown keys are rejected; every error names the offending key path.
RunSpec parse_config(const std::string& text);

/// Canonical config text; parse_config(emit_config(s)) == s.
std::string emit_config(const RunSpec& spec);

/// Construct the initial state named by the spec.
StateVector build_initial_state(const RunSpec& spec);

}  // namespace floq
