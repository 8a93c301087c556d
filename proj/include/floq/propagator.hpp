#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "floq/dense.hpp"
#include "floq/ladder.hpp"
#include "floq/pauli.hpp"

namespace floq {

struct KrylovSettings {
  int max_subspace = 30;
  double tolerance = 1e-12;   // local truncation estimate per substep
  double max_substep = 1e30;  // upper bound on a single exponential step

  friend bool operator==(const KrylovSettings&, const KrylovSettings&) = default;
};

/// exp(-i h dt)|psi> by Lanczos projection with full reorthogonalization and
/// adaptive substep halving. The output is renormalized to the input norm.
/// Throws NumericalError if the smallest allowed substep still fails to
/// converge within max_subspace.
StateVector evolve_segment(const StateVector& psi, const OperatorSum& h, double dt,
                           const KrylovSettings& settings = {});

/// Exact evolution via dense eigendecomposition; oracle path, n_sites <= 12.
StateVector dense_oracle_evolve(const StateVector& psi, const OperatorSum& h, double dt);

/// Called with (period index, offset within the period, state at m*T+offset).
using SampleSink = std::function<void(int, double, const StateVector&)>;

/// Stroboscopic evolution under the four-step protocol. For every period
/// m = 0..n_periods-1 the state is emitted at each sample offset (offsets are
/// measured from the period start, must be sorted, and must land on segment
/// boundaries or inside a segment, which is then split exactly).
/// n_periods = 0 emits the single t = 0 snapshot.
void evolve_protocol(const StateVector& psi0, const DriveProtocol& protocol,
                     int n_periods, const std::vector<double>& sample_offsets,
                     const KrylovSettings& settings, const SampleSink& sink);

/// The resonant-drive propagator U_0(t), cached for repeated evaluation.
/// U_0 advances under the first resonant segment, freezes during the weak
/// window, advances under the mirrored segment, and freezes again; over the
/// second period U_0(T+s) = U_0(s) U_0(T).
class ResonantFrame {
 public:
  explicit ResonantFrame(const LadderConfig& cfg);

  const LadderConfig& config() const { return cfg_; }

  /// U_0(t) for t in [0, T].
  Eigen::MatrixXcd at(double t) const;

  /// U_0(t) for t in [0, 2T].
  Eigen::MatrixXcd at_extended(double t) const;

  /// U_0(T) = exp(-i H_0b tau T) exp(-i H_0a tau T), no phase fixing.
  const Eigen::MatrixXcd& one_period() const { return x_raw_; }

  /// U_0(T/2): the frozen first resonant exponential.
  const Eigen::MatrixXcd& half_period() const { return a_frozen_; }

 private:
  LadderConfig cfg_;
  HermitianEig a_eig_, b_eig_;
  Eigen::MatrixXcd a_frozen_, x_raw_;
};

/// U_0(t) for t in [0, T]; equals build_x_operator at t = T up to the
/// recorded global phase. Guarded by kMaxDenseSites.
Eigen::MatrixXcd u0_at(const LadderConfig& cfg, double t);

/// Dense propagator of the full piecewise-constant protocol (oracle path).
/// Segment exponentials come from cached eigendecompositions, so repeated
/// evaluations are cheap.
class DenseProtocol {
 public:
  DenseProtocol(const DriveProtocol& protocol, int n_sites);

  /// U(t2, t1) with 0 <= t1 <= t2; spans period boundaries.
  Eigen::MatrixXcd propagator(double t2, double t1 = 0.0) const;

  double period() const { return period_; }

 private:
  double period_;
  Eigen::Index dim_;
  std::vector<HermitianEig> eigs_;
  std::vector<double> durations_;
};

}  // namespace floq
