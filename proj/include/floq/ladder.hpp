#pragma once

#include <vector>

#include <Eigen/Dense>

#include "floq/pauli.hpp"

namespace floq {

/// Parameters of the four-step driven two-leg ladder. Energies are in units
/// of the weak-drive scale j; hbar = 1. Derived quantities (period, the
/// resonant coupling, the rescaled weak coupling) are recomputed on demand
/// and never stored.
struct LadderConfig {
  int L = 6;                 // ladder length; total qubit count is 2L
  double omega = 16.0;       // driving frequency
  double tau = 0.25;         // resonant-segment fraction of the period, in (0, 1/2)
  double j = 1.0;            // weak-drive scale
  double g_x = 0.45225;
  double g_y = 0.45225;
  double g_z = 0.7;
  double g_zz = 1.3;         // rung Ising coupling
  double lambda_a = 0.5;     // center-bond scale, first half-period
  double lambda_b = 0.5;     // center-bond scale, second half-period

  int n_sites() const { return 2 * L; }
  double period() const;                      // T = 2*pi/omega
  double j_prime() const { return j / (0.5 - tau); }
  double j1() const { return omega / (4.0 * tau); }
  bool symmetric() const { return lambda_a == lambda_b; }

  /// Upper-chain spin i lives on qubit 2i, lower-chain spin i on qubit 2i+1.
  /// The mirror bipartition is then a contiguous qubit split.
  static int upper(int i) { return 2 * i; }
  static int lower(int i) { return 2 * i + 1; }

  void validate() const;  // throws ValidationError

  friend bool operator==(const LadderConfig&, const LadderConfig&) = default;
};

struct DriveSegment {
  OperatorSum hamiltonian;
  double duration;
};

/// One period of the piecewise-constant drive: resonant, weak, mirrored
/// resonant, mirrored weak.
struct DriveProtocol {
  std::vector<DriveSegment> segments;
  double period = 0.0;
};

/// Resonant Hamiltonian of the first quarter period.
OperatorSum build_h0a(const LadderConfig& cfg);
/// Mirror image of build_h0a.
OperatorSum build_h0b(const LadderConfig& cfg);
/// Weak drive of the first half period, without the center coupling.
OperatorSum build_va(const LadderConfig& cfg);
/// Center-bond coupling; side selects the first (a) or second (b) half.
OperatorSum build_center_coupling(const LadderConfig& cfg, char side);
/// Full weak segments V + V^c.
OperatorSum build_weak_a(const LadderConfig& cfg);
OperatorSum build_weak_b(const LadderConfig& cfg);

/// The four-step protocol with durations (tau*T, T/2 - tau*T, tau*T, T/2 - tau*T).
DriveProtocol build_protocol(const LadderConfig& cfg);

/// Qubit relabeling of the mirror: site i <-> L-1-i within each chain.
std::vector<int> mirror_permutation(int L);

/// Conjugation by the mirror realized as an index permutation; coefficients
/// are unchanged. Applying it twice is the identity.
OperatorSum mirror_transform(const OperatorSum& op, int L);

/// The mirror as a dense permutation matrix with global phase fixed to +1,
/// so that g_M^2 = I exactly. Guarded by kMaxDenseSites.
Eigen::MatrixXcd build_mirror_unitary(int L);

/// The one-period propagator of the resonant drive as an exact Pauli string:
/// each resonant term rotates by pi/2 (the coupling j1 = omega/(4 tau) pins
/// j1*tau*T = pi/2), and the terms commute, so the product telescopes.
/// Throws NumericalError if the resonant terms fail to commute.
PauliString x_operator_string(const LadderConfig& cfg);

/// X = exp(-i H_0b tau T) exp(-i H_0a tau T) by dense exponentiation,
/// phase-fixed so X^2 = +I. Throws NumericalError when X^2 is not
/// proportional to the identity within 1e-10.
Eigen::MatrixXcd build_x_operator(const LadderConfig& cfg);

/// Closed-form zeroth-order prethermal Hamiltonian D_0 = D_L + D_R + D_c.
/// Left/right halves carry sign flips on the bonds and fields touching the
/// support of the resonant one-period string; the center piece carries the
/// lambda weights.
OperatorSum closed_form_d0(const LadderConfig& cfg);

/// The odd observables used to detect the half-period micromotion:
/// index 1 is the upper-chain x pair, index 2 the lower-chain y pair.
/// Both flip sign under mirror_transform.
OperatorSum odd_operator(const LadderConfig& cfg, int index);

}  // namespace floq
