#pragma once

#include <map>
#include <string>
#include <vector>

#include "floq/pauli.hpp"

namespace floq {

/// One stroboscopic sample: observables of the state at t = m*T + offset.
struct TrajectoryRecord {
  int m = 0;
  double t = 0.0;
  double offset = 0.0;
  double o_odd = 0.0;
  double o_odd2 = 0.0;
  double s_ent = 0.0;           // bipartite entropy, nats
  double energy_density = 0.0;  // <D_0>/N_s
  std::map<std::string, double> extra;
};

/// <psi|op|psi> for Hermitian op; throws NumericalError when the imaginary
/// part exceeds 1e-10.
double expectation(const OperatorSum& op, const StateVector& psi);

/// Von Neumann entropy (nats) of the reduced state over qubits [0, cut),
/// via the singular values of the amplitude reshape. Squared singular
/// values below 1e-14 are treated as exact zeros.
double entanglement_entropy(const StateVector& psi, int cut);

/// (L ln2 - 1)/2: the random-state entropy benchmark used to normalize the
/// half-cut entanglement entropy.
double page_value(int L);

double energy_density(const StateVector& psi, const OperatorSum& d0, int n_spins);

/// The odd-observable series extracted from a record stream sampled at
/// offsets {0, T/2}.
struct OddSeries {
  std::vector<double> at_period;             // <O(mT)>
  std::vector<double> at_half;               // <O(mT + T/2)>
  std::vector<double> symmetric;             // <O(mT)> + <O(mT+T/2)>
  std::vector<double> symmetric_normalized;  // NaN when |<O(mT)>| < 1e-6
};

/// which = 1 selects o_odd, which = 2 selects o_odd2. Every period must
/// carry both offsets.
OddSeries odd_observable_series(const std::vector<TrajectoryRecord>& records, int which);

/// The denominator guard of the normalized symmetric combination.
inline constexpr double kOddNormGuard = 1e-6;

struct Plateau {
  bool found = false;
  bool degenerate = false;  // constant-zero input: whole range returned
  std::size_t first = 0;    // index of the first plateau sample
  std::size_t last = 0;     // index of the last plateau sample
  std::size_t length() const { return found ? last - first + 1 : 0; }
};

/// Sliding least-squares slope over `window` samples; plateau = the first
/// contiguous run of windows with |slope| < slope_tol (slope measured per
/// sample). Requires series length >= 3*window.
Plateau plateau_detect(const std::vector<double>& series, int window, double slope_tol);

}  // namespace floq
