#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "floq/ladder.hpp"
#include "floq/pauli.hpp"
#include "floq/vanvleck.hpp"

namespace floq {

/// A (anti)unitary symmetry candidate. For antiunitary elements the matrix
/// is the unitary part, composed with complex conjugation in the
/// computational basis.
struct SymmetryElement {
  enum class Kind { unitary, antiunitary };
  Kind kind = Kind::unitary;
  Eigen::MatrixXcd matrix;
  std::string label;
};

struct SymmetryReport {
  std::string relation;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

SymmetryReport make_report(std::string relation, double residual, double tolerance);

/// Residual of g H(t) g^-1 = H(t + T/2) at segment granularity (dense,
/// spectral norm). The segment structure must admit a half-period shift.
SymmetryReport check_unitary_dynamical_symmetry(const DriveProtocol& protocol,
                                                const SymmetryElement& g,
                                                double tolerance = 1e-9);

/// Same relation evaluated exactly at the Pauli-string level with the mirror
/// permutation; usable at any ladder size. Residuals are coefficient-l2
/// (normalized Hilbert-Schmidt) norms.
SymmetryReport check_mirror_protocol_strings(const DriveProtocol& protocol, int L,
                                             double tolerance = 1e-12);

/// Residual of g conj(H(t)) g^-1 = H(-t + T/2) at segment granularity.
/// Each time-reversed segment window must fall inside a single segment.
SymmetryReport check_antiunitary_dynamical_symmetry(const DriveProtocol& protocol,
                                                    const SymmetryElement& g,
                                                    double tolerance = 1e-9);

/// g_int = U_0(T/2)^-1 g. For unitary g the projective square relation
/// g_int^2 = U_0(T)^-1 g^2 is verified to 1e-10 (throws NumericalError on
/// failure).
SymmetryElement interaction_picture_element(const LadderConfig& cfg,
                                            const SymmetryElement& g);

/// The group-algebra audit at symmetric couplings: the one-period string
/// shifts the interaction-picture Hamiltonian and the kicks by -T, the
/// projective mirror shifts them by +T/2, the projective square matches the
/// inverse one-period string (up to the gauge phase), and the two commute.
/// Pass explicit x / g_int matrices to run negative controls.
std::vector<SymmetryReport> group_algebra_report(const LadderConfig& cfg,
                                                 double tolerance = 1e-9,
                                                 int samples_per_segment = 8);
std::vector<SymmetryReport> group_algebra_report(const LadderConfig& cfg,
                                                 const Eigen::MatrixXcd& x,
                                                 const Eigen::MatrixXcd& g_int,
                                                 double tolerance = 1e-9,
                                                 int samples_per_segment = 8);

/// Residual series of the half-period micromotion relation:
/// r(m) = <O(mT + T/2)> - alpha_sign * <O(mT)>.
std::vector<double> micromotion_residual(const std::vector<double>& o_at_period,
                                         const std::vector<double>& o_at_half,
                                         int alpha_sign);

/// Exact string-level audit of the conditions an odd detection observable
/// must satisfy: mirror flips its sign, it commutes with the one-period
/// string, and its commutator with the closed-form prethermal Hamiltonian is
/// recorded (nonzero; shrinks as 1/frequency in the relation tolerance).
struct OddObservableAudit {
  double mirror_flip_residual = 0.0;  // ||mirror(O) + O||
  double x_commutator_norm = 0.0;     // ||[X, O]||
  double d0_commutator_norm = 0.0;    // ||[D_0, O]|| (recorded, not asserted)
};
OddObservableAudit audit_odd_observable(const LadderConfig& cfg, const OperatorSum& o);

/// Residual of the projective detection identity
/// g'_M U_n(0) g_int^-1 = U_n(0) e^{i D_n T/2} at the given expansion order
/// (dense, phase-aligned). Shrinks with the driving frequency.
double projective_rotation_residual(const LadderConfig& cfg, int order);

/// Residual of g_int U_int(t, 0) g_int^-1 = U_int(t + T/2, T/2) at time t.
double interaction_propagator_residual(const LadderConfig& cfg, double t);

}  // namespace floq
