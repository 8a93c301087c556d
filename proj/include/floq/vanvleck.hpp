#pragma once

#include <vector>

#include <Eigen/Dense>

#include "floq/ladder.hpp"
#include "floq/propagator.hpp"

namespace floq {

/// One window on which the interaction-picture weak drive is constant.
struct FourierWindow {
  Eigen::MatrixXcd matrix;
  double t_begin = 0.0;
  double t_end = 0.0;
};

/// Fourier data of the interaction-picture Hamiltonian over its full period
/// (twice the drive period for the order-2 resonance).
///
/// Because the drive is piecewise constant, every component
///   V_m = (1/P) \int_0^P U_0^dag(t) V(t) U_0(t) e^{i m (2 pi / P) t} dt
/// is a linear combination of the frozen window matrices with closed-form
/// scalar weights. All expansion sums therefore factor into scalar series
/// and a fixed set of window-matrix commutators; only those commutators are
/// ever multiplied out.
class FourierTable {
 public:
  struct Options {
    long m_single = 1 << 17;  // cutoff for absolutely convergent single sums
    int m_conv = 1024;        // inner cutoff of the double (convolution) sums
    int m_kick2 = 4096;       // output harmonics kept in the order-2 kick
  };

  /// Table of the ladder protocol; dense, 2L <= 12.
  explicit FourierTable(const LadderConfig& cfg);
  FourierTable(const LadderConfig& cfg, Options opt);

  /// Table of an arbitrary piecewise-constant interaction-picture drive.
  static FourierTable from_windows(std::vector<FourierWindow> windows,
                                   double base_period);
  static FourierTable from_windows(std::vector<FourierWindow> windows,
                                   double base_period, Options opt);

  double base_period() const { return period_; }
  double omega_base() const;  // 2 pi / base_period
  const std::vector<FourierWindow>& windows() const { return windows_; }

  /// V_m for any integer m (analytic in m; V_{-m} = V_m^dag).
  Eigen::MatrixXcd component(long m) const;

  /// Order-i expansion term of the effective Hamiltonian, i in {0, 1, 2}.
  /// Hermitian within 1e-10 (checked). Throws NumericalError when the
  /// truncation tail estimate exceeds the internal tolerance.
  Eigen::MatrixXcd effective_term(int order) const;

  /// Effective static Hamiltonian truncated at the given order:
  /// sum of effective_term(0..order).
  Eigen::MatrixXcd effective_hamiltonian(int order) const;

  /// Order-i kick at time t (Hermitian; the frame rotation is e^{-iK}).
  /// Order 1 is evaluated in closed form (piecewise linear with the gauge
  /// constraint of zero period average); order 2 as a truncated Fourier
  /// series whose symmetry transformation is exact per harmonic.
  Eigen::MatrixXcd kick(double t, int order) const;

  Eigen::Index dim() const;

 private:
  FourierTable() = default;

  double period_ = 0.0;
  std::vector<FourierWindow> windows_;
  Options opt_;

  // c_w(m) tabulated for |m| <= c_reach_ per window, plus light caches of
  // the pair and nested commutators and the convolution series.
  long c_reach_ = 0;
  std::vector<std::vector<cx>> c_;  // c_[w][m + c_reach_]
  cx weight(std::size_t w, long m) const { return c_[w][m + c_reach_]; }

  mutable std::vector<Eigen::MatrixXcd> pair_comm_;    // [M_a, M_b]
  mutable std::vector<Eigen::MatrixXcd> nested_comm_;  // [[M_a, M_b], M_c]
  mutable std::vector<std::vector<cx>> conv_;          // R_ab(m)

  void tabulate_weights();
  void ensure_pair_comms() const;
  void ensure_nested_comms() const;
  void ensure_convolutions() const;
  Eigen::MatrixXcd order1_term() const;
  Eigen::MatrixXcd order2_term() const;
  Eigen::MatrixXcd kick1(double t) const;
  Eigen::MatrixXcd kick2(double t) const;
  void check_hermitian(const Eigen::MatrixXcd& m, const char* what) const;
};

/// Convenience wrappers matching the module's operation map.
Eigen::MatrixXcd fourier_component(const LadderConfig& cfg, long m);
Eigen::MatrixXcd build_dn(const LadderConfig& cfg, int order);

}  // namespace floq
