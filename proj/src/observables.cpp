#include "floq/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace floq {

double expectation(const OperatorSum& op, const StateVector& psi) {
  const cx v = psi.inner(op.apply(psi));
  if (std::abs(v.imag()) > 1e-10) {
    throw NumericalError("expectation value has a non-negligible imaginary part");
  }
  return v.real();
}

double entanglement_entropy(const StateVector& psi, int cut) {
  const int n = psi.n_sites();
  if (cut <= 0 || cut >= n) throw ValidationError("cut must split the qubits");
  if (std::abs(psi.norm() - 1.0) > 1e-8) {
    throw NumericalError("state norm deviates from 1 beyond 1e-8");
  }
  const Eigen::Index rows = Eigen::Index{1} << cut;
  const Eigen::Index cols = Eigen::Index{1} << (n - cut);
  Eigen::Map<const Eigen::MatrixXcd> m(psi.data(), rows, cols);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double p = svd.singularValues()(i) * svd.singularValues()(i);
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

double page_value(int L) {
  if (L < 2) throw ValidationError("page value needs L >= 2");
  return (L * std::numbers::ln2 - 1.0) / 2.0;
}

double energy_density(const StateVector& psi, const OperatorSum& d0, int n_spins) {
  if (n_spins != psi.n_sites()) {
    throw ValidationError("spin count does not match the state");
  }
  return expectation(d0, psi) / n_spins;
}

OddSeries odd_observable_series(const std::vector<TrajectoryRecord>& records, int which) {
  if (which != 1 && which != 2) throw ValidationError("odd-series selector must be 1 or 2");
  OddSeries s;
  std::size_t i = 0;
  while (i < records.size()) {
    const int m = records[i].m;
    const TrajectoryRecord* at0 = nullptr;
    const TrajectoryRecord* at_half = nullptr;
    while (i < records.size() && records[i].m == m) {
      if (records[i].offset == 0.0) {
        at0 = &records[i];
      } else {
        at_half = &records[i];
      }
      ++i;
    }
    if (at0 == nullptr || at_half == nullptr) {
      throw ValidationError("record stream is missing a sample offset");
    }
    const double a = which == 1 ? at0->o_odd : at0->o_odd2;
    const double b = which == 1 ? at_half->o_odd : at_half->o_odd2;
    s.at_period.push_back(a);
    s.at_half.push_back(b);
    s.symmetric.push_back(a + b);
    s.symmetric_normalized.push_back(
        std::abs(a) < kOddNormGuard ? std::numeric_limits<double>::quiet_NaN()
                                    : (a + b) / std::abs(a));
  }
  return s;
}

Plateau plateau_detect(const std::vector<double>& series, int window, double slope_tol) {
  if (window < 2) throw ValidationError("plateau window must have at least 2 samples");
  if (series.size() < 3 * static_cast<std::size_t>(window)) {
    throw ValidationError("series too short for plateau detection");
  }
  if (!(slope_tol > 0.0)) throw ValidationError("slope tolerance must be positive");

  double peak = 0.0;
  for (double v : series) peak = std::max(peak, std::abs(v));
  Plateau p;
  if (peak == 0.0) {
    p.found = true;
    p.degenerate = true;
    p.first = 0;
    p.last = series.size() - 1;
    return p;
  }

  const std::size_t n_windows = series.size() - window + 1;
  const double w = window;
  const double xbar = (w - 1.0) / 2.0;
  const double denom = w * (w * w - 1.0) / 12.0;  // sum of (x - xbar)^2

  auto window_slope = [&](std::size_t k) {
    double ybar = 0.0;
    for (int i = 0; i < window; ++i) ybar += series[k + i];
    ybar /= w;
    double num = 0.0;
    for (int i = 0; i < window; ++i) num += (i - xbar) * (series[k + i] - ybar);
    return num / denom;
  };

  std::size_t k = 0;
  while (k < n_windows && std::abs(window_slope(k)) >= slope_tol) ++k;
  if (k == n_windows) return p;  // none found
  p.found = true;
  p.first = k;
  while (k < n_windows && std::abs(window_slope(k)) < slope_tol) ++k;
  p.last = (k - 1) + window - 1;
  return p;
}

}  // namespace floq
