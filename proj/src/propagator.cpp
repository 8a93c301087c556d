#include "floq/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "floq/kernels.hpp"

namespace floq {

namespace {

// exp(-i T dt) e1 for the real symmetric tridiagonal T given by
// (alpha, beta); returns the small coefficient vector.
Eigen::VectorXcd tridiag_expm_e1(const std::vector<double>& alpha,
                                 const std::vector<double>& beta, double dt) {
  const int k = static_cast<int>(alpha.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) t(i, i) = alpha[i];
  for (int i = 0; i + 1 < k; ++i) {
    t(i, i + 1) = beta[i];
    t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const Eigen::VectorXd e1 = es.eigenvectors().row(0);
  const Eigen::ArrayXcd phases =
      (cx{0.0, -dt} * es.eigenvalues().array().cast<cx>()).exp();
  return es.eigenvectors().cast<cx>() * (phases * e1.array().cast<cx>()).matrix();
}

// Single Lanczos exponential step on a unit-norm vector. Returns false when
// max_subspace is reached without meeting the truncation tolerance.
bool lanczos_expm_step(const OperatorSum& h, int n_sites, std::vector<cx>& amps,
                       double dt, const KrylovSettings& s) {
  using kernels::axpy;
  using kernels::dot;
  using kernels::squared_norm;

  const std::size_t dim = amps.size();
  std::vector<std::vector<cx>> basis;
  std::vector<double> alpha, beta;
  basis.push_back(amps);

  Eigen::VectorXcd combo;
  for (int k = 0; k < s.max_subspace; ++k) {
    StateVector vk = StateVector::from_amplitudes(n_sites, basis[k]);
    std::vector<cx> w = h.apply(vk).amps();
    if (k > 0) axpy(w.data(), cx{-beta[k - 1], 0.0}, basis[k - 1].data(), dim);
    const double a = dot(basis[k].data(), w.data(), dim).real();
    alpha.push_back(a);
    axpy(w.data(), cx{-a, 0.0}, basis[k].data(), dim);
    for (int i = 0; i <= k; ++i) {
      const cx c = dot(basis[i].data(), w.data(), dim);
      axpy(w.data(), -c, basis[i].data(), dim);
    }
    const double b = std::sqrt(squared_norm(w.data(), dim));

    combo = tridiag_expm_e1(alpha, beta, dt);
    const double err = b * std::abs(combo(k));
    if (err <= s.tolerance || b <= 1e-14) break;
    if (k + 1 == s.max_subspace) return false;

    beta.push_back(b);
    kernels::scale(w.data(), cx{1.0 / b, 0.0}, dim);
    basis.push_back(std::move(w));
  }

  std::vector<cx> out(dim, cx{0.0, 0.0});
  for (std::size_t i = 0; i < basis.size() && i < static_cast<std::size_t>(combo.size()); ++i) {
    axpy(out.data(), combo(static_cast<int>(i)), basis[i].data(), dim);
  }
  amps = std::move(out);
  return true;
}

}  // namespace

StateVector evolve_segment(const StateVector& psi, const OperatorSum& h, double dt,
                           const KrylovSettings& settings) {
  if (h.n_sites() != psi.n_sites()) throw ValidationError("operator/state size mismatch");
  if (!h.is_hermitian()) throw ValidationError("evolve_segment requires a Hermitian generator");
  if (settings.max_subspace < 2 || !(settings.tolerance > 0.0)) {
    throw ValidationError("invalid Krylov settings");
  }
  if (dt == 0.0 || h.empty()) return psi;

  const double in_norm = psi.norm();
  if (in_norm == 0.0) throw ValidationError("cannot evolve the zero vector");

  std::vector<cx> start = psi.amps();
  kernels::scale(start.data(), cx{1.0 / in_norm, 0.0}, start.size());

  int n_sub = std::max(1, static_cast<int>(std::ceil(std::abs(dt) / settings.max_substep)));
  while (true) {
    std::vector<cx> amps = start;
    const double step = dt / n_sub;
    bool ok = true;
    for (int i = 0; i < n_sub && ok; ++i) {
      ok = lanczos_expm_step(h, psi.n_sites(), amps, step, settings);
      if (ok) {
        // keep the walking vector unit-norm between substeps
        const double nn = std::sqrt(kernels::squared_norm(amps.data(), amps.size()));
        kernels::scale(amps.data(), cx{1.0 / nn, 0.0}, amps.size());
      }
    }
    if (ok) {
      kernels::scale(amps.data(), cx{in_norm, 0.0}, amps.size());
      return StateVector::from_amplitudes(psi.n_sites(), std::move(amps));
    }
    n_sub *= 2;
    if (n_sub > (1 << 20)) {
      throw NumericalError("Krylov evolution failed to converge at the minimal substep");
    }
  }
}

StateVector dense_oracle_evolve(const StateVector& psi, const OperatorSum& h, double dt) {
  if (h.n_sites() != psi.n_sites()) throw ValidationError("operator/state size mismatch");
  if (psi.n_sites() > 12) throw ValidationError("dense oracle above the size guard");
  HermitianEig eig(h.to_dense());
  return StateVector::from_eigen(psi.n_sites(), eig.apply_expm(dt, psi.as_eigen()));
}

void evolve_protocol(const StateVector& psi0, const DriveProtocol& protocol,
                     int n_periods, const std::vector<double>& sample_offsets,
                     const KrylovSettings& settings, const SampleSink& sink) {
  if (n_periods < 0) throw ValidationError("n_periods must be non-negative");
  const double T = protocol.period;
  const double eps = 1e-9 * T;
  if (!std::is_sorted(sample_offsets.begin(), sample_offsets.end())) {
    throw ValidationError("sample offsets must be sorted");
  }
  for (double s : sample_offsets) {
    if (s < 0.0 || s >= T - eps) throw ValidationError("sample offsets must lie in [0, T)");
  }
  if (n_periods == 0) {
    sink(0, 0.0, psi0);
    return;
  }

  StateVector psi = psi0;
  for (int m = 0; m < n_periods; ++m) {
    double pos = 0.0;
    std::size_t oi = 0;
    for (const auto& seg : protocol.segments) {
      const double end = pos + seg.duration;
      while (oi < sample_offsets.size() && sample_offsets[oi] <= pos + eps) {
        sink(m, sample_offsets[oi], psi);
        ++oi;
      }
      double cur = pos;
      while (oi < sample_offsets.size() && sample_offsets[oi] < end - eps) {
        psi = evolve_segment(psi, seg.hamiltonian, sample_offsets[oi] - cur, settings);
        cur = sample_offsets[oi];
        sink(m, sample_offsets[oi], psi);
        ++oi;
      }
      psi = evolve_segment(psi, seg.hamiltonian, end - cur, settings);
      pos = end;
    }
    while (oi < sample_offsets.size()) {  // offsets at the trailing boundary
      sink(m, sample_offsets[oi], psi);
      ++oi;
    }
  }
}

ResonantFrame::ResonantFrame(const LadderConfig& cfg)
    : cfg_(cfg),
      a_eig_(build_h0a(cfg).to_dense()),
      b_eig_(build_h0b(cfg).to_dense()) {
  const double dt = cfg_.tau * cfg_.period();
  a_frozen_ = a_eig_.expm(dt);
  x_raw_ = b_eig_.expm(dt) * a_frozen_;
}

Eigen::MatrixXcd ResonantFrame::at(double t) const {
  const double T = cfg_.period();
  const double t_res = cfg_.tau * T;
  const double eps = 1e-12 * T;
  if (t < -eps || t > T + eps) throw ValidationError("u0_at time outside [0, T]");
  t = std::clamp(t, 0.0, T);
  if (t <= t_res) return a_eig_.expm(t);
  if (t <= T / 2.0) return a_frozen_;
  if (t <= T / 2.0 + t_res) return b_eig_.expm(t - T / 2.0) * a_frozen_;
  return x_raw_;
}

Eigen::MatrixXcd ResonantFrame::at_extended(double t) const {
  const double T = cfg_.period();
  if (t <= T) return at(t);
  if (t > 2.0 * T + 1e-12 * T) throw ValidationError("u0 time outside [0, 2T]");
  return at(std::min(t - T, T)) * x_raw_;
}

Eigen::MatrixXcd u0_at(const LadderConfig& cfg, double t) {
  if (cfg.n_sites() > kMaxDenseSites) {
    throw ValidationError("u0_at above the dense size guard");
  }
  return ResonantFrame(cfg).at(t);
}

DenseProtocol::DenseProtocol(const DriveProtocol& protocol, int n_sites)
    : period_(protocol.period), dim_(Eigen::Index{1} << n_sites) {
  if (n_sites > 12) throw ValidationError("dense protocol above the size guard");
  for (const auto& seg : protocol.segments) {
    eigs_.emplace_back(seg.hamiltonian.to_dense());
    durations_.push_back(seg.duration);
  }
}

Eigen::MatrixXcd DenseProtocol::propagator(double t2, double t1) const {
  if (t1 < 0.0 || t2 < t1) throw ValidationError("invalid propagator interval");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim_, dim_);
  const double eps = 1e-12 * period_;
  double t = t1;
  while (t < t2 - eps) {
    // locate the segment containing t
    double pos = std::floor(t / period_ + 1e-15) * period_;
    std::size_t seg = 0;
    while (seg < durations_.size() && pos + durations_[seg] <= t + eps) {
      pos += durations_[seg];
      ++seg;
    }
    if (seg == durations_.size()) {  // landed exactly on a period boundary
      seg = 0;
    }
    const double seg_end = pos + durations_[seg];
    const double step = std::min(seg_end, t2) - t;
    u = eigs_[seg].expm(step) * u;
    t += step;
  }
  return u;
}

}  // namespace floq
