#include "floq/vanvleck.hpp"

#include <cmath>
#include <numbers>

namespace floq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FourierTable::FourierTable(const LadderConfig& cfg) : FourierTable(cfg, Options{}) {}

FourierTable FourierTable::from_windows(std::vector<FourierWindow> windows,
                                        double base_period) {
  return from_windows(std::move(windows), base_period, Options{});
}

FourierTable::FourierTable(const LadderConfig& cfg, Options opt) {
  cfg.validate();
  if (cfg.n_sites() > 12) {
    throw ValidationError("fourier table above the dense size guard");
  }
  const double T = cfg.period();
  const double t_res = cfg.tau * T;

  ResonantFrame frame(cfg);
  const Eigen::MatrixXcd& a = frame.half_period();
  const Eigen::MatrixXcd& x = frame.one_period();
  const Eigen::MatrixXcd wa = build_weak_a(cfg).to_dense();
  const Eigen::MatrixXcd wb = build_weak_b(cfg).to_dense();

  const Eigen::MatrixXcd m1 = a.adjoint() * wa * a;
  const Eigen::MatrixXcd m2 = x.adjoint() * wb * x;
  const Eigen::MatrixXcd m3 = x.adjoint() * m1 * x;
  // U_0 in the final window is U_0(T)^2, proportional to the identity, so
  // the conjugation drops out.
  const Eigen::MatrixXcd m4 = wb;

  period_ = 2.0 * T;
  opt_ = opt;
  windows_ = {
      {m1, t_res, T / 2.0},
      {m2, T / 2.0 + t_res, T},
      {m3, T + t_res, 3.0 * T / 2.0},
      {m4, 3.0 * T / 2.0 + t_res, 2.0 * T},
  };
  tabulate_weights();
}

FourierTable FourierTable::from_windows(std::vector<FourierWindow> windows,
                                        double base_period, Options opt) {
  if (windows.empty()) throw ValidationError("fourier table needs at least one window");
  if (!(base_period > 0.0)) throw ValidationError("base period must be positive");
  FourierTable t;
  t.period_ = base_period;
  t.opt_ = opt;
  const Eigen::Index d = windows.front().matrix.rows();
  for (const auto& w : windows) {
    if (w.matrix.rows() != d || w.matrix.cols() != d) {
      throw ValidationError("fourier windows must share one square dimension");
    }
    if (!(w.t_begin >= 0.0 && w.t_end > w.t_begin && w.t_end <= base_period + 1e-12)) {
      throw ValidationError("fourier window outside [0, base_period]");
    }
  }
  t.windows_ = std::move(windows);
  t.tabulate_weights();
  return t;
}

double FourierTable::omega_base() const { return kTwoPi / period_; }

Eigen::Index FourierTable::dim() const { return windows_.front().matrix.rows(); }

// c_w(m) = (1/P) int_{t0}^{t1} e^{i m w t} dt, tabulated by incremental
// phase products.
void FourierTable::tabulate_weights() {
  c_reach_ = std::max<long>(opt_.m_single,
                            static_cast<long>(opt_.m_kick2) + opt_.m_conv);
  const double w = omega_base();
  c_.assign(windows_.size(), std::vector<cx>(2 * c_reach_ + 1));
  for (std::size_t k = 0; k < windows_.size(); ++k) {
    const double t0 = windows_[k].t_begin, t1 = windows_[k].t_end;
    const cx step0 = std::exp(cx{0.0, w * t0});
    const cx step1 = std::exp(cx{0.0, w * t1});
    cx p0{1.0, 0.0}, p1{1.0, 0.0};
    c_[k][c_reach_] = (t1 - t0) / period_;
    for (long m = 1; m <= c_reach_; ++m) {
      p0 *= step0;
      p1 *= step1;
      const cx v = (p1 - p0) / (cx{0.0, 1.0} * (m * w) * period_);
      c_[k][c_reach_ + m] = v;
      c_[k][c_reach_ - m] = std::conj(v);
    }
  }
}

Eigen::MatrixXcd FourierTable::component(long m) const {
  if (std::abs(m) > c_reach_) throw ValidationError("fourier index beyond tabulated reach");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    out += weight(w, m) * windows_[w].matrix;
  }
  return out;
}

void FourierTable::ensure_pair_comms() const {
  if (!pair_comm_.empty()) return;
  const std::size_t nw = windows_.size();
  pair_comm_.resize(nw * nw);
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      pair_comm_[a * nw + b] = windows_[a].matrix * windows_[b].matrix -
                               windows_[b].matrix * windows_[a].matrix;
    }
  }
}

void FourierTable::ensure_nested_comms() const {
  if (!nested_comm_.empty()) return;
  ensure_pair_comms();
  const std::size_t nw = windows_.size();
  nested_comm_.resize(nw * nw * nw);
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      const Eigen::MatrixXcd& p = pair_comm_[a * nw + b];
      for (std::size_t c = 0; c < nw; ++c) {
        nested_comm_[(a * nw + b) * nw + c] =
            p * windows_[c].matrix - windows_[c].matrix * p;
      }
    }
  }
}

// R_ab(m) = sum_{n != 0, m} c_a(n) c_b(m-n) / n over |n| <= m_conv,
// for |m| <= m_kick2.
void FourierTable::ensure_convolutions() const {
  if (!conv_.empty()) return;
  const std::size_t nw = windows_.size();
  const long mk = opt_.m_kick2, mc = opt_.m_conv;
  conv_.assign(nw * nw, std::vector<cx>(2 * mk + 1, cx{0.0, 0.0}));
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      auto& r = conv_[a * nw + b];
      for (long m = -mk; m <= mk; ++m) {
        cx acc{0.0, 0.0};
        for (long n = -mc; n <= mc; ++n) {
          if (n == 0 || n == m) continue;
          acc += weight(a, n) * weight(b, m - n) / static_cast<double>(n);
        }
        r[m + mk] = acc;
      }
    }
  }
}

Eigen::MatrixXcd FourierTable::order1_term() const {
  ensure_pair_comms();
  const std::size_t nw = windows_.size();
  const double wb = omega_base();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      cx s{0.0, 0.0};
      for (long m = 1; m <= opt_.m_single; ++m) {
        const double den = 2.0 * m * wb;
        s += weight(a, -m) * weight(b, m) / den;
        s -= weight(a, m) * weight(b, -m) / den;
      }
      out += s * pair_comm_[a * nw + b];
    }
  }
  return out;
}

Eigen::MatrixXcd FourierTable::order2_term() const {
  ensure_nested_comms();
  ensure_convolutions();
  const std::size_t nw = windows_.size();
  const double wb2 = omega_base() * omega_base();
  const long mk = opt_.m_kick2;

  // [[V_{-m}, V_0], V_m] / (2 m^2 wb^2)
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      const cx cb0 = weight(b, 0);
      for (std::size_t c = 0; c < nw; ++c) {
        cx s{0.0, 0.0};
        for (long m = 1; m <= opt_.m_single; ++m) {
          const double den = 2.0 * static_cast<double>(m) * m * wb2;
          s += (weight(a, -m) * weight(c, m) + weight(a, m) * weight(c, -m)) / den;
        }
        out += (cb0 * s) * nested_comm_[(a * nw + b) * nw + c];
      }
    }
  }

  // [[V_{-m}, V_{m-n}], V_n] / (3 m n wb^2): the inner n-sum is the tabulated
  // convolution R_cb(m).
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      for (std::size_t c = 0; c < nw; ++c) {
        const auto& r = conv_[c * nw + b];
        cx s{0.0, 0.0};
        for (long m = -opt_.m_conv; m <= opt_.m_conv; ++m) {
          if (m == 0) continue;
          s += weight(a, -m) / static_cast<double>(m) * r[m + mk];
        }
        out += s / (3.0 * wb2) * nested_comm_[(a * nw + b) * nw + c];
      }
    }
  }
  return out;
}

void FourierTable::check_hermitian(const Eigen::MatrixXcd& m, const char* what) const {
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw NumericalError(std::string(what) + ": result lost Hermiticity");
  }
}

Eigen::MatrixXcd FourierTable::effective_term(int order) const {
  // Conservative tail estimate of the truncated single sums: the window
  // weights obey |c_w(m)| <= s_w / m with s_w = 2 / (omega_base * period).
  // Norms are dimension-normalized Hilbert-Schmidt.
  double strength = 0.0;
  for (const auto& w : windows_) {
    strength += w.matrix.norm() / std::sqrt(static_cast<double>(dim()));
  }
  const double sw = 2.0 / (omega_base() * period_);
  const double tail1 = strength * strength * sw * sw /
                       (omega_base() * opt_.m_single * opt_.m_single);
  if (tail1 > 1e-10 * (1.0 + strength)) {
    throw NumericalError("fourier cutoff insufficient for the requested order");
  }

  Eigen::MatrixXcd out;
  switch (order) {
    case 0: out = component(0); break;
    case 1: out = order1_term(); break;
    case 2: out = order2_term(); break;
    default: throw ValidationError("expansion order must be 0, 1 or 2");
  }
  check_hermitian(out, "effective term");
  return (out + out.adjoint()) / 2.0;
}

Eigen::MatrixXcd FourierTable::effective_hamiltonian(int order) const {
  if (order < 0 || order > 2) throw ValidationError("expansion order must be 0, 1 or 2");
  Eigen::MatrixXcd out = effective_term(0);
  for (int i = 1; i <= order; ++i) out += effective_term(i);
  return out;
}

// K1(t) = Q(t) - mean(Q), where Q(t) = int_0^t (V_int - V_0) ds is piecewise
// linear; exact, no series truncation.
Eigen::MatrixXcd FourierTable::kick1(double t) const {
  t = std::fmod(t, period_);
  if (t < 0.0) t += period_;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    const double t0 = windows_[w].t_begin, t1 = windows_[w].t_end;
    const double dw = t1 - t0;
    const double overlap = std::clamp(t - t0, 0.0, dw);
    const double mean_overlap = (dw * dw / 2.0 + (period_ - t1) * dw) / period_;
    out += (overlap - mean_overlap) * windows_[w].matrix;
  }
  // subtract V_0 * t and its mean V_0 * P/2
  Eigen::MatrixXcd v0 = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t w = 0; w < windows_.size(); ++w) {
    v0 += ((windows_[w].t_end - windows_[w].t_begin) / period_) * windows_[w].matrix;
  }
  out -= (t - period_ / 2.0) * v0;
  return out;
}

Eigen::MatrixXcd FourierTable::kick2(double t) const {
  ensure_pair_comms();
  ensure_convolutions();
  const std::size_t nw = windows_.size();
  const double wb = omega_base();
  const long mk = opt_.m_kick2;

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
  for (std::size_t a = 0; a < nw; ++a) {
    for (std::size_t b = 0; b < nw; ++b) {
      const auto& r = conv_[a * nw + b];
      const cx cb0 = weight(b, 0);
      cx s{0.0, 0.0};
      // phases iterated incrementally over harmonics
      const cx step = std::exp(cx{0.0, -wb * t});
      cx pos{1.0, 0.0}, neg{1.0, 0.0};
      for (long m = 1; m <= mk; ++m) {
        pos *= step;
        neg *= std::conj(step);
        const double m2 = static_cast<double>(m) * m;
        // [V_m, V_0] e^{-imwt} / m^2 both signs of m
        s += (weight(a, m) * cb0 * pos + weight(a, -m) * cb0 * neg) / m2;
        // convolution part: R_ab(m) e^{-imwt} / (2m)
        s += (r[m + mk] * pos - r[-m + mk] * neg) / (2.0 * m);
      }
      out += (cx{0.0, -1.0} / (wb * wb)) * s * pair_comm_[a * nw + b];
    }
  }
  return out;
}

Eigen::MatrixXcd FourierTable::kick(double t, int order) const {
  Eigen::MatrixXcd out;
  switch (order) {
    case 1: out = kick1(t); break;
    case 2: out = kick2(t); break;
    default: throw ValidationError("kick order must be 1 or 2");
  }
  check_hermitian(out, "kick operator");
  return (out + out.adjoint()) / 2.0;
}

Eigen::MatrixXcd fourier_component(const LadderConfig& cfg, long m) {
  return FourierTable(cfg).component(m);
}

Eigen::MatrixXcd build_dn(const LadderConfig& cfg, int order) {
  return FourierTable(cfg).effective_hamiltonian(order);
}

}  // namespace floq
