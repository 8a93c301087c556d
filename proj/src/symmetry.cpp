#include "floq/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "floq/dense.hpp"
#include "floq/propagator.hpp"

namespace floq {

namespace {

void require_unitary(const Eigen::MatrixXcd& m, const char* what) {
  const Eigen::Index d = m.rows();
  const double dev =
      (m.adjoint() * m - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > 1e-12) {
    throw ValidationError(std::string(what) + ": matrix is not unitary");
  }
}

struct SegmentWindows {
  std::vector<double> begin, end;
  double period;
};

SegmentWindows segment_windows(const DriveProtocol& p) {
  SegmentWindows w;
  double pos = 0.0;
  for (const auto& seg : p.segments) {
    w.begin.push_back(pos);
    w.end.push_back(pos + seg.duration);
    pos += seg.duration;
  }
  w.period = pos;
  return w;
}

}  // namespace

SymmetryReport make_report(std::string relation, double residual, double tolerance) {
  SymmetryReport r;
  r.relation = std::move(relation);
  r.max_residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  return r;
}

SymmetryReport check_unitary_dynamical_symmetry(const DriveProtocol& protocol,
                                                const SymmetryElement& g,
                                                double tolerance) {
  if (g.kind != SymmetryElement::Kind::unitary) {
    throw ValidationError("expected a unitary symmetry element");
  }
  require_unitary(g.matrix, "dynamical symmetry check");
  const std::size_t k = protocol.segments.size();
  if (k == 0 || k % 2 != 0) {
    throw ValidationError("protocol is not half-period alignable");
  }
  const std::size_t half = k / 2;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(protocol.segments[i].duration -
                 protocol.segments[(i + half) % k].duration) >
        1e-12 * protocol.period) {
      throw ValidationError("protocol is not half-period alignable");
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::MatrixXcd h = protocol.segments[i].hamiltonian.to_dense();
    const Eigen::MatrixXcd target =
        protocol.segments[(i + half) % k].hamiltonian.to_dense();
    worst = std::max(worst,
                     spectral_norm(g.matrix * h * g.matrix.adjoint() - target));
  }
  return make_report(g.label.empty() ? "half_period_shift" : g.label + "_half_period_shift",
                     worst, tolerance);
}

SymmetryReport check_mirror_protocol_strings(const DriveProtocol& protocol, int L,
                                             double tolerance) {
  const std::size_t k = protocol.segments.size();
  if (k == 0 || k % 2 != 0) {
    throw ValidationError("protocol is not half-period alignable");
  }
  const std::size_t half = k / 2;
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const OperatorSum moved = mirror_transform(protocol.segments[i].hamiltonian, L);
    worst = std::max(worst,
                     (moved - protocol.segments[(i + half) % k].hamiltonian).hs_norm());
  }
  return make_report("mirror_half_period_shift_strings", worst, tolerance);
}

SymmetryReport check_antiunitary_dynamical_symmetry(const DriveProtocol& protocol,
                                                    const SymmetryElement& g,
                                                    double tolerance) {
  if (g.kind != SymmetryElement::Kind::antiunitary) {
    throw ValidationError("expected an antiunitary symmetry element");
  }
  require_unitary(g.matrix, "dynamical symmetry check");
  const auto w = segment_windows(protocol);
  const double T = w.period;
  const double eps = 1e-9 * T;
  double worst = 0.0;
  for (std::size_t i = 0; i < protocol.segments.size(); ++i) {
    // the reversed window of segment i about the reference point T/2
    double lo = T / 2.0 - w.end[i];
    double hi = T / 2.0 - w.begin[i];
    while (lo < -eps) {
      lo += T;
      hi += T;
    }
    if (hi > T + eps) {
      throw ValidationError("protocol is not alignable under time reversal");
    }
    std::size_t target = protocol.segments.size();
    for (std::size_t j = 0; j < protocol.segments.size(); ++j) {
      if (lo >= w.begin[j] - eps && hi <= w.end[j] + eps) {
        target = j;
        break;
      }
    }
    if (target == protocol.segments.size()) {
      throw ValidationError("protocol is not alignable under time reversal");
    }
    const Eigen::MatrixXcd h = protocol.segments[i].hamiltonian.to_dense();
    const Eigen::MatrixXcd ht = protocol.segments[target].hamiltonian.to_dense();
    worst = std::max(
        worst, spectral_norm(g.matrix * h.conjugate() * g.matrix.adjoint() - ht));
  }
  return make_report(g.label.empty() ? "time_reversal" : g.label + "_time_reversal",
                     worst, tolerance);
}

SymmetryElement interaction_picture_element(const LadderConfig& cfg,
                                            const SymmetryElement& g) {
  ResonantFrame frame(cfg);
  require_unitary(g.matrix, "interaction picture element");
  SymmetryElement out;
  out.kind = g.kind;
  out.label = g.label.empty() ? "interaction_picture" : g.label + "_int";
  out.matrix = frame.half_period().adjoint() * g.matrix;

  if (g.kind == SymmetryElement::Kind::unitary) {
    // The projective square identity holds when g maps the first resonant
    // segment onto the second; verify it only then, so that arbitrary
    // elements (e.g. the identity) can still be lifted.
    const Eigen::MatrixXcd h0a = build_h0a(cfg).to_dense();
    const Eigen::MatrixXcd h0b = build_h0b(cfg).to_dense();
    const double maps = spectral_norm(g.matrix * h0a * g.matrix.adjoint() - h0b);
    if (maps <= 1e-9 * (1.0 + spectral_norm(h0b))) {
      const Eigen::MatrixXcd lhs = out.matrix * out.matrix;
      const Eigen::MatrixXcd rhs =
          frame.one_period().adjoint() * g.matrix * g.matrix;
      if (spectral_norm(lhs - rhs) > 1e-10 * (1.0 + spectral_norm(rhs))) {
        throw NumericalError("projective square identity failed for " + out.label);
      }
    }
  }
  return out;
}

std::vector<SymmetryReport> group_algebra_report(const LadderConfig& cfg,
                                                 double tolerance,
                                                 int samples_per_segment) {
  const Eigen::MatrixXcd x = build_x_operator(cfg);
  SymmetryElement mirror{SymmetryElement::Kind::unitary, build_mirror_unitary(cfg.L),
                         "mirror"};
  const SymmetryElement g_int = interaction_picture_element(cfg, mirror);
  return group_algebra_report(cfg, x, g_int.matrix, tolerance, samples_per_segment);
}

std::vector<SymmetryReport> group_algebra_report(const LadderConfig& cfg,
                                                 const Eigen::MatrixXcd& x,
                                                 const Eigen::MatrixXcd& g_int,
                                                 double tolerance,
                                                 int samples_per_segment) {
  cfg.validate();
  if (samples_per_segment < 1) throw ValidationError("need at least one sample per segment");
  FourierTable table(cfg);
  const double T = cfg.period();
  const double p2 = table.base_period();
  const Eigen::Index d = table.dim();
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(d, d);

  // H_int(t) is piecewise constant: zero on resonant windows, a frozen
  // window matrix on weak ones.
  auto hint = [&](double t) -> Eigen::MatrixXcd {
    t = std::fmod(t, p2);
    if (t < 0.0) t += p2;
    for (const auto& w : table.windows()) {
      if (t >= w.t_begin - 1e-12 * p2 && t < w.t_end - 1e-12 * p2) return w.matrix;
    }
    return zero;
  };

  // interior sample times of all eight protocol segments over [0, 2T]
  std::vector<double> ts;
  const double bounds[5] = {0.0, cfg.tau * T, T / 2.0, T / 2.0 + cfg.tau * T, T};
  for (int rep = 0; rep < 2; ++rep) {
    for (int s = 0; s < 4; ++s) {
      const double a = bounds[s] + rep * T, b = bounds[s + 1] + rep * T;
      for (int k = 0; k < samples_per_segment; ++k) {
        ts.push_back(a + (k + 0.5) * (b - a) / samples_per_segment);
      }
    }
  }

  std::vector<SymmetryReport> out;

  double worst = 0.0;
  for (double t : ts) {
    worst = std::max(worst, spectral_norm(x * hint(t) * x.adjoint() - hint(t - T)));
  }
  out.push_back(make_report("x_shifts_hint_by_minus_period", worst, tolerance));

  worst = 0.0;
  for (double t : ts) {
    worst = std::max(
        worst, spectral_norm(g_int * hint(t) * g_int.adjoint() - hint(t + T / 2.0)));
  }
  out.push_back(make_report("mirror_int_shifts_hint_by_half_period", worst, tolerance));

  out.push_back(make_report("mirror_int_square_matches_x_inverse",
                            phase_aligned_distance(g_int * g_int, x.adjoint()),
                            tolerance));
  out.push_back(make_report("mirror_int_commutes_with_x",
                            spectral_norm(g_int * x * g_int.adjoint() - x), tolerance));

  // kick-operator transformations; one interior time per segment suffices
  // since the relations hold harmonic by harmonic.
  std::vector<double> kick_ts;
  for (int rep = 0; rep < 2; ++rep) {
    for (int s = 0; s < 4; ++s) {
      kick_ts.push_back(bounds[s] + rep * T +
                        0.37 * (bounds[s + 1] - bounds[s]));
    }
  }
  for (int order = 1; order <= 2; ++order) {
    double worst_x = 0.0, worst_m = 0.0;
    for (double t : kick_ts) {
      const Eigen::MatrixXcd k = table.kick(t, order);
      worst_x = std::max(
          worst_x, spectral_norm(x * k * x.adjoint() - table.kick(t - T, order)));
      worst_m = std::max(worst_m, spectral_norm(g_int * k * g_int.adjoint() -
                                                table.kick(t + T / 2.0, order)));
    }
    const std::string suffix = order == 1 ? "order1" : "order2";
    out.push_back(make_report("x_shifts_kick_by_minus_period_" + suffix, worst_x, tolerance));
    out.push_back(
        make_report("mirror_int_shifts_kick_by_half_period_" + suffix, worst_m, tolerance));
  }
  return out;
}

std::vector<double> micromotion_residual(const std::vector<double>& o_at_period,
                                         const std::vector<double>& o_at_half,
                                         int alpha_sign) {
  if (alpha_sign != 1 && alpha_sign != -1) {
    throw ValidationError("alpha sign must be +1 or -1");
  }
  if (o_at_period.size() != o_at_half.size()) {
    throw ValidationError("offset series have different lengths");
  }
  std::vector<double> r(o_at_period.size());
  for (std::size_t m = 0; m < r.size(); ++m) {
    r[m] = o_at_half[m] - alpha_sign * o_at_period[m];
  }
  return r;
}

OddObservableAudit audit_odd_observable(const LadderConfig& cfg, const OperatorSum& o) {
  OddObservableAudit a;
  a.mirror_flip_residual = (mirror_transform(o, cfg.L) + o).hs_norm();
  OperatorSum xs(cfg.n_sites(), {x_operator_string(cfg)});
  a.x_commutator_norm = commutator(xs, o).hs_norm();
  a.d0_commutator_norm = commutator(closed_form_d0(cfg), o).hs_norm();
  return a;
}

double projective_rotation_residual(const LadderConfig& cfg, int order) {
  if (order < 0 || order > 2) throw ValidationError("expansion order must be 0..2");
  FourierTable table(cfg);
  const double T = cfg.period();
  const Eigen::Index d = table.dim();

  Eigen::MatrixXcd kick0 = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i <= order; ++i) kick0 += table.kick(0.0, i);
  const Eigen::MatrixXcd rot = expm_hermitian(kick0, 1.0);  // e^{-i K_n(0)}

  const Eigen::MatrixXcd dn = table.effective_hamiltonian(order);
  DenseProtocol dp(build_protocol(cfg), cfg.n_sites());
  const Eigen::MatrixXcd g_m = build_mirror_unitary(cfg.L);
  const Eigen::MatrixXcd g_proj = dp.propagator(T / 2.0).adjoint() * g_m;

  ResonantFrame frame(cfg);
  const Eigen::MatrixXcd g_int = frame.half_period().adjoint() * g_m;

  const Eigen::MatrixXcd lhs = g_proj * rot * g_int.adjoint();
  const Eigen::MatrixXcd rhs = rot * expm_hermitian(dn, -T / 2.0);
  return phase_aligned_distance(lhs, rhs);
}

double interaction_propagator_residual(const LadderConfig& cfg, double t) {
  const double T = cfg.period();
  if (t < 0.0 || t > 1.5 * T) {
    throw ValidationError("time must lie in [0, 3T/2] for this residual");
  }
  ResonantFrame frame(cfg);
  DenseProtocol dp(build_protocol(cfg), cfg.n_sites());
  const Eigen::MatrixXcd g_int =
      frame.half_period().adjoint() * build_mirror_unitary(cfg.L);

  auto u_int = [&](double t2, double t1) -> Eigen::MatrixXcd {
    return frame.at_extended(t2).adjoint() * dp.propagator(t2, t1) *
           frame.at_extended(t1);
  };
  const Eigen::MatrixXcd lhs = g_int * u_int(t, 0.0) * g_int.adjoint();
  const Eigen::MatrixXcd rhs = u_int(t + T / 2.0, T / 2.0);
  return spectral_norm(lhs - rhs);
}

}  // namespace floq
