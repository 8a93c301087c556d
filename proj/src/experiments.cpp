#include "floq/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "floq/dense.hpp"
#include "floq/propagator.hpp"
#include "floq/vanvleck.hpp"

namespace floq {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool has_offset(const std::vector<double>& offsets, double frac) {
  for (double o : offsets) {
    if (std::abs(o - frac) < 1e-12) return true;
  }
  return false;
}

double plateau_mean(const std::vector<double>& series, const Plateau& p) {
  if (!p.found || series.empty()) return 0.0;
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = p.first; i <= p.last && i < series.size(); ++i) {
    s += series[i];
    ++n;
  }
  return n ? s / n : 0.0;
}

}  // namespace

TrajectoryResult run_trajectory(const RunSpec& spec) {
  const LadderConfig& cfg = spec.config;
  cfg.validate();
  const double T = cfg.period();

  TrajectoryResult out;
  out.config = cfg;

  const DriveProtocol protocol = build_protocol(cfg);
  const OperatorSum d0 = closed_form_d0(cfg);
  const OperatorSum o1 = odd_operator(cfg, 1);
  const OperatorSum o2 = odd_operator(cfg, 2);
  out.audit1 = audit_odd_observable(cfg, o1);
  out.audit2 = audit_odd_observable(cfg, o2);

  std::vector<double> offsets;
  offsets.reserve(spec.sample_offsets.size());
  for (double f : spec.sample_offsets) offsets.push_back(f * T);

  const StateVector psi0 = build_initial_state(spec);
  auto sink = [&](int m, double offset, const StateVector& psi) {
    TrajectoryRecord r;
    r.m = m;
    r.offset = offset;
    r.t = m * T + offset;
    r.o_odd = expectation(o1, psi);
    r.o_odd2 = expectation(o2, psi);
    r.s_ent = entanglement_entropy(psi, cfg.L);
    r.energy_density = floq::energy_density(psi, d0, cfg.n_sites());
    out.records.push_back(std::move(r));
  };
  evolve_protocol(psi0, protocol, spec.n_periods, offsets, spec.krylov, sink);

  // series over the {0, T/2} offsets when both are present
  if (has_offset(spec.sample_offsets, 0.0) && has_offset(spec.sample_offsets, 0.5)) {
    std::vector<TrajectoryRecord> pairs;
    for (const auto& r : out.records) {
      if (r.offset == 0.0 || std::abs(r.offset - T / 2.0) < 1e-9 * T) {
        pairs.push_back(r);
      }
    }
    out.odd1 = odd_observable_series(pairs, 1);
    out.odd2 = odd_observable_series(pairs, 2);
  }

  std::vector<double> energy;
  for (const auto& r : out.records) {
    if (r.offset == 0.0) energy.push_back(r.energy_density);
  }
  if (energy.size() >= 3 * static_cast<std::size_t>(kPlateauWindow)) {
    out.energy_plateau = plateau_detect(energy, kPlateauWindow, kPlateauSlopeTol);
  }
  return out;
}

namespace {

ExperimentResult run_symmetry_check(const RunSpec& spec) {
  ExperimentResult out;
  out.spec = spec;
  const LadderConfig& cfg = spec.config;
  const DriveProtocol protocol = build_protocol(cfg);

  out.symmetry_reports.push_back(
      check_mirror_protocol_strings(protocol, cfg.L, 1e-12));

  // dense audits at desk scale only
  if (cfg.n_sites() <= 8) {
    SymmetryElement mirror{SymmetryElement::Kind::unitary,
                           build_mirror_unitary(cfg.L), "mirror"};
    out.symmetry_reports.push_back(
        check_unitary_dynamical_symmetry(protocol, mirror, 1e-9));
    if (cfg.symmetric()) {
      for (auto& r : group_algebra_report(cfg)) {
        out.symmetry_reports.push_back(std::move(r));
      }
    }
    const Eigen::Index dim = Eigen::Index{1} << cfg.n_sites();
    SymmetryElement conj{SymmetryElement::Kind::antiunitary,
                         Eigen::MatrixXcd::Identity(dim, dim), "conjugation"};
    out.antiunitary_conjugation_residual =
        check_antiunitary_dynamical_symmetry(protocol, conj, 1e-9).max_residual;
  }
  return out;
}

ExperimentResult run_vanvleck_verify(const RunSpec& spec) {
  ExperimentResult out;
  out.spec = spec;
  const LadderConfig& cfg = spec.config;
  if (cfg.n_sites() > 12) {
    throw ValidationError("vanvleck-verify is dense-only (2L <= 12)");
  }
  const int order = spec.vanvleck_order;
  FourierTable table(cfg);

  auto push = [&out](std::string name, double value, double tol) {
    out.vanvleck_residuals.push_back({std::move(name), value, tol, value <= tol});
  };

  double pairing = 0.0;
  for (long m = 1; m <= 6; ++m) {
    pairing = std::max(pairing, (table.component(-m) -
                                 table.component(m).adjoint()).cwiseAbs().maxCoeff());
  }
  push("fourier_conjugate_pairing_m1_6", pairing, 1e-12);

  push("order0_matches_closed_form",
       spectral_norm(table.effective_term(0) - closed_form_d0(cfg).to_dense()), 1e-10);

  for (int i = 0; i <= order; ++i) {
    const Eigen::MatrixXcd term = table.effective_term(i);
    push("effective_term_hermitian_order" + std::to_string(i),
         (term - term.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  }

  // kick gauge: composite midpoint quadrature of the kick over one base
  // period, 512 nodes
  const double p2 = table.base_period();
  const int nodes = 512;
  for (int i = 1; i <= std::max(order, 1); ++i) {
    if (i > 2) break;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(table.dim(), table.dim());
    for (int k = 0; k < nodes; ++k) {
      acc += table.kick((k + 0.5) * p2 / nodes, i);
    }
    acc *= p2 / nodes;
    push("kick_gauge_zero_average_order" + std::to_string(i), spectral_norm(acc), 1e-9);
    push("kick_periodicity_order" + std::to_string(i),
         spectral_norm(table.kick(0.0, i) - table.kick(p2, i)), 1e-12);
  }

  if (cfg.symmetric()) {
    const Eigen::MatrixXcd x = build_x_operator(cfg);
    SymmetryElement mirror{SymmetryElement::Kind::unitary,
                           build_mirror_unitary(cfg.L), "mirror"};
    const Eigen::MatrixXcd g_int = interaction_picture_element(cfg, mirror).matrix;
    for (int n = 0; n <= order; ++n) {
      const Eigen::MatrixXcd dn = table.effective_hamiltonian(n);
      push("x_commutes_with_dn_order" + std::to_string(n),
           spectral_norm(x * dn - dn * x), 1e-8);
      push("mirror_int_commutes_with_dn_order" + std::to_string(n),
           spectral_norm(g_int * dn - dn * g_int), 1e-8);
    }
    double worst_x = 0.0, worst_m = 0.0;
    for (long m = 1; m <= 4; ++m) {
      const Eigen::MatrixXcd vm = table.component(m);
      const cx phase_x = std::exp(cx{0.0, std::numbers::pi * m});
      const cx phase_m = std::exp(cx{0.0, -std::numbers::pi * m / 2.0});
      worst_x = std::max(worst_x,
                         spectral_norm(x * vm * x.adjoint() - phase_x * vm));
      worst_m = std::max(
          worst_m, spectral_norm(g_int * vm * g_int.adjoint() - phase_m * vm));
    }
    push("x_phase_action_on_vm_m1_4", worst_x, 1e-9);
    push("mirror_int_phase_action_on_vm_m1_4", worst_m, 1e-9);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const RunSpec& spec) {
  switch (spec.mode) {
    case RunMode::symmetry_check:
      return run_symmetry_check(spec);
    case RunMode::vanvleck_verify:
      return run_vanvleck_verify(spec);
    case RunMode::evolve: {
      if (!has_offset(spec.sample_offsets, 0.0) || !has_offset(spec.sample_offsets, 0.5)) {
        throw ValidationError("evolve mode requires sample offsets 0 and 0.5");
      }
      ExperimentResult out;
      out.spec = spec;
      out.trajectories.push_back(run_trajectory(spec));
      return out;
    }
    case RunMode::sweep:
    default: {
      if (!has_offset(spec.sample_offsets, 0.0) || !has_offset(spec.sample_offsets, 0.5)) {
        throw ValidationError("sweep mode requires sample offsets 0 and 0.5");
      }
      ExperimentResult out;
      out.spec = spec;
      std::vector<std::future<TrajectoryResult>> futures;
      for (const auto& [la, lb] : spec.lambda_grid) {
        RunSpec point = spec;
        point.config.lambda_a = la;
        point.config.lambda_b = lb;
        futures.push_back(std::async(std::launch::async, run_trajectory, point));
      }
      for (auto& f : futures) out.trajectories.push_back(f.get());
      return out;
    }
  }
}

std::string render_trajectory_csv(const TrajectoryResult& t) {
  std::ostringstream os;
  os << "m,t,o_odd_at_mT,o_odd_at_mT_half,o_odd2_at_mT,o_odd2_at_mT_half,"
        "o_s,o_s_norm,s_ent_over_page,energy_density\n";
  const double T = t.config.period();
  const double page = page_value(t.config.L);
  // entropy and energy density are reported at the period start
  std::size_t row = 0;
  for (const auto& r : t.records) {
    if (r.offset != 0.0) continue;
    if (row >= t.odd1.at_period.size()) break;
    os << r.m << "," << fmt(r.m * T) << ",";
    os << fmt(t.odd1.at_period[row]) << "," << fmt(t.odd1.at_half[row]) << ",";
    os << fmt(t.odd2.at_period[row]) << "," << fmt(t.odd2.at_half[row]) << ",";
    os << fmt(t.odd1.symmetric[row]) << ",";
    const double norm = t.odd1.symmetric_normalized[row];
    if (std::isnan(norm)) {
      os << "NA,";
    } else {
      os << fmt(norm) << ",";
    }
    os << fmt(r.s_ent / page) << "," << fmt(r.energy_density) << "\n";
    ++row;
  }
  return os.str();
}

std::string render_report(const ExperimentResult& result) {
  nlohmann::json j;
  j["mode"] = run_mode_name(result.spec.mode);
  j["seed"] = result.spec.initial_state.seed;
  j["config"] = emit_config(result.spec);

  auto audit_json = [](const OddObservableAudit& a) {
    return nlohmann::json{{"mirror_flip_residual", a.mirror_flip_residual},
                          {"x_commutator_norm", a.x_commutator_norm},
                          {"d0_commutator_norm", a.d0_commutator_norm}};
  };

  nlohmann::json trajectories = nlohmann::json::array();
  for (const auto& t : result.trajectories) {
    nlohmann::json tj;
    tj["lambda_a"] = t.config.lambda_a;
    tj["lambda_b"] = t.config.lambda_b;
    tj["n_samples"] = t.records.size();
    tj["plateau"] = {{"found", t.energy_plateau.found},
                     {"degenerate", t.energy_plateau.degenerate},
                     {"first", t.energy_plateau.first},
                     {"last", t.energy_plateau.last},
                     {"length", t.energy_plateau.length()}};
    tj["o_s_plateau_mean"] = plateau_mean(t.odd1.symmetric, t.energy_plateau);
    tj["o_s2_plateau_mean"] = plateau_mean(t.odd2.symmetric, t.energy_plateau);
    tj["audit_o_odd"] = audit_json(t.audit1);
    tj["audit_o_odd2"] = audit_json(t.audit2);
    trajectories.push_back(std::move(tj));
  }
  j["trajectories"] = std::move(trajectories);

  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : result.symmetry_reports) {
    reports.push_back({{"relation", r.relation},
                       {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed}});
  }
  j["symmetry_reports"] = std::move(reports);
  if (result.antiunitary_conjugation_residual >= 0.0) {
    j["antiunitary_conjugation_residual"] = result.antiunitary_conjugation_residual;
  }

  nlohmann::json vv = nlohmann::json::array();
  for (const auto& r : result.vanvleck_residuals) {
    vv.push_back({{"name", r.name},
                  {"value", r.value},
                  {"tolerance", r.tolerance},
                  {"passed", r.passed}});
  }
  j["vanvleck_residuals"] = std::move(vv);
  return j.dump(2) + "\n";
}

void emit_results(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + out_dir);

  auto write_file = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + p.string() + " for writing");
    f << text;
    if (!f.good()) throw ValidationError("write failed for " + p.string());
  };

  if (result.spec.mode == RunMode::evolve && !result.trajectories.empty()) {
    write_file(fs::path(out_dir) / "trajectory.csv",
               render_trajectory_csv(result.trajectories.front()));
  }
  if (result.spec.mode == RunMode::sweep) {
    for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
      char name[40];
      std::snprintf(name, sizeof(name), "trajectory_%03zu.csv", i);
      write_file(fs::path(out_dir) / name,
                 render_trajectory_csv(result.trajectories[i]));
    }
  }
  write_file(fs::path(out_dir) / "report.json", render_report(result));
}

}  // namespace floq
