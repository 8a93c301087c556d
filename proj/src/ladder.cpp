#include "floq/ladder.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "floq/dense.hpp"

namespace floq {

double LadderConfig::period() const { return 2.0 * std::numbers::pi / omega; }

void LadderConfig::validate() const {
  if (L < 4 || L % 2 != 0) {
    throw ValidationError("L must be an even integer >= 4, got " + std::to_string(L));
  }
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(tau > 0.0 && tau < 0.5)) throw ValidationError("tau must lie in (0, 1/2)");
  if (!(j > 0.0)) throw ValidationError("j must be positive");
  if (2 * L > 64) throw ValidationError("ladder too long for 64-bit site masks");
}

OperatorSum build_h0a(const LadderConfig& cfg) {
  cfg.validate();
  const int L = cfg.L;
  const double j1 = cfg.j1();
  OperatorSum h(cfg.n_sites());
  std::vector<PauliString> terms;
  for (int i = 0; i <= L / 2 - 2; ++i) {
    terms.push_back({j1, {{cfg.upper(i), PauliOp::Z}, {cfg.upper(i + 1), PauliOp::Z}}});
    terms.push_back({j1, {{cfg.lower(i), PauliOp::X}, {cfg.lower(i + 1), PauliOp::X}}});
  }
  for (int i = L / 2; i <= L - 2; ++i) {
    terms.push_back({j1, {{cfg.upper(i), PauliOp::Y}, {cfg.upper(i + 1), PauliOp::Y}}});
    terms.push_back({j1, {{cfg.lower(i), PauliOp::Z}, {cfg.lower(i + 1), PauliOp::Z}}});
  }
  return {cfg.n_sites(), std::move(terms)};
}

OperatorSum build_h0b(const LadderConfig& cfg) {
  return mirror_transform(build_h0a(cfg), cfg.L);
}

OperatorSum build_va(const LadderConfig& cfg) {
  cfg.validate();
  const int L = cfg.L;
  const double jp = cfg.j_prime();
  std::vector<PauliString> terms;
  for (int i = 0; i <= L / 2 - 2; ++i) {
    const int su = cfg.upper(i), sun = cfg.upper(i + 1);
    const int sl = cfg.lower(i), sln = cfg.lower(i + 1);
    terms.push_back({jp, {{su, PauliOp::X}, {sun, PauliOp::X}}});
    terms.push_back({jp, {{sl, PauliOp::Y}, {sln, PauliOp::Y}}});
    terms.push_back({jp * cfg.g_zz, {{su, PauliOp::Z}, {sl, PauliOp::Z}}});
    terms.push_back({jp * cfg.g_x, {{su, PauliOp::X}}});
    terms.push_back({jp * cfg.g_z, {{su, PauliOp::Z}}});
    terms.push_back({jp * cfg.g_y, {{sl, PauliOp::Y}}});
    terms.push_back({jp * cfg.g_z, {{sl, PauliOp::Z}}});
  }
  return {cfg.n_sites(), std::move(terms)};
}

OperatorSum build_center_coupling(const LadderConfig& cfg, char side) {
  cfg.validate();
  if (side != 'a' && side != 'b') throw ValidationError("side must be 'a' or 'b'");
  const int star = cfg.L / 2 - 1;
  const double lam = side == 'a' ? cfg.lambda_a : cfg.lambda_b;
  const double w = cfg.j_prime() * lam;
  // Single-site pieces sit next to the center bond: at *+1 for side a, at *
  // for side b.
  const int site = side == 'a' ? star + 1 : star;
  const int su = cfg.upper(site), sl = cfg.lower(site);
  std::vector<PauliString> terms;
  terms.push_back({w, {{cfg.upper(star), PauliOp::X}, {cfg.upper(star + 1), PauliOp::X}}});
  terms.push_back({w, {{cfg.lower(star), PauliOp::Y}, {cfg.lower(star + 1), PauliOp::Y}}});
  terms.push_back({w * cfg.g_zz, {{su, PauliOp::Z}, {sl, PauliOp::Z}}});
  terms.push_back({w * cfg.g_x, {{su, PauliOp::X}}});
  terms.push_back({w * cfg.g_z, {{su, PauliOp::Z}}});
  terms.push_back({w * cfg.g_y, {{sl, PauliOp::Y}}});
  terms.push_back({w * cfg.g_z, {{sl, PauliOp::Z}}});
  return {cfg.n_sites(), std::move(terms)};
}

OperatorSum build_weak_a(const LadderConfig& cfg) {
  return build_va(cfg) + build_center_coupling(cfg, 'a');
}

OperatorSum build_weak_b(const LadderConfig& cfg) {
  return mirror_transform(build_va(cfg), cfg.L) + build_center_coupling(cfg, 'b');
}

DriveProtocol build_protocol(const LadderConfig& cfg) {
  cfg.validate();
  const double T = cfg.period();
  const double t_res = cfg.tau * T;
  const double t_weak = T / 2.0 - t_res;
  DriveProtocol p;
  p.period = T;
  p.segments.push_back({build_h0a(cfg), t_res});
  p.segments.push_back({build_weak_a(cfg), t_weak});
  p.segments.push_back({build_h0b(cfg), t_res});
  p.segments.push_back({build_weak_b(cfg), t_weak});
  for (const auto& seg : p.segments) {
    if (!seg.hamiltonian.is_hermitian()) {
      throw NumericalError("drive segment failed the Hermiticity audit");
    }
  }
  return p;
}

std::vector<int> mirror_permutation(int L) {
  std::vector<int> perm(2 * L);
  for (int i = 0; i < L; ++i) {
    perm[2 * i] = 2 * (L - 1 - i);
    perm[2 * i + 1] = 2 * (L - 1 - i) + 1;
  }
  return perm;
}

OperatorSum mirror_transform(const OperatorSum& op, int L) {
  if (op.n_sites() != 2 * L) throw ValidationError("mirror: operator is not on 2L sites");
  return permute_sites(op, mirror_permutation(L));
}

Eigen::MatrixXcd build_mirror_unitary(int L) {
  const int n = 2 * L;
  if (n > kMaxDenseSites) throw ValidationError("mirror unitary above the dense size guard");
  const auto perm = mirror_permutation(L);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t out = 0;
    for (int q = 0; q < n; ++q) {
      if (i >> q & 1) out |= std::size_t{1} << perm[q];
    }
    m(out, i) = 1.0;
  }
  return m;
}

PauliString x_operator_string(const LadderConfig& cfg) {
  const OperatorSum h0a = build_h0a(cfg);
  const OperatorSum h0b = build_h0b(cfg);
  auto product = [](const OperatorSum& h) {
    const auto& ts = h.terms();
    for (std::size_t a = 0; a < ts.size(); ++a) {
      for (std::size_t b = a + 1; b < ts.size(); ++b) {
        if (!ts[a].commutes_with(ts[b])) {
          throw NumericalError("resonant terms do not commute; telescoped form invalid");
        }
      }
    }
    PauliString u = PauliString::identity();
    for (const auto& t : ts) u = u * t.with_coeff(cx{0.0, -1.0});
    return u;
  };
  return product(h0b) * product(h0a);
}

Eigen::MatrixXcd build_x_operator(const LadderConfig& cfg) {
  cfg.validate();
  if (cfg.n_sites() > kMaxDenseSites) {
    throw ValidationError("x operator above the dense size guard");
  }
  const double dt = cfg.tau * cfg.period();
  Eigen::MatrixXcd x = expm_hermitian(build_h0b(cfg).to_dense(), dt) *
                       expm_hermitian(build_h0a(cfg).to_dense(), dt);
  const Eigen::MatrixXcd x2 = x * x;
  const cx c = x2(0, 0);
  const std::size_t dim = x2.rows();
  const double dev =
      (x2 - c * Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (std::abs(std::abs(c) - 1.0) > 1e-10 || dev > 1e-10) {
    throw NumericalError("X^2 is not proportional to the identity");
  }
  // X^2 = e^{i phi} I; remove the half phase so X^2 = +I.
  const double phi = std::arg(c);
  x *= std::exp(cx{0.0, -phi / 2.0});
  return x;
}

OperatorSum closed_form_d0(const LadderConfig& cfg) {
  cfg.validate();
  const int L = cfg.L;
  const int star = L / 2 - 1;
  const double J = cfg.j;
  std::vector<PauliString> terms;

  // A left bond or field picks up a minus sign when exactly one of its sites
  // lies in the support {0, L/2-1} of the telescoped resonant string.
  auto on_support = [&](int i) { return i == 0 || i == star; };

  // Left half: bonds and rungs over sites 0..star, fields with the boundary
  // flips; the z fields cancel at the flipped sites.
  for (int i = 0; i + 1 <= star; ++i) {
    const double sign = (on_support(i) != on_support(i + 1)) ? -1.0 : 1.0;
    terms.push_back({sign * J, {{cfg.upper(i), PauliOp::X}, {cfg.upper(i + 1), PauliOp::X}}});
    terms.push_back({sign * J, {{cfg.lower(i), PauliOp::Y}, {cfg.lower(i + 1), PauliOp::Y}}});
  }
  terms.push_back({-J * cfg.g_zz, {{cfg.upper(0), PauliOp::Z}, {cfg.lower(0), PauliOp::Z}}});
  terms.push_back({-J * cfg.g_x, {{cfg.upper(0), PauliOp::X}}});
  terms.push_back({-J * cfg.g_y, {{cfg.lower(0), PauliOp::Y}}});
  for (int i = 1; i <= star - 1; ++i) {
    terms.push_back({J * cfg.g_zz, {{cfg.upper(i), PauliOp::Z}, {cfg.lower(i), PauliOp::Z}}});
    terms.push_back({J * cfg.g_x, {{cfg.upper(i), PauliOp::X}}});
    terms.push_back({J * cfg.g_z, {{cfg.upper(i), PauliOp::Z}}});
    terms.push_back({J * cfg.g_y, {{cfg.lower(i), PauliOp::Y}}});
    terms.push_back({J * cfg.g_z, {{cfg.lower(i), PauliOp::Z}}});
  }

  // Right half: no sign flips; fields at the far edge keep only x/y parts.
  for (int i = L / 2; i <= L - 2; ++i) {
    terms.push_back({J, {{cfg.upper(i), PauliOp::X}, {cfg.upper(i + 1), PauliOp::X}}});
    terms.push_back({J, {{cfg.lower(i), PauliOp::Y}, {cfg.lower(i + 1), PauliOp::Y}}});
  }
  for (int i = L / 2 + 1; i <= L - 1; ++i) {
    terms.push_back({J * cfg.g_zz, {{cfg.upper(i), PauliOp::Z}, {cfg.lower(i), PauliOp::Z}}});
  }
  for (int i = L / 2 + 1; i <= L - 2; ++i) {
    terms.push_back({J * cfg.g_x, {{cfg.upper(i), PauliOp::X}}});
    terms.push_back({J * cfg.g_z, {{cfg.upper(i), PauliOp::Z}}});
    terms.push_back({J * cfg.g_y, {{cfg.lower(i), PauliOp::Y}}});
    terms.push_back({J * cfg.g_z, {{cfg.lower(i), PauliOp::Z}}});
  }
  terms.push_back({J * cfg.g_x, {{cfg.upper(L - 1), PauliOp::X}}});
  terms.push_back({J * cfg.g_y, {{cfg.lower(L - 1), PauliOp::Y}}});

  // Center: the bond carries both lambda weights; the side pieces carry
  // +lambda_b at * and -lambda_a at *+1.
  const double la = cfg.lambda_a, lb = cfg.lambda_b;
  terms.push_back({J * (la + lb), {{cfg.upper(star), PauliOp::X}, {cfg.upper(star + 1), PauliOp::X}}});
  terms.push_back({J * (la + lb), {{cfg.lower(star), PauliOp::Y}, {cfg.lower(star + 1), PauliOp::Y}}});
  terms.push_back({J * lb * cfg.g_zz, {{cfg.upper(star), PauliOp::Z}, {cfg.lower(star), PauliOp::Z}}});
  terms.push_back({-J * la * cfg.g_zz, {{cfg.upper(star + 1), PauliOp::Z}, {cfg.lower(star + 1), PauliOp::Z}}});
  terms.push_back({J * lb * cfg.g_x, {{cfg.upper(star), PauliOp::X}}});
  terms.push_back({J * lb * cfg.g_y, {{cfg.lower(star), PauliOp::Y}}});
  terms.push_back({-J * la * cfg.g_x, {{cfg.upper(star + 1), PauliOp::X}}});
  terms.push_back({-J * la * cfg.g_y, {{cfg.lower(star + 1), PauliOp::Y}}});

  return {cfg.n_sites(), std::move(terms)};
}

OperatorSum odd_operator(const LadderConfig& cfg, int index) {
  cfg.validate();
  const int star = cfg.L / 2 - 1;
  std::vector<PauliString> terms;
  if (index == 1) {
    terms.push_back(pauli_x(cfg.upper(star)));
    terms.push_back(pauli_x(cfg.upper(star + 1), -1.0));
  } else if (index == 2) {
    terms.push_back(pauli_y(cfg.lower(star)));
    terms.push_back(pauli_y(cfg.lower(star + 1), -1.0));
  } else {
    throw ValidationError("odd operator index must be 1 or 2");
  }
  return {cfg.n_sites(), std::move(terms)};
}

}  // namespace floq
