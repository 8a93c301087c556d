#include <doctest.h>

#include <cmath>
#include <numbers>

#include "floq/dense.hpp"
#include "floq/ladder.hpp"
#include "floq/symmetry.hpp"
#include "floq/vanvleck.hpp"

using namespace floq;

namespace {

LadderConfig fig_config(int L, double omega) {
  LadderConfig cfg;
  cfg.L = L;
  cfg.omega = omega;
  cfg.g_z = 0.7;
  cfg.g_zz = 1.3;
  return cfg;
}

// single-qubit toy drive: one constant window on [0, P/2], frame trivial
FourierTable toy_table(double period) {
  Eigen::MatrixXcd h(2, 2);
  h << 0.4, cx{0.1, -0.2}, cx{0.1, 0.2}, -0.4;
  return FourierTable::from_windows({{h, 0.0, period / 2.0}}, period);
}

}  // namespace

TEST_SUITE("vanvleck") {

TEST_CASE("toy drive components match the hand integral") {
  const double P = 3.7;
  const FourierTable table = toy_table(P);
  Eigen::MatrixXcd h(2, 2);
  h << 0.4, cx{0.1, -0.2}, cx{0.1, 0.2}, -0.4;

  CHECK((table.component(0) - 0.5 * h).cwiseAbs().maxCoeff() < 1e-14);
  for (long m : {1L, 2L, 3L, 5L}) {
    // (1/P) int_0^{P/2} e^{i m (2 pi/P) t} dt = ((-1)^m - 1) / (2 pi i m)
    const cx expected_scalar =
        (std::pow(-1.0, m) - 1.0) / (cx{0.0, 2.0 * std::numbers::pi * m});
    CHECK((table.component(m) - expected_scalar * h).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("time-independent drive has no higher-order content") {
  const double P = 2.0;
  Eigen::MatrixXcd h(2, 2);
  h << 1.0, 0.5, 0.5, -1.0;
  const FourierTable table = FourierTable::from_windows({{h, 0.0, P}}, P);
  CHECK(table.component(3).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(table.effective_term(1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(table.effective_term(2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(table.kick(0.33, 1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((table.effective_term(0) - h).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("conjugate pairing of the ladder components") {
  const FourierTable table(fig_config(4, 8.0 * std::numbers::pi));
  for (long m = 1; m <= 6; ++m) {
    CHECK((table.component(-m) - table.component(m).adjoint()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("zeroth order equals the closed-form prethermal hamiltonian") {
  for (auto [la, lb] : {std::pair{0.5, 0.5}, std::pair{0.8, 1.2}}) {
    LadderConfig cfg = fig_config(4, 8.0 * std::numbers::pi);
    cfg.lambda_a = la;
    cfg.lambda_b = lb;
    const FourierTable table(cfg);
    const Eigen::MatrixXcd v0 = table.component(0);
    CHECK(spectral_norm(v0 - closed_form_d0(cfg).to_dense()) < 1e-10);
    CHECK(spectral_norm(table.effective_hamiltonian(0) -
                        closed_form_d0(cfg).to_dense()) < 1e-10);
  }
}

TEST_CASE("expansion terms scale with the inverse frequency") {
  const LadderConfig slow = fig_config(4, 8.0 * std::numbers::pi);
  const LadderConfig fast = fig_config(4, 16.0 * std::numbers::pi);
  const FourierTable ts(slow), tf(fast);
  const double r1 = spectral_norm(ts.effective_term(1)) /
                    spectral_norm(tf.effective_term(1));
  const double r2 = spectral_norm(ts.effective_term(2)) /
                    spectral_norm(tf.effective_term(2));
  CHECK(r1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(r2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("kick operators: gauge, periodicity, hermiticity, derivative") {
  const LadderConfig cfg = fig_config(4, 8.0 * std::numbers::pi);
  const FourierTable table(cfg);
  const double p2 = table.base_period();

  for (int order : {1, 2}) {
    // composite midpoint quadrature of the van Vleck gauge constraint
    const int nodes = 512;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(table.dim(), table.dim());
    for (int k = 0; k < nodes; ++k) {
      acc += table.kick((k + 0.5) * p2 / nodes, order);
    }
    acc *= p2 / nodes;
    CAPTURE(order);
    CHECK(spectral_norm(acc) < 1e-9);

    CHECK(spectral_norm(table.kick(0.0, order) - table.kick(p2, order)) < 1e-12);

    const Eigen::MatrixXcd k = table.kick(0.31 * p2, order);
    CHECK((k - k.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }

  // dK1/dt = V_int(t) - V_0 inside a window (finite-difference probe)
  const double t0 = cfg.tau * cfg.period() * 1.5;  // inside the first weak window
  const double dh = 1e-6;
  const Eigen::MatrixXcd deriv =
      (table.kick(t0 + dh, 1) - table.kick(t0 - dh, 1)) / (2.0 * dh);
  const Eigen::MatrixXcd expected = table.windows()[0].matrix - table.component(0);
  CHECK(spectral_norm(deriv - expected) < 1e-5);
}

TEST_CASE("the effective hamiltonian inherits the symmetry group") {
  const LadderConfig cfg = fig_config(4, 8.0 * std::numbers::pi);
  const FourierTable table(cfg);
  const Eigen::MatrixXcd x = build_x_operator(cfg);
  SymmetryElement mirror{SymmetryElement::Kind::unitary, build_mirror_unitary(cfg.L),
                         "mirror"};
  const Eigen::MatrixXcd g_int = interaction_picture_element(cfg, mirror).matrix;

  for (int n : {0, 1, 2}) {
    const Eigen::MatrixXcd dn = table.effective_hamiltonian(n);
    CAPTURE(n);
    CHECK(spectral_norm(x * dn - dn * x) < 1e-8);
    CHECK(spectral_norm(g_int * dn - dn * g_int) < 1e-8);
  }

  for (long m = 1; m <= 4; ++m) {
    const Eigen::MatrixXcd vm = table.component(m);
    const cx px = std::exp(cx{0.0, std::numbers::pi * m});
    const cx pm = std::exp(cx{0.0, -std::numbers::pi * m / 2.0});
    CHECK(spectral_norm(x * vm * x.adjoint() - px * vm) < 1e-9);
    CHECK(spectral_norm(g_int * vm * g_int.adjoint() - pm * vm) < 1e-9);
  }
}

TEST_CASE("higher orders approximate the exact stroboscopic propagator better") {
  const LadderConfig cfg = fig_config(4, 8.0 * std::numbers::pi);
  const FourierTable table(cfg);
  const double T = cfg.period();

  // exact two-period propagator in the interaction picture
  ResonantFrame frame(cfg);
  DenseProtocol dense(build_protocol(cfg), cfg.n_sites());
  const Eigen::MatrixXcd u_int =
      frame.at_extended(2.0 * T).adjoint() * dense.propagator(2.0 * T);

  // The stroboscopic approximation is U_n(0) e^{-i D_n 2T} U_n(0)^dag; the
  // kick rotation must be restored, otherwise its omission error masks the
  // truncation order for every n.
  auto dressed_error = [&](int n) {
    Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(table.dim(), table.dim());
    for (int i = 1; i <= n; ++i) k0 += table.kick(0.0, i);
    const Eigen::MatrixXcd rot = expm_hermitian(k0, 1.0);
    return spectral_norm(u_int - rot *
                                     expm_hermitian(table.effective_hamiltonian(n),
                                                    2.0 * T) *
                                     rot.adjoint());
  };
  const double e0 = dressed_error(0);
  const double e1 = dressed_error(1);
  const double e2 = dressed_error(2);
  CHECK(e1 < e0);
  CHECK(e2 < e1);
  const double lambda = 2.0 * 2.0 * cfg.j;  // 2 k J with k = 2
  const double omega_tilde = cfg.omega / (2.0 * lambda);
  CHECK(e0 / e2 > omega_tilde);
}

TEST_CASE("insufficient cutoffs are reported") {
  FourierTable::Options opt;
  opt.m_single = 4;
  opt.m_conv = 4;
  opt.m_kick2 = 8;
  const FourierTable table(fig_config(4, 8.0 * std::numbers::pi), opt);
  CHECK_THROWS_AS(table.effective_term(1), NumericalError);
}

}  // TEST_SUITE
