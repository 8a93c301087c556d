#include "floq/dense.hpp"

#include <cmath>

namespace floq {

HermitianEig::HermitianEig(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw NumericalError("hermitian eigendecomposition failed");
  }
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Eigen::MatrixXcd HermitianEig::expm(double t) const {
  const Eigen::ArrayXcd phases = (cx{0.0, -t} * evals_.array().cast<cx>()).exp();
  return evecs_ * phases.matrix().asDiagonal() * evecs_.adjoint();
}

Eigen::VectorXcd HermitianEig::apply_expm(double t, const Eigen::VectorXcd& v) const {
  const Eigen::ArrayXcd phases = (cx{0.0, -t} * evals_.array().cast<cx>()).exp();
  return evecs_ * (phases * (evecs_.adjoint() * v).array()).matrix();
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
  return HermitianEig(h).expm(t);
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const cx tr = (b.adjoint() * a).trace();
  cx phase{1.0, 0.0};
  if (std::abs(tr) > 0.0) phase = tr / std::abs(tr);
  return spectral_norm(a - phase * b);
}

}  // namespace floq
