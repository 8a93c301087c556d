#pragma once

#include <Eigen/Dense>

#include "floq/pauli.hpp"

namespace floq {

/// exp(-i h t) for Hermitian h, via eigendecomposition.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& m);

/// min over theta of ||a - e^{i theta} b||_2, with theta chosen by
/// Frobenius alignment (theta = arg tr(b^dag a)). Falls back to the raw
/// distance when the trace vanishes.
double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Eigendecomposition of a Hermitian matrix, cached for repeated
/// exponentials exp(-i h t) at many t.
class HermitianEig {
 public:
  explicit HermitianEig(const Eigen::MatrixXcd& h);

  Eigen::MatrixXcd expm(double t) const;  // exp(-i h t)
  Eigen::VectorXcd apply_expm(double t, const Eigen::VectorXcd& v) const;

  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
};

}  // namespace floq
