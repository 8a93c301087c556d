#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "floq/errors.hpp"

namespace floq {

using cx = std::complex<double>;

/// Largest qubit count for which dense matrices may be materialized.
inline constexpr int kMaxDenseSites = 14;

/// Coefficients below this magnitude are dropped by simplification.
inline constexpr double kCoeffPruneThreshold = 1e-14;

enum class PauliOp : std::uint8_t { X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);

/// A tensor product of single-site Pauli operators with a complex coefficient.
///
/// Stored as a bit-mask pair: site q carries X when only x_mask has bit q,
/// Z when only z_mask has it, Y when both do. Identity sites are never
/// stored, so strings with equal masks are mergeable by coefficient addition.
/// Site indices run 0..63.
class PauliString {
 public:
  /// Identity with coefficient 1.
  PauliString() = default;

  /// A string from explicit (site, op) pairs; duplicate sites are rejected.
  PauliString(cx coeff, std::initializer_list<std::pair<int, PauliOp>> ops);

  static PauliString from_ops(cx coeff, const std::map<int, PauliOp>& ops);
  static PauliString identity(cx coeff = 1.0);

  cx coeff() const { return coeff_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  int weight() const;
  int max_site() const;  // -1 for the identity

  /// Site -> operator map (identity sites omitted).
  std::map<int, PauliOp> ops() const;

  PauliString with_coeff(cx c) const;
  PauliString scaled(cx c) const { return with_coeff(coeff_ * c); }
  PauliString adjoint() const { return with_coeff(std::conj(coeff_)); }

  /// True when both strings have the same site -> operator map.
  bool same_ops(const PauliString& other) const {
    return x_mask_ == other.x_mask_ && z_mask_ == other.z_mask_;
  }

  /// True when the two strings commute as operators (coefficients ignored).
  bool commutes_with(const PauliString& other) const;

  /// e.g. "(2,0) X0 Z3"
  std::string to_string() const;

 private:
  cx coeff_ = 1.0;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;

  friend PauliString operator*(const PauliString& a, const PauliString& b);
};

/// Product with the accumulated Pauli phase; |result.coeff| = |a.coeff| |b.coeff|.
PauliString operator*(const PauliString& a, const PauliString& b);

PauliString pauli_x(int site, cx coeff = 1.0);
PauliString pauli_y(int site, cx coeff = 1.0);
PauliString pauli_z(int site, cx coeff = 1.0);

/// Complex amplitudes over the 2^n_sites computational basis.
/// Basis convention: Z|0> = +|0>, and qubit 0 is the least significant bit
/// of the basis-state index.
class StateVector {
 public:
  /// |0...0>
  explicit StateVector(int n_sites);

  static StateVector basis(int n_sites, std::uint64_t index);
  static StateVector from_amplitudes(int n_sites, std::vector<cx> amps);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return amps_.size(); }

  const std::vector<cx>& amps() const { return amps_; }
  cx* data() { return amps_.data(); }
  const cx* data() const { return amps_.data(); }

  double norm() const;
  void normalize();

  /// <this|other>
  cx inner(const StateVector& other) const;

  Eigen::Map<const Eigen::VectorXcd> as_eigen() const {
    return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
  }
  static StateVector from_eigen(int n_sites, const Eigen::VectorXcd& v);

 private:
  int n_sites_;
  std::vector<cx> amps_;
};

/// A simplified linear combination of PauliStrings on a fixed site count.
///
/// Terms are kept canonical at all times: sorted by (x_mask, z_mask),
/// coefficients of equal strings merged, magnitudes below the prune
/// threshold dropped. All arithmetic preserves this form.
class OperatorSum {
 public:
  explicit OperatorSum(int n_sites);
  OperatorSum(int n_sites, std::vector<PauliString> terms);

  int n_sites() const { return n_sites_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add_term(const PauliString& t);

  /// Re-canonicalize with an explicit prune threshold. Idempotent.
  OperatorSum simplify(double threshold = kCoeffPruneThreshold) const;

  OperatorSum& operator+=(const OperatorSum& other);
  OperatorSum& operator-=(const OperatorSum& other);
  OperatorSum& operator*=(cx scalar);

  OperatorSum adjoint() const;

  /// All coefficients real after simplification (every Pauli string is
  /// self-adjoint, so this is the full Hermiticity condition).
  bool is_hermitian(double tol = 1e-12) const;

  /// sqrt(sum |coeff|^2) = sqrt(tr(A^dag A) / 2^n): the normalized
  /// Hilbert-Schmidt norm, exact at any size.
  double hs_norm() const;

  /// op|psi> without materializing a matrix; bitwise action per term.
  StateVector apply(const StateVector& psi) const;

  /// Dense matrix; guarded by kMaxDenseSites.
  Eigen::MatrixXcd to_dense() const;

  std::string to_string() const;

 private:
  int n_sites_;
  std::vector<PauliString> terms_;  // canonical: sorted, merged, pruned

  void canonicalize(double threshold);
  void check_term(const PauliString& t) const;
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);
OperatorSum operator-(OperatorSum a, const OperatorSum& b);
OperatorSum operator*(cx scalar, OperatorSum s);

/// Operator product (all pairwise string products, then simplification).
OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);

/// simplify(ab - ba); antisymmetric by construction.
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

/// Relabel sites: qubit q -> perm[q]. perm must be a permutation of
/// 0..n_sites-1.
OperatorSum permute_sites(const OperatorSum& s, const std::vector<int>& perm);

/// Conjugation U s U^-1 by a single unitary Pauli string (|coeff| = 1):
/// every term maps to +/- itself.
OperatorSum conjugate_by_pauli(const PauliString& u, const OperatorSum& s);

}  // namespace floq
