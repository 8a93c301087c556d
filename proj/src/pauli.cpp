#include "floq/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "floq/kernels.hpp"

namespace floq {

namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

// i^k for k in 0..3
cx ipow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void mask_insert(std::uint64_t& x, std::uint64_t& z, int site, PauliOp op) {
  if (site < 0 || site >= 64) {
    throw ValidationError("pauli site index out of range: " + std::to_string(site));
  }
  const std::uint64_t bit = 1ull << site;
  if ((x | z) & bit) {
    throw ValidationError("duplicate pauli site: " + std::to_string(site));
  }
  switch (op) {
    case PauliOp::X: x |= bit; break;
    case PauliOp::Y: x |= bit; z |= bit; break;
    case PauliOp::Z: z |= bit; break;
  }
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    default: return 'Z';
  }
}

PauliString::PauliString(cx coeff, std::initializer_list<std::pair<int, PauliOp>> ops)
    : coeff_(coeff) {
  for (const auto& [site, op] : ops) mask_insert(x_mask_, z_mask_, site, op);
}

PauliString PauliString::from_ops(cx coeff, const std::map<int, PauliOp>& ops) {
  PauliString p;
  p.coeff_ = coeff;
  for (const auto& [site, op] : ops) mask_insert(p.x_mask_, p.z_mask_, site, op);
  return p;
}

PauliString PauliString::identity(cx coeff) {
  PauliString p;
  p.coeff_ = coeff;
  return p;
}

int PauliString::weight() const { return popcount(x_mask_ | z_mask_); }

int PauliString::max_site() const {
  const std::uint64_t m = x_mask_ | z_mask_;
  return m == 0 ? -1 : 63 - std::countl_zero(m);
}

std::map<int, PauliOp> PauliString::ops() const {
  std::map<int, PauliOp> out;
  std::uint64_t m = x_mask_ | z_mask_;
  while (m) {
    const int site = std::countr_zero(m);
    const std::uint64_t bit = 1ull << site;
    const bool x = x_mask_ & bit, z = z_mask_ & bit;
    out[site] = x ? (z ? PauliOp::Y : PauliOp::X) : PauliOp::Z;
    m &= m - 1;
  }
  return out;
}

PauliString PauliString::with_coeff(cx c) const {
  PauliString p = *this;
  p.coeff_ = c;
  return p;
}

bool PauliString::commutes_with(const PauliString& other) const {
  const int anti =
      popcount(x_mask_ & other.z_mask_) + popcount(z_mask_ & other.x_mask_);
  return (anti & 1) == 0;
}

std::string PauliString::to_string() const {
  std::ostringstream os;
  os << "(" << coeff_.real() << "," << coeff_.imag() << ")";
  for (const auto& [site, op] : ops()) os << " " << pauli_char(op) << site;
  return os.str();
}

// Each string is coeff * i^{|Y|} * X^x Z^z; multiplication commutes the Z
// part of a past the X part of b and re-extracts the Y phase.
PauliString operator*(const PauliString& a, const PauliString& b) {
  PauliString c;
  c.x_mask_ = a.x_mask_ ^ b.x_mask_;
  c.z_mask_ = a.z_mask_ ^ b.z_mask_;
  const int ya = popcount(a.x_mask_ & a.z_mask_);
  const int yb = popcount(b.x_mask_ & b.z_mask_);
  const int yc = popcount(c.x_mask_ & c.z_mask_);
  const int k = ya + yb - yc + 2 * popcount(a.z_mask_ & b.x_mask_);
  c.coeff_ = a.coeff_ * b.coeff_ * ipow(((k % 4) + 4) % 4);
  return c;
}

PauliString pauli_x(int site, cx coeff) { return {coeff, {{site, PauliOp::X}}}; }
PauliString pauli_y(int site, cx coeff) { return {coeff, {{site, PauliOp::Y}}}; }
PauliString pauli_z(int site, cx coeff) { return {coeff, {{site, PauliOp::Z}}}; }

StateVector::StateVector(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1 || n_sites > 30) {
    throw ValidationError("state vector site count out of range");
  }
  amps_.assign(std::size_t{1} << n_sites, cx{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_sites, std::uint64_t index) {
  StateVector psi(n_sites);
  if (index >= psi.dim()) throw ValidationError("basis index out of range");
  psi.amps_[0] = 0.0;
  psi.amps_[index] = 1.0;
  return psi;
}

StateVector StateVector::from_amplitudes(int n_sites, std::vector<cx> amps) {
  StateVector psi(n_sites);
  if (amps.size() != psi.dim()) {
    throw ValidationError("amplitude count does not match 2^n_sites");
  }
  psi.amps_ = std::move(amps);
  return psi;
}

StateVector StateVector::from_eigen(int n_sites, const Eigen::VectorXcd& v) {
  return from_amplitudes(n_sites, std::vector<cx>(v.data(), v.data() + v.size()));
}

double StateVector::norm() const {
  return std::sqrt(kernels::squared_norm(amps_.data(), amps_.size()));
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize the zero vector");
  kernels::scale(amps_.data(), cx{1.0 / n, 0.0}, amps_.size());
}

cx StateVector::inner(const StateVector& other) const {
  if (other.n_sites_ != n_sites_) throw ValidationError("state dimension mismatch");
  return kernels::dot(amps_.data(), other.amps_.data(), amps_.size());
}

OperatorSum::OperatorSum(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1 || n_sites > 64) {
    throw ValidationError("operator site count out of range");
  }
}

OperatorSum::OperatorSum(int n_sites, std::vector<PauliString> terms)
    : OperatorSum(n_sites) {
  for (const auto& t : terms) check_term(t);
  terms_ = std::move(terms);
  canonicalize(kCoeffPruneThreshold);
}

void OperatorSum::check_term(const PauliString& t) const {
  if (t.max_site() >= n_sites_) {
    throw ValidationError("pauli term exceeds operator site count");
  }
}

void OperatorSum::add_term(const PauliString& t) {
  check_term(t);
  terms_.push_back(t);
  canonicalize(kCoeffPruneThreshold);
}

void OperatorSum::canonicalize(double threshold) {
  std::sort(terms_.begin(), terms_.end(), [](const PauliString& a, const PauliString& b) {
    return std::make_pair(a.x_mask(), a.z_mask()) <
           std::make_pair(b.x_mask(), b.z_mask());
  });
  std::vector<PauliString> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().same_ops(t)) {
      merged.back() = merged.back().with_coeff(merged.back().coeff() + t.coeff());
    } else {
      merged.push_back(t);
    }
  }
  terms_.clear();
  for (const auto& t : merged) {
    if (std::abs(t.coeff()) > threshold) terms_.push_back(t);
  }
}

OperatorSum OperatorSum::simplify(double threshold) const {
  OperatorSum out(n_sites_);
  out.terms_ = terms_;
  out.canonicalize(threshold);
  return out;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  if (other.n_sites_ != n_sites_) throw ValidationError("operator size mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize(kCoeffPruneThreshold);
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
  if (other.n_sites_ != n_sites_) throw ValidationError("operator size mismatch");
  for (const auto& t : other.terms_) terms_.push_back(t.scaled(-1.0));
  canonicalize(kCoeffPruneThreshold);
  return *this;
}

OperatorSum& OperatorSum::operator*=(cx scalar) {
  for (auto& t : terms_) t = t.scaled(scalar);
  canonicalize(kCoeffPruneThreshold);
  return *this;
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum out(n_sites_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t = t.adjoint();
  out.canonicalize(kCoeffPruneThreshold);
  return out;
}

bool OperatorSum::is_hermitian(double tol) const {
  for (const auto& t : terms_) {
    if (std::abs(t.coeff().imag()) > tol) return false;
  }
  return true;
}

double OperatorSum::hs_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::norm(t.coeff());
  return std::sqrt(s);
}

StateVector OperatorSum::apply(const StateVector& psi) const {
  if (psi.n_sites() != n_sites_) throw ValidationError("operator/state size mismatch");
  std::vector<cx> out(psi.dim(), cx{0.0, 0.0});
  for (const auto& t : terms_) {
    const cx eff = t.coeff() * ipow(popcount(t.x_mask() & t.z_mask()));
    kernels::apply_phase_flip(out.data(), psi.data(), psi.dim(), t.x_mask(),
                              t.z_mask(), eff);
  }
  return StateVector::from_amplitudes(n_sites_, std::move(out));
}

Eigen::MatrixXcd OperatorSum::to_dense() const {
  if (n_sites_ > kMaxDenseSites) {
    throw ValidationError("dense matrix requested above the size guard");
  }
  const std::size_t dim = std::size_t{1} << n_sites_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    const cx eff = t.coeff() * ipow(popcount(t.x_mask() & t.z_mask()));
    for (std::size_t i = 0; i < dim; ++i) {
      const cx v = __builtin_parityll(i & t.z_mask()) ? -eff : eff;
      m(i ^ t.x_mask(), i) += v;
    }
  }
  return m;
}

std::string OperatorSum::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k) os << " + ";
    os << terms_[k].to_string();
  }
  if (terms_.empty()) os << "0";
  return os.str();
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
OperatorSum operator*(cx scalar, OperatorSum s) { return s *= scalar; }

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  if (a.n_sites() != b.n_sites()) throw ValidationError("operator size mismatch");
  std::vector<PauliString> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) prod.push_back(ta * tb);
  }
  return {a.n_sites(), std::move(prod)};
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
  return a * b - b * a;
}

OperatorSum permute_sites(const OperatorSum& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.n_sites()) {
    throw ValidationError("permutation size mismatch");
  }
  std::vector<PauliString> terms;
  terms.reserve(s.size());
  for (const auto& t : s.terms()) {
    std::map<int, PauliOp> moved;
    for (const auto& [site, op] : t.ops()) moved[perm[site]] = op;
    terms.push_back(PauliString::from_ops(t.coeff(), moved));
  }
  return {s.n_sites(), std::move(terms)};
}

OperatorSum conjugate_by_pauli(const PauliString& u, const OperatorSum& s) {
  std::vector<PauliString> terms;
  terms.reserve(s.size());
  for (const auto& t : s.terms()) {
    terms.push_back(u.commutes_with(t) ? t : t.scaled(-1.0));
  }
  return {s.n_sites(), std::move(terms)};
}

}  // namespace floq
