#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace floq::kernels {

using cx = std::complex<double>;

/// Vectorized backend used for the state-vector inner loops.
/// The scalar backend is the reference implementation; the AVX2 backend is
/// selected at runtime when the CPU supports it and must agree with the
/// scalar one to floating-point accumulation order.
enum class Backend { scalar, avx2 };

/// Backend currently in use.
Backend active_backend();

/// Override the backend (falls back to scalar if the requested one is
/// unavailable). Intended for tests and benchmarking; the environment
/// variable FLOQ_KERNEL_BACKEND=scalar|avx2 has the same effect at startup.
void force_backend(Backend b);

/// Restore automatic CPU detection.
void reset_backend();

const char* backend_name(Backend b);

/// dst[i ^ flip_mask] += coeff * (-1)^parity(i & sign_mask) * src[i], i in [0, n).
/// n is a power of two; dst and src must not alias. This is the action of a
/// single Pauli string on a state vector: flip_mask carries the X/Y bits,
/// sign_mask the Z/Y bits, and coeff absorbs the i^(#Y) phase.
void apply_phase_flip(cx* dst, const cx* src, std::size_t n,
                      std::uint64_t flip_mask, std::uint64_t sign_mask, cx coeff);

/// y += a * x
void axpy(cx* y, cx a, const cx* x, std::size_t n);

/// sum_i conj(x[i]) * y[i]
cx dot(const cx* x, const cx* y, std::size_t n);

/// sum_i |x[i]|^2
double squared_norm(const cx* x, std::size_t n);

/// x *= a
void scale(cx* x, cx a, std::size_t n);

}  // namespace floq::kernels
