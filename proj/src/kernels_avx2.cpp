#include "kernels_internal.hpp"

#ifdef FLOQ_HAVE_AVX2

#include <immintrin.h>

namespace floq::kernels::detail {

namespace {

// (re0, im0, re1, im1) -> (im0, re0, im1, re1)
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Complex product of two packed complex doubles with the broadcast scalar
// (cre, cim).
inline __m256d cmul(__m256d v, __m256d cre, __m256d cim) {
  return _mm256_fmaddsub_pd(v, cre, _mm256_mul_pd(swap_re_im(v), cim));
}

}  // namespace

void apply_phase_flip_avx2(cx* dst, const cx* src, std::size_t n,
                           std::uint64_t flip_mask, std::uint64_t sign_mask,
                           cx coeff) {
  if (n < 2) {
    apply_phase_flip_scalar(dst, src, n, flip_mask, sign_mask, coeff);
    return;
  }
  const __m256d cre = _mm256_set1_pd(coeff.real());
  const __m256d cim = _mm256_set1_pd(coeff.imag());

  // Per-pair sign patterns, indexed by the parity of the even element. Bit 0
  // of sign_mask decides whether the odd element's sign differs.
  const int odd_differs = static_cast<int>(sign_mask & 1ull);
  __m256d pat[2];
  for (int p = 0; p < 2; ++p) {
    const double s0 = p ? -0.0 : 0.0;
    const double s1 = (p ^ odd_differs) ? -0.0 : 0.0;
    pat[p] = _mm256_set_pd(s1, s1, s0, s0);
  }

  const std::uint64_t flip_high = flip_mask & ~1ull;
  const bool swap_pair = (flip_mask & 1ull) != 0;

  for (std::size_t i = 0; i < n; i += 2) {
    __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(src + i));
    v = _mm256_xor_pd(v, pat[__builtin_parityll(i & sign_mask)]);
    __m256d w = cmul(v, cre, cim);
    if (swap_pair) w = _mm256_permute2f128_pd(w, w, 1);
    double* d = reinterpret_cast<double*>(dst + (i ^ flip_high));
    _mm256_storeu_pd(d, _mm256_add_pd(_mm256_loadu_pd(d), w));
  }
}

void axpy_avx2(cx* y, cx a, const cx* x, std::size_t n) {
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    double* d = reinterpret_cast<double*>(y + i);
    _mm256_storeu_pd(d, _mm256_add_pd(_mm256_loadu_pd(d), cmul(xv, are, aim)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

cx dot_avx2(const cx* x, const cx* y, std::size_t n) {
  __m256d racc = _mm256_setzero_pd();
  __m256d iacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    const __m256d yv = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    racc = _mm256_fmadd_pd(xv, yv, racc);
    iacc = _mm256_fmadd_pd(swap_re_im(xv), yv, iacc);
  }
  alignas(32) double r[4], s[4];
  _mm256_store_pd(r, racc);
  _mm256_store_pd(s, iacc);
  double re = r[0] + r[1] + r[2] + r[3];
  double im = (s[1] + s[3]) - (s[0] + s[2]);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    re += xr * y[i].real() + xi * y[i].imag();
    im += xr * y[i].imag() - xi * y[i].real();
  }
  return {re, im};
}

double squared_norm_avx2(const cx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double r[4];
  _mm256_store_pd(r, acc);
  double s = r[0] + r[1] + r[2] + r[3];
  for (; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void scale_avx2(cx* x, cx a, std::size_t n) {
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    double* d = reinterpret_cast<double*>(x + i);
    _mm256_storeu_pd(d, cmul(_mm256_loadu_pd(d), are, aim));
  }
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace floq::kernels::detail

#endif  // FLOQ_HAVE_AVX2
