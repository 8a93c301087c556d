#include "floq/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_internal.hpp"

namespace floq::kernels {

namespace {

Backend detect_backend() {
#ifdef FLOQ_HAVE_AVX2
  bool avx2_ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  bool avx2_ok = false;
#endif
  Backend b = avx2_ok ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("FLOQ_KERNEL_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_ok) b = Backend::avx2;
  }
  return b;
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void force_backend(Backend b) {
#ifndef FLOQ_HAVE_AVX2
  b = Backend::scalar;
#else
  if (b == Backend::avx2 &&
      !(__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))) {
    b = Backend::scalar;
  }
#endif
  g_backend.store(b, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(detect_backend(), std::memory_order_relaxed); }

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void apply_phase_flip(cx* dst, const cx* src, std::size_t n,
                      std::uint64_t flip_mask, std::uint64_t sign_mask, cx coeff) {
#ifdef FLOQ_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::apply_phase_flip_avx2(dst, src, n, flip_mask, sign_mask, coeff);
    return;
  }
#endif
  detail::apply_phase_flip_scalar(dst, src, n, flip_mask, sign_mask, coeff);
}

void axpy(cx* y, cx a, const cx* x, std::size_t n) {
#ifdef FLOQ_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::axpy_avx2(y, a, x, n);
    return;
  }
#endif
  detail::axpy_scalar(y, a, x, n);
}

cx dot(const cx* x, const cx* y, std::size_t n) {
#ifdef FLOQ_HAVE_AVX2
  if (active_backend() == Backend::avx2) return detail::dot_avx2(x, y, n);
#endif
  return detail::dot_scalar(x, y, n);
}

double squared_norm(const cx* x, std::size_t n) {
#ifdef FLOQ_HAVE_AVX2
  if (active_backend() == Backend::avx2) return detail::squared_norm_avx2(x, n);
#endif
  return detail::squared_norm_scalar(x, n);
}

void scale(cx* x, cx a, std::size_t n) {
#ifdef FLOQ_HAVE_AVX2
  if (active_backend() == Backend::avx2) {
    detail::scale_avx2(x, a, n);
    return;
  }
#endif
  detail::scale_scalar(x, a, n);
}

}  // namespace floq::kernels
