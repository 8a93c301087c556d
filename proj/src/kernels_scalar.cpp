#include "kernels_internal.hpp"

namespace floq::kernels::detail {

void apply_phase_flip_scalar(cx* dst, const cx* src, std::size_t n,
                             std::uint64_t flip_mask, std::uint64_t sign_mask,
                             cx coeff) {
  if (sign_mask == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      dst[i ^ flip_mask] += coeff * src[i];
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const cx v = coeff * src[i];
    dst[i ^ flip_mask] += __builtin_parityll(i & sign_mask) ? -v : v;
  }
}

void axpy_scalar(cx* y, cx a, const cx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cx dot_scalar(const cx* x, const cx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double squared_norm_scalar(const cx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void scale_scalar(cx* x, cx a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace floq::kernels::detail
