#pragma once

#include "floq/kernels.hpp"

namespace floq::kernels::detail {

void apply_phase_flip_scalar(cx* dst, const cx* src, std::size_t n,
                             std::uint64_t flip_mask, std::uint64_t sign_mask,
                             cx coeff);
void axpy_scalar(cx* y, cx a, const cx* x, std::size_t n);
cx dot_scalar(const cx* x, const cx* y, std::size_t n);
double squared_norm_scalar(const cx* x, std::size_t n);
void scale_scalar(cx* x, cx a, std::size_t n);

#ifdef FLOQ_HAVE_AVX2
void apply_phase_flip_avx2(cx* dst, const cx* src, std::size_t n,
                           std::uint64_t flip_mask, std::uint64_t sign_mask,
                           cx coeff);
void axpy_avx2(cx* y, cx a, const cx* x, std::size_t n);
cx dot_avx2(const cx* x, const cx* y, std::size_t n);
double squared_norm_avx2(const cx* x, std::size_t n);
void scale_avx2(cx* x, cx a, std::size_t n);
#endif

}  // namespace floq::kernels::detail
