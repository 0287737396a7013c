// AVX2 variants of the batch kernels: 4 directions per iteration, facets in
// the inner loop, exactly the scalar operation order per element (mul/mul/
// add dot, division, strict-< argmin). No FMA instructions are used so the
// results are bit-identical to the scalar reference. The remainder block is
// delegated to the scalar kernel.

#include "dualmink/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>
#include <limits>

namespace dualmink::kern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

__attribute__((target("avx2")))
void radial_cell_2d_avx2(const double* nx, const double* ny, const double* h, int m,
                         const double* ux, const double* uy, int count,
                         double* rho, int32_t* cell) {
    const int vec_end = count & ~3;
    const __m256d zero = _mm256_setzero_pd();
    for (int j = 0; j < vec_end; j += 4) {
        const __m256d x = _mm256_loadu_pd(ux + j);
        const __m256d y = _mm256_loadu_pd(uy + j);
        __m256d best = _mm256_set1_pd(kInf);
        __m256d bidx = _mm256_set1_pd(-1.0);
        for (int i = 0; i < m; ++i) {
            const __m256d d = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(nx[i]), x),
                                            _mm256_mul_pd(_mm256_set1_pd(ny[i]), y));
            const __m256d pos = _mm256_cmp_pd(d, zero, _CMP_GT_OQ);
            const __m256d r = _mm256_div_pd(_mm256_set1_pd(h[i]), d);
            const __m256d lt = _mm256_cmp_pd(r, best, _CMP_LT_OQ);
            const __m256d take = _mm256_and_pd(pos, lt);
            best = _mm256_blendv_pd(best, r, take);
            bidx = _mm256_blendv_pd(bidx, _mm256_set1_pd(static_cast<double>(i)), take);
        }
        _mm256_storeu_pd(rho + j, best);
        const __m128i idx = _mm256_cvttpd_epi32(bidx);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(cell + j), idx);
    }
    if (vec_end < count)
        scalar_impl().radial_cell_2d(nx, ny, h, m, ux + vec_end, uy + vec_end,
                                     count - vec_end, rho + vec_end, cell + vec_end);
}

__attribute__((target("avx2")))
void radial_cell_3d_avx2(const double* nx, const double* ny, const double* nz,
                         const double* h, int m,
                         const double* ux, const double* uy, const double* uz, int count,
                         double* rho, int32_t* cell) {
    const int vec_end = count & ~3;
    const __m256d zero = _mm256_setzero_pd();
    for (int j = 0; j < vec_end; j += 4) {
        const __m256d x = _mm256_loadu_pd(ux + j);
        const __m256d y = _mm256_loadu_pd(uy + j);
        const __m256d z = _mm256_loadu_pd(uz + j);
        __m256d best = _mm256_set1_pd(kInf);
        __m256d bidx = _mm256_set1_pd(-1.0);
        for (int i = 0; i < m; ++i) {
            const __m256d dxy = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(nx[i]), x),
                                              _mm256_mul_pd(_mm256_set1_pd(ny[i]), y));
            const __m256d d = _mm256_add_pd(dxy, _mm256_mul_pd(_mm256_set1_pd(nz[i]), z));
            const __m256d pos = _mm256_cmp_pd(d, zero, _CMP_GT_OQ);
            const __m256d r = _mm256_div_pd(_mm256_set1_pd(h[i]), d);
            const __m256d lt = _mm256_cmp_pd(r, best, _CMP_LT_OQ);
            const __m256d take = _mm256_and_pd(pos, lt);
            best = _mm256_blendv_pd(best, r, take);
            bidx = _mm256_blendv_pd(bidx, _mm256_set1_pd(static_cast<double>(i)), take);
        }
        _mm256_storeu_pd(rho + j, best);
        const __m128i idx = _mm256_cvttpd_epi32(bidx);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(cell + j), idx);
    }
    if (vec_end < count)
        scalar_impl().radial_cell_3d(nx, ny, nz, h, m, ux + vec_end, uy + vec_end,
                                     uz + vec_end, count - vec_end, rho + vec_end,
                                     cell + vec_end);
}

__attribute__((target("avx2")))
void support_max_2d_avx2(const double* px, const double* py, int npts,
                         const double* ux, const double* uy, int count, double* out) {
    const int vec_end = count & ~3;
    for (int j = 0; j < vec_end; j += 4) {
        const __m256d x = _mm256_loadu_pd(ux + j);
        const __m256d y = _mm256_loadu_pd(uy + j);
        __m256d best = _mm256_set1_pd(-kInf);
        for (int i = 0; i < npts; ++i) {
            const __m256d d = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(px[i]), x),
                                            _mm256_mul_pd(_mm256_set1_pd(py[i]), y));
            best = _mm256_max_pd(best, d);
        }
        _mm256_storeu_pd(out + j, best);
    }
    if (vec_end < count)
        scalar_impl().support_max_2d(px, py, npts, ux + vec_end, uy + vec_end,
                                     count - vec_end, out + vec_end);
}

__attribute__((target("avx2")))
void support_max_3d_avx2(const double* px, const double* py, const double* pz, int npts,
                         const double* ux, const double* uy, const double* uz, int count,
                         double* out) {
    const int vec_end = count & ~3;
    for (int j = 0; j < vec_end; j += 4) {
        const __m256d x = _mm256_loadu_pd(ux + j);
        const __m256d y = _mm256_loadu_pd(uy + j);
        const __m256d z = _mm256_loadu_pd(uz + j);
        __m256d best = _mm256_set1_pd(-kInf);
        for (int i = 0; i < npts; ++i) {
            const __m256d dxy = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(px[i]), x),
                                              _mm256_mul_pd(_mm256_set1_pd(py[i]), y));
            const __m256d d = _mm256_add_pd(dxy, _mm256_mul_pd(_mm256_set1_pd(pz[i]), z));
            best = _mm256_max_pd(best, d);
        }
        _mm256_storeu_pd(out + j, best);
    }
    if (vec_end < count)
        scalar_impl().support_max_3d(px, py, pz, npts, ux + vec_end, uy + vec_end,
                                     uz + vec_end, count - vec_end, out + vec_end);
}

} // namespace

const Impl* avx2_impl_if_supported() {
    static const Impl impl{"avx2", radial_cell_2d_avx2, radial_cell_3d_avx2,
                           support_max_2d_avx2, support_max_3d_avx2};
    if (__builtin_cpu_supports("avx2")) return &impl;
    return nullptr;
}

} // namespace dualmink::kern

#else

namespace dualmink::kern {
const Impl* avx2_impl_if_supported() { return nullptr; }
} // namespace dualmink::kern

#endif
