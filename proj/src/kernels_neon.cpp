// NEON variants of the batch kernels: 2 directions per iteration, same
// operation order as the scalar reference (separate mul and add, no fused
// multiply-add), strict-< argmin with lowest-index ties. Remainder lanes
// fall through to the scalar kernel.

#include "dualmink/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>
#include <limits>

namespace dualmink::kern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline float64x2_t blend(float64x2_t a, float64x2_t b, uint64x2_t take) {
    return vbslq_f64(take, b, a);
}

void radial_cell_2d_neon(const double* nx, const double* ny, const double* h, int m,
                         const double* ux, const double* uy, int count,
                         double* rho, int32_t* cell) {
    const int vec_end = count & ~1;
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (int j = 0; j < vec_end; j += 2) {
        const float64x2_t x = vld1q_f64(ux + j);
        const float64x2_t y = vld1q_f64(uy + j);
        float64x2_t best = vdupq_n_f64(kInf);
        float64x2_t bidx = vdupq_n_f64(-1.0);
        for (int i = 0; i < m; ++i) {
            const float64x2_t d =
                vaddq_f64(vmulq_f64(vdupq_n_f64(nx[i]), x), vmulq_f64(vdupq_n_f64(ny[i]), y));
            const uint64x2_t pos = vcgtq_f64(d, zero);
            const float64x2_t r = vdivq_f64(vdupq_n_f64(h[i]), d);
            const uint64x2_t lt = vcltq_f64(r, best);
            const uint64x2_t take = vandq_u64(pos, lt);
            best = blend(best, r, take);
            bidx = blend(bidx, vdupq_n_f64(static_cast<double>(i)), take);
        }
        vst1q_f64(rho + j, best);
        cell[j] = static_cast<int32_t>(vgetq_lane_f64(bidx, 0));
        cell[j + 1] = static_cast<int32_t>(vgetq_lane_f64(bidx, 1));
    }
    if (vec_end < count)
        scalar_impl().radial_cell_2d(nx, ny, h, m, ux + vec_end, uy + vec_end,
                                     count - vec_end, rho + vec_end, cell + vec_end);
}

void radial_cell_3d_neon(const double* nx, const double* ny, const double* nz,
                         const double* h, int m,
                         const double* ux, const double* uy, const double* uz, int count,
                         double* rho, int32_t* cell) {
    const int vec_end = count & ~1;
    const float64x2_t zero = vdupq_n_f64(0.0);
    for (int j = 0; j < vec_end; j += 2) {
        const float64x2_t x = vld1q_f64(ux + j);
        const float64x2_t y = vld1q_f64(uy + j);
        const float64x2_t z = vld1q_f64(uz + j);
        float64x2_t best = vdupq_n_f64(kInf);
        float64x2_t bidx = vdupq_n_f64(-1.0);
        for (int i = 0; i < m; ++i) {
            const float64x2_t dxy =
                vaddq_f64(vmulq_f64(vdupq_n_f64(nx[i]), x), vmulq_f64(vdupq_n_f64(ny[i]), y));
            const float64x2_t d = vaddq_f64(dxy, vmulq_f64(vdupq_n_f64(nz[i]), z));
            const uint64x2_t pos = vcgtq_f64(d, zero);
            const float64x2_t r = vdivq_f64(vdupq_n_f64(h[i]), d);
            const uint64x2_t lt = vcltq_f64(r, best);
            const uint64x2_t take = vandq_u64(pos, lt);
            best = blend(best, r, take);
            bidx = blend(bidx, vdupq_n_f64(static_cast<double>(i)), take);
        }
        vst1q_f64(rho + j, best);
        cell[j] = static_cast<int32_t>(vgetq_lane_f64(bidx, 0));
        cell[j + 1] = static_cast<int32_t>(vgetq_lane_f64(bidx, 1));
    }
    if (vec_end < count)
        scalar_impl().radial_cell_3d(nx, ny, nz, h, m, ux + vec_end, uy + vec_end,
                                     uz + vec_end, count - vec_end, rho + vec_end,
                                     cell + vec_end);
}

void support_max_2d_neon(const double* px, const double* py, int npts,
                         const double* ux, const double* uy, int count, double* out) {
    const int vec_end = count & ~1;
    for (int j = 0; j < vec_end; j += 2) {
        const float64x2_t x = vld1q_f64(ux + j);
        const float64x2_t y = vld1q_f64(uy + j);
        float64x2_t best = vdupq_n_f64(-kInf);
        for (int i = 0; i < npts; ++i) {
            const float64x2_t d =
                vaddq_f64(vmulq_f64(vdupq_n_f64(px[i]), x), vmulq_f64(vdupq_n_f64(py[i]), y));
            best = vmaxq_f64(best, d);
        }
        vst1q_f64(out + j, best);
    }
    if (vec_end < count)
        scalar_impl().support_max_2d(px, py, npts, ux + vec_end, uy + vec_end,
                                     count - vec_end, out + vec_end);
}

void support_max_3d_neon(const double* px, const double* py, const double* pz, int npts,
                         const double* ux, const double* uy, const double* uz, int count,
                         double* out) {
    const int vec_end = count & ~1;
    for (int j = 0; j < vec_end; j += 2) {
        const float64x2_t x = vld1q_f64(ux + j);
        const float64x2_t y = vld1q_f64(uy + j);
        const float64x2_t z = vld1q_f64(uz + j);
        float64x2_t best = vdupq_n_f64(-kInf);
        for (int i = 0; i < npts; ++i) {
            const float64x2_t dxy =
                vaddq_f64(vmulq_f64(vdupq_n_f64(px[i]), x), vmulq_f64(vdupq_n_f64(py[i]), y));
            const float64x2_t d = vaddq_f64(dxy, vmulq_f64(vdupq_n_f64(pz[i]), z));
            best = vmaxq_f64(best, d);
        }
        vst1q_f64(out + j, best);
    }
    if (vec_end < count)
        scalar_impl().support_max_3d(px, py, pz, npts, ux + vec_end, uy + vec_end,
                                     uz + vec_end, count - vec_end, out + vec_end);
}

} // namespace

const Impl* neon_impl_if_supported() {
    static const Impl impl{"neon", radial_cell_2d_neon, radial_cell_3d_neon,
                           support_max_2d_neon, support_max_3d_neon};
    return &impl;
}

} // namespace dualmink::kern

#else

namespace dualmink::kern {
const Impl* neon_impl_if_supported() { return nullptr; }
} // namespace dualmink::kern

#endif
