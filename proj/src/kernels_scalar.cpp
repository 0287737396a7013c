#include "dualmink/kernels.hpp"

#include <limits>

// Scalar reference kernels. The SIMD variants promise bit-exact agreement,
// which constrains this file: dot products must stay in the written
// mul/mul/add order (the build sets -ffp-contract=off so the compiler
// cannot fuse them into FMA), and the argmin must use strict < so ties go
// to the lowest facet index.

namespace dualmink::kern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void radial_cell_2d_scalar(const double* nx, const double* ny, const double* h, int m,
                           const double* ux, const double* uy, int count,
                           double* rho, int32_t* cell) {
    for (int j = 0; j < count; ++j) {
        double best = kInf;
        int32_t bi = -1;
        const double x = ux[j], y = uy[j];
        for (int i = 0; i < m; ++i) {
            const double d = nx[i] * x + ny[i] * y;
            if (d > 0.0) {
                const double r = h[i] / d;
                if (r < best) {
                    best = r;
                    bi = static_cast<int32_t>(i);
                }
            }
        }
        rho[j] = best;
        cell[j] = bi;
    }
}

void radial_cell_3d_scalar(const double* nx, const double* ny, const double* nz,
                           const double* h, int m,
                           const double* ux, const double* uy, const double* uz, int count,
                           double* rho, int32_t* cell) {
    for (int j = 0; j < count; ++j) {
        double best = kInf;
        int32_t bi = -1;
        const double x = ux[j], y = uy[j], z = uz[j];
        for (int i = 0; i < m; ++i) {
            const double d = nx[i] * x + ny[i] * y + nz[i] * z;
            if (d > 0.0) {
                const double r = h[i] / d;
                if (r < best) {
                    best = r;
                    bi = static_cast<int32_t>(i);
                }
            }
        }
        rho[j] = best;
        cell[j] = bi;
    }
}

void support_max_2d_scalar(const double* px, const double* py, int npts,
                           const double* ux, const double* uy, int count, double* out) {
    for (int j = 0; j < count; ++j) {
        double best = -kInf;
        const double x = ux[j], y = uy[j];
        for (int i = 0; i < npts; ++i) {
            const double d = px[i] * x + py[i] * y;
            if (d > best) best = d;
        }
        out[j] = best;
    }
}

void support_max_3d_scalar(const double* px, const double* py, const double* pz, int npts,
                           const double* ux, const double* uy, const double* uz, int count,
                           double* out) {
    for (int j = 0; j < count; ++j) {
        double best = -kInf;
        const double x = ux[j], y = uy[j], z = uz[j];
        for (int i = 0; i < npts; ++i) {
            const double d = px[i] * x + py[i] * y + pz[i] * z;
            if (d > best) best = d;
        }
        out[j] = best;
    }
}

} // namespace

const Impl& scalar_impl() {
    static const Impl impl{"scalar", radial_cell_2d_scalar, radial_cell_3d_scalar,
                           support_max_2d_scalar, support_max_3d_scalar};
    return impl;
}

void radial_cell_nd(const double* normals, const double* h, int m, int dim,
                    const double* u, double* rho, int32_t* cell) {
    double best = kInf;
    int32_t bi = -1;
    for (int i = 0; i < m; ++i) {
        const double* n = normals + static_cast<size_t>(i) * dim;
        double d = 0.0;
        for (int k = 0; k < dim; ++k) d += n[k] * u[k];
        if (d > 0.0) {
            const double r = h[i] / d;
            if (r < best) {
                best = r;
                bi = static_cast<int32_t>(i);
            }
        }
    }
    *rho = best;
    *cell = bi;
}

} // namespace dualmink::kern
