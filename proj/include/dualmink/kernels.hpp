#pragma once

#include <cstdint>
#include <vector>

namespace dualmink::kern {

// Batch kernels over structure-of-arrays direction sets. All variants of a
// kernel are bit-exact equals of the scalar reference: same operation
// order per element, no FMA contraction, ties in the argmin resolved to
// the lowest facet index. The library is built with -ffp-contract=off so
// the scalar reference cannot be contracted either.

/// For each direction j: rho[j] = min over facets i with dot > 0 of
/// h[i]/dot(i,j), cell[j] = lowest attaining i. Directions with no
/// positive dot (impossible for valid bodies) get rho = +inf, cell = -1.
using RadialCell2Fn = void (*)(const double* nx, const double* ny, const double* h, int m,
                               const double* ux, const double* uy, int count,
                               double* rho, int32_t* cell);
using RadialCell3Fn = void (*)(const double* nx, const double* ny, const double* nz,
                               const double* h, int m,
                               const double* ux, const double* uy, const double* uz, int count,
                               double* rho, int32_t* cell);

/// For each direction j: out[j] = max over points i of dot(i,j).
using SupportMax2Fn = void (*)(const double* px, const double* py, int npts,
                               const double* ux, const double* uy, int count, double* out);
using SupportMax3Fn = void (*)(const double* px, const double* py, const double* pz, int npts,
                               const double* ux, const double* uy, const double* uz, int count,
                               double* out);

struct Impl {
    const char* name;
    RadialCell2Fn radial_cell_2d;
    RadialCell3Fn radial_cell_3d;
    SupportMax2Fn support_max_2d;
    SupportMax3Fn support_max_3d;
};

/// Scalar reference implementation. Always available.
const Impl& scalar_impl();

/// Implementations usable on this machine (scalar first).
const std::vector<const Impl*>& available_impls();

/// Implementation used by the library. Picks the widest available unless
/// the environment variable DUALMINK_SIMD names one of "scalar", "avx2",
/// "neon" (unknown or unavailable names fall back to the default choice).
const Impl& active_impl();

/// Radial minimum + owning facet for general dimension, row-major
/// normals[m x dim]. Scalar only; used by the n >= 4 Monte Carlo paths.
void radial_cell_nd(const double* normals, const double* h, int m, int dim,
                    const double* u, double* rho, int32_t* cell);

} // namespace dualmink::kern
