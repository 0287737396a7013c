#include "dualmink/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>

#include "dualmink/errors.hpp"
#include "dualmink/kernels.hpp"
#include "dualmink/quadrature.hpp"
#include "rng.hpp"

namespace dualmink {

namespace {

constexpr int64_t kChunk = 65536;

int thread_count() {
    if (const char* env = std::getenv("DUALMINK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min(v, 64L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 16u));
}

// Runs fn(chunk_index) over [0, nchunks). Workers pull indices from a
// shared counter; callers must write only to per-chunk slots so the merge
// order (and thus the result) is independent of the thread count.
template <class Fn>
void for_chunks(int64_t nchunks, Fn&& fn) {
    int threads = std::min<int64_t>(thread_count(), nchunks);
    if (threads <= 1) {
        for (int64_t i = 0; i < nchunks; ++i) fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const int64_t i = next.fetch_add(1);
                if (i >= nchunks) break;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

// Uniform directions for one chunk, SoA layout [d * count + j]. Rejection
// of near-zero gaussians redraws the whole tuple so the stream stays
// reproducible.
void generate_chunk(int dim, int64_t count, uint64_t chunk_seed, std::vector<double>& soa) {
    soa.resize(static_cast<size_t>(dim) * count);
    std::mt19937_64 g(chunk_seed);
    std::vector<double> z(static_cast<size_t>(dim) + 1);
    for (int64_t j = 0; j < count; ++j) {
        double norm2 = 0.0;
        do {
            for (int d = 0; d + 1 < static_cast<int>(z.size()); d += 2)
                rng::normal_pair(g, z[d], z[d + 1]);
            norm2 = 0.0;
            for (int d = 0; d < dim; ++d) norm2 += z[d] * z[d];
        } while (norm2 < 1e-24);
        const double inv = 1.0 / std::sqrt(norm2);
        for (int d = 0; d < dim; ++d) soa[static_cast<size_t>(d) * count + j] = z[d] * inv;
    }
}

// rho and owning facet of P at `count` SoA directions.
void radial_all(const Polytope& P, const std::vector<double>& soa, int64_t count,
                std::vector<double>& rho, std::vector<int32_t>& cell) {
    rho.resize(count);
    cell.resize(count);
    const auto& k = kern::active_impl();
    const int m = P.facet_count();
    if (P.dim() == 2) {
        k.radial_cell_2d(P.normals_comp(0).data(), P.normals_comp(1).data(),
                         P.supports().data(), m, soa.data(), soa.data() + count,
                         static_cast<int>(count), rho.data(), cell.data());
    } else if (P.dim() == 3) {
        k.radial_cell_3d(P.normals_comp(0).data(), P.normals_comp(1).data(),
                         P.normals_comp(2).data(), P.supports().data(), m, soa.data(),
                         soa.data() + count, soa.data() + 2 * count,
                         static_cast<int>(count), rho.data(), cell.data());
    } else {
        const int dim = P.dim();
        std::vector<double> normals(static_cast<size_t>(m) * dim);
        for (int i = 0; i < m; ++i)
            for (int d = 0; d < dim; ++d) normals[static_cast<size_t>(i) * dim + d] =
                P.normals()[i][d];
        std::vector<double> u(dim);
        for (int64_t j = 0; j < count; ++j) {
            for (int d = 0; d < dim; ++d) u[d] = soa[static_cast<size_t>(d) * count + j];
            kern::radial_cell_nd(normals.data(), P.supports().data(), m, dim, u.data(),
                                 &rho[j], &cell[j]);
        }
    }
}

struct BucketSums {
    std::vector<double> sum;   // per facet, sum of rho^q over owned samples
    std::vector<double> sumsq; // per facet, sum of rho^(2q)
};

// Per-facet sample moments, chunked and merged in chunk order.
BucketSums mc_core(const Polytope& P, double q, int64_t samples, uint64_t seed) {
    if (samples < 2) throw Error("at least 2 samples required");
    const int m = P.facet_count();
    const int64_t nchunks = (samples + kChunk - 1) / kChunk;
    std::vector<BucketSums> parts(nchunks);
    for_chunks(nchunks, [&](int64_t c) {
        const int64_t count = std::min(kChunk, samples - c * kChunk);
        std::vector<double> soa, rho;
        std::vector<int32_t> cell;
        generate_chunk(P.dim(), count, rng::derive_seed(seed, c), soa);
        radial_all(P, soa, count, rho, cell);
        BucketSums& b = parts[c];
        b.sum.assign(m, 0.0);
        b.sumsq.assign(m, 0.0);
        for (int64_t j = 0; j < count; ++j) {
            const double t = std::pow(rho[j], q);
            b.sum[cell[j]] += t;
            b.sumsq[cell[j]] += t * t;
        }
    });
    BucketSums out;
    out.sum.assign(m, 0.0);
    out.sumsq.assign(m, 0.0);
    for (const auto& b : parts)
        for (int i = 0; i < m; ++i) {
            out.sum[i] += b.sum[i];
            out.sumsq[i] += b.sumsq[i];
        }
    return out;
}

McEstimate estimate_from(double sum, double sumsq, int64_t n, double omega, uint64_t seed) {
    McEstimate e;
    e.samples = n;
    e.seed = seed;
    const double nd = static_cast<double>(n);
    e.mean = omega * (sum / nd);
    const double var = std::max(0.0, (sumsq - sum * sum / nd) / (nd - 1.0));
    e.std_error = omega * std::sqrt(var / nd);
    return e;
}

} // namespace

McEstimate mc_dual_volume(const Polytope& P, double q, int64_t samples, uint64_t seed) {
    const BucketSums b = mc_core(P, q, samples, seed);
    const double omega = unit_ball_volume(P.dim());
    // Mean assembled from the per-facet bucket means in index order, so it
    // is bit-identical to summing the mc_dual_curvature means.
    double mean = 0.0, sumsq = 0.0;
    const double nd = static_cast<double>(samples);
    for (size_t i = 0; i < b.sum.size(); ++i) {
        mean += omega * (b.sum[i] / nd);
        sumsq += b.sumsq[i];
    }
    double total = 0.0;
    for (const double s : b.sum) total += s;
    McEstimate e = estimate_from(total, sumsq, samples, omega, seed);
    e.mean = mean;
    return e;
}

std::vector<McEstimate> mc_dual_curvature(const Polytope& P, double q, int64_t samples,
                                          uint64_t seed) {
    const BucketSums b = mc_core(P, q, samples, seed);
    const double omega = unit_ball_volume(P.dim());
    std::vector<McEstimate> out(P.facet_count());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = estimate_from(b.sum[i], b.sumsq[i], samples, omega, seed);
    return out;
}

ComparisonReport comparison_check(const Polytope& Q1, const Polytope& Q2, int64_t samples,
                                  uint64_t seed) {
    if (Q1.dim() != Q2.dim())
        throw ShapeMismatch("comparison requires bodies of equal dimension");
    if (samples < 1) throw Error("at least 1 sample required");

    // Facet classes by the sign of h_Q1 - h_Q2 at the facet normal:
    // +1 where Q1's support is larger, -1 where smaller, 0 within noise.
    double scale = 0.0;
    for (int i = 0; i < Q1.facet_count(); ++i) scale = std::max(scale, Q1.support_coeff(i));
    for (int i = 0; i < Q2.facet_count(); ++i) scale = std::max(scale, Q2.support_coeff(i));
    const double tau = 1e-10 * scale;
    auto classify = [&](const Polytope& owner) {
        std::vector<int> cls(owner.facet_count());
        for (int i = 0; i < owner.facet_count(); ++i) {
            const double d =
                support_value(Q1, owner.normals()[i]) - support_value(Q2, owner.normals()[i]);
            cls[i] = d > tau ? +1 : (d < -tau ? -1 : 0);
        }
        return cls;
    };
    const std::vector<int> cls1 = classify(Q1);
    const std::vector<int> cls2 = classify(Q2);

    ComparisonReport rep;
    rep.samples = samples;
    const bool has1 = std::count(cls1.begin(), cls1.end(), +1) ||
                      std::count(cls2.begin(), cls2.end(), +1);
    const bool has2 = std::count(cls1.begin(), cls1.end(), -1) ||
                      std::count(cls2.begin(), cls2.end(), -1);
    rep.applicable = has1 && has2;
    if (!rep.applicable) return rep;

    struct Counts {
        int64_t eta1 = 0, eta2 = 0, va = 0, vb = 0, vc = 0, d1 = 0, d2 = 0;
    };
    const int64_t nchunks = (samples + kChunk - 1) / kChunk;
    std::vector<Counts> parts(nchunks);
    for_chunks(nchunks, [&](int64_t c) {
        const int64_t count = std::min(kChunk, samples - c * kChunk);
        std::vector<double> soa, rho1, rho2;
        std::vector<int32_t> cell1, cell2;
        generate_chunk(Q1.dim(), count, rng::derive_seed(seed, c), soa);
        radial_all(Q1, soa, count, rho1, cell1);
        radial_all(Q2, soa, count, rho2, cell2);
        Counts& k = parts[c];
        for (int64_t j = 0; j < count; ++j) {
            const double slack = 1e-12 * std::max(rho1[j], rho2[j]);
            const int c1 = cls1[cell1[j]];
            const int c2 = cls2[cell2[j]];
            if (c1 == +1) {
                ++k.eta1;
                if (rho1[j] < rho2[j] - slack) ++k.va;
                // Cell-boundary samples may legitimately land on an
                // equal-support facet of Q2; only a definite sign flip
                // contradicts the inclusion.
                if (c2 == -1) ++k.vc;
            }
            if (c2 == -1) {
                ++k.eta2;
                if (rho1[j] > rho2[j] + slack) ++k.vb;
            }
            if (c2 == +1) ++k.d1;
            if (c1 == -1) ++k.d2;
        }
    });
    int64_t d1 = 0, d2 = 0;
    for (const auto& k : parts) {
        rep.eta1_count += k.eta1;
        rep.eta2_count += k.eta2;
        rep.violations_a += k.va;
        rep.violations_b += k.vb;
        rep.violations_c += k.vc;
        d1 += k.d1;
        d2 += k.d2;
    }
    rep.frac_d1 = static_cast<double>(d1) / static_cast<double>(samples);
    rep.frac_d2 = static_cast<double>(d2) / static_cast<double>(samples);
    return rep;
}

void sample_directions(int dim, int64_t count, uint64_t seed, std::vector<double>& soa) {
    if (dim < 2 || dim > 8) throw Error("direction sampling supports dimensions 2..8");
    soa.resize(static_cast<size_t>(dim) * count);
    const int64_t nchunks = (count + kChunk - 1) / kChunk;
    for_chunks(nchunks, [&](int64_t c) {
        const int64_t n = std::min(kChunk, count - c * kChunk);
        std::vector<double> local;
        generate_chunk(dim, n, rng::derive_seed(seed, c), local);
        for (int d = 0; d < dim; ++d)
            std::copy(local.begin() + d * n, local.begin() + (d + 1) * n,
                      soa.begin() + static_cast<size_t>(d) * count + c * kChunk);
    });
}

} // namespace dualmink
