// Vector kernel: cyclic Jacobi over lanes of std::experimental::simd, one
// matrix per lane in structure-of-arrays layout. Compiled for AVX2+FMA on
// x86_64 (4 lanes); NEON gives 2 lanes on aarch64. Must stay numerically
// equivalent to the scalar kernel within roundoff; the tests enforce that.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "rydgauge/kernels.hpp"

#if defined(__GNUC__) || defined(__clang__)
#include <experimental/simd>
#define RYDGAUGE_SIMD_COMPILED 1
namespace stdx = std::experimental;
#else
#define RYDGAUGE_SIMD_COMPILED 0
#endif

namespace rydgauge::kernels::detail {

#if RYDGAUGE_SIMD_COMPILED

namespace {

using VD = stdx::native_simd<double>;
constexpr int kW = static_cast<int>(VD::size());
constexpr int kMaxSweeps = 30;

inline VD load(const double* p) {
    VD x;
    x.copy_from(p, stdx::element_aligned);
    return x;
}

inline void store(double* p, VD x) { x.copy_to(p, stdx::element_aligned); }

// One cyclic sweep across all lanes. Lanes whose pivot is negligible get the
// identity rotation (t = 0), so converged lanes ride along unchanged.
void sweep_lanes(double* a, double* v) {
    for (int p = 0; p < kN - 1; ++p) {
        for (int q = p + 1; q < kN; ++q) {
            const VD apq = load(a + (p * kN + q) * kW);
            const auto idle = stdx::abs(apq) < VD(1e-300);
            VD apq_safe = apq;
            where(idle, apq_safe) = VD(1.0);
            const VD theta =
                (load(a + (q * kN + q) * kW) - load(a + (p * kN + p) * kW)) /
                (2.0 * apq_safe);
            VD sgn = VD(1.0);
            where(theta < VD(0.0), sgn) = VD(-1.0);
            VD t = sgn / (stdx::abs(theta) + stdx::sqrt(theta * theta + VD(1.0)));
            where(idle, t) = VD(0.0);
            const VD c = VD(1.0) / stdx::sqrt(t * t + VD(1.0));
            const VD s = t * c;
            for (int j = 0; j < kN; ++j) {
                const VD ap = load(a + (p * kN + j) * kW);
                const VD aq = load(a + (q * kN + j) * kW);
                store(a + (p * kN + j) * kW, c * ap - s * aq);
                store(a + (q * kN + j) * kW, s * ap + c * aq);
            }
            for (int i = 0; i < kN; ++i) {
                const VD ap = load(a + (i * kN + p) * kW);
                const VD aq = load(a + (i * kN + q) * kW);
                store(a + (i * kN + p) * kW, c * ap - s * aq);
                store(a + (i * kN + q) * kW, s * ap + c * aq);
            }
            for (int j = 0; j < kN; ++j) {
                const VD vp = load(v + (p * kN + j) * kW);
                const VD vq = load(v + (q * kN + j) * kW);
                store(v + (p * kN + j) * kW, c * vp - s * vq);
                store(v + (q * kN + j) * kW, s * vp + c * vq);
            }
        }
    }
}

VD off_norm_sq(const double* a) {
    VD s(0.0);
    for (int i = 0; i < kN; ++i)
        for (int j = i + 1; j < kN; ++j) {
            const VD x = load(a + (i * kN + j) * kW);
            s += x * x;
        }
    return 2.0 * s;
}

VD fro_norm_sq(const double* a) {
    VD s(0.0);
    for (int i = 0; i < kN * kN; ++i) {
        const VD x = load(a + i * kW);
        s += x * x;
    }
    return s;
}

void solve_group(const double* mats, int count, double* evals, double* evecs) {
    alignas(64) double a[kN * kN * kW];
    alignas(64) double v[kN * kN * kW];
    // Pack: lane l of slot (i,j) holds matrix l's (i,j). Unused lanes get the
    // identity so they converge immediately and never trip the sweep limit.
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j)
            for (int l = 0; l < kW; ++l) {
                a[(i * kN + j) * kW + l] =
                    l < count ? mats[l * kN * kN + i * kN + j] : (i == j ? 1.0 : 0.0);
                v[(i * kN + j) * kW + l] = i == j ? 1.0 : 0.0;
            }

    VD tol = VD(1e-28) * fro_norm_sq(a);  // (1e-14 * fro)^2 against off^2
    where(tol < VD(1e-300), tol) = VD(1e-300);
    int used = 0;
    while (used < kMaxSweeps && stdx::any_of(off_norm_sq(a) > tol)) {
        sweep_lanes(a, v);
        ++used;
    }
    if (stdx::any_of(off_norm_sq(a) > tol))
        throw std::runtime_error("eigh16 simd kernel: no convergence in 30 sweeps");

    for (int l = 0; l < count; ++l) {
        double w[kN];
        int order[kN];
        for (int i = 0; i < kN; ++i) {
            w[i] = a[(i * kN + i) * kW + l];
            order[i] = i;
        }
        std::sort(order, order + kN, [&](int x, int y) { return w[x] < w[y]; });
        for (int i = 0; i < kN; ++i) {
            evals[l * kN + i] = w[order[i]];
            if (evecs)
                for (int j = 0; j < kN; ++j)
                    evecs[l * kN * kN + i * kN + j] = v[(order[i] * kN + j) * kW + l];
        }
    }
}

}  // namespace

bool simd_compiled() { return kW >= 2; }
int simd_lanes() { return kW; }

void eigh16_batch_simd(const double* a, int nb, double* evals, double* evecs) {
    for (int b0 = 0; b0 < nb; b0 += kW) {
        const int count = std::min(kW, nb - b0);
        solve_group(a + b0 * kN * kN, count, evals + b0 * kN,
                    evecs ? evecs + b0 * kN * kN : nullptr);
    }
}

#else

bool simd_compiled() { return false; }
int simd_lanes() { return 1; }

void eigh16_batch_simd(const double* a, int nb, double* evals, double* evecs) {
    eigh16_batch_scalar(a, nb, evals, evecs);
}

#endif

}  // namespace rydgauge::kernels::detail
