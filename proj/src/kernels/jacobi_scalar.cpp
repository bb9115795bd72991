// Scalar reference kernel: cyclic Jacobi for 16x16 real symmetric matrices.
// Serves as the correctness baseline the vector kernel is tested against and
// as the warm-start engine for the dynamics propagator.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "rydgauge/kernels.hpp"

namespace rydgauge::kernels {

namespace {

constexpr int kMaxSweeps = 30;

double off_norm(const double* a) {
    double s = 0.0;
    for (int i = 0; i < kN; ++i)
        for (int j = i + 1; j < kN; ++j) s += a[i * kN + j] * a[i * kN + j];
    return std::sqrt(2.0 * s);
}

double fro_norm(const double* a) {
    double s = 0.0;
    for (int i = 0; i < kN * kN; ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

// One cyclic sweep of Jacobi rotations over the strict upper triangle.
// a is kept exactly symmetric; rows of v accumulate the eigenbasis.
void sweep(double* a, double* v) {
    for (int p = 0; p < kN - 1; ++p) {
        for (int q = p + 1; q < kN; ++q) {
            const double apq = a[p * kN + q];
            if (std::abs(apq) < 1e-300) continue;
            const double theta = (a[q * kN + q] - a[p * kN + p]) / (2.0 * apq);
            const double t = std::copysign(1.0, theta) /
                             (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;
            // Rows p and q of both a and v: G has nontrivial 2x2 block
            // [[c, -s], [s, c]] acting on (p, q); a <- G a G^T, v <- G v.
            for (int j = 0; j < kN; ++j) {
                const double ap = a[p * kN + j], aq = a[q * kN + j];
                a[p * kN + j] = c * ap - s * aq;
                a[q * kN + j] = s * ap + c * aq;
            }
            for (int i = 0; i < kN; ++i) {
                const double ap = a[i * kN + p], aq = a[i * kN + q];
                a[i * kN + p] = c * ap - s * aq;
                a[i * kN + q] = s * ap + c * aq;
            }
            for (int j = 0; j < kN; ++j) {
                const double vp = v[p * kN + j], vq = v[q * kN + j];
                v[p * kN + j] = c * vp - s * vq;
                v[q * kN + j] = s * vp + c * vq;
            }
        }
    }
}

}  // namespace

int jacobi16_with_basis(const double* a_in, double* v, double* evals) {
    // Transform into the caller's basis: b = V a V^T. For a warm start b is
    // already nearly diagonal and one or two sweeps finish the job.
    double tmp[kN * kN], b[kN * kN];
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j) {
            double s = 0.0;
            for (int k = 0; k < kN; ++k) s += v[i * kN + k] * a_in[k * kN + j];
            tmp[i * kN + j] = s;
        }
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j) {
            double s = 0.0;
            for (int k = 0; k < kN; ++k) s += tmp[i * kN + k] * v[j * kN + k];
            b[i * kN + j] = s;
        }
    // Symmetrize away the roundoff skew of the congruence product.
    for (int i = 0; i < kN; ++i)
        for (int j = i + 1; j < kN; ++j) {
            const double m = 0.5 * (b[i * kN + j] + b[j * kN + i]);
            b[i * kN + j] = b[j * kN + i] = m;
        }

    const double tol = 1e-14 * std::max(fro_norm(b), 1e-300);
    int used = 0;
    while (used < kMaxSweeps && off_norm(b) > tol) {
        sweep(b, v);
        ++used;
    }
    if (off_norm(b) > tol)
        throw std::runtime_error("jacobi16_with_basis: no convergence in 30 sweeps");
    for (int i = 0; i < kN; ++i) evals[i] = b[i * kN + i];
    return used;
}

namespace detail {

void eigh16_batch_scalar(const double* a, int nb, double* evals, double* evecs) {
    double v[kN * kN], w[kN];
    for (int b = 0; b < nb; ++b) {
        std::memset(v, 0, sizeof v);
        for (int i = 0; i < kN; ++i) v[i * kN + i] = 1.0;
        jacobi16_with_basis(a + b * kN * kN, v, w);

        int order[kN];
        for (int i = 0; i < kN; ++i) order[i] = i;
        std::sort(order, order + kN, [&](int x, int y) { return w[x] < w[y]; });
        for (int i = 0; i < kN; ++i) {
            evals[b * kN + i] = w[order[i]];
            if (evecs)
                std::memcpy(evecs + b * kN * kN + i * kN, v + order[i] * kN,
                            kN * sizeof(double));
        }
    }
}

}  // namespace detail

}  // namespace rydgauge::kernels
