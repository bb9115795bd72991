// Lowest eigenpairs of a symmetric tridiagonal matrix: bisection on Sturm
// sequence counts for the eigenvalues, inverse iteration for the vectors.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rydgauge/kernels.hpp"

namespace rydgauge::kernels {

namespace {

// Number of eigenvalues strictly below x (Sturm count via the shifted
// LDL^T recurrence; a vanishing pivot is nudged, standard practice).
int count_below(const double* d, const double* e, int n, double x) {
    int cnt = 0;
    double q = d[0] - x;
    if (q < 0) ++cnt;
    for (int i = 1; i < n; ++i) {
        if (q == 0.0) q = 1e-300;
        q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
        if (q < 0) ++cnt;
    }
    return cnt;
}

// Deterministic start vector generator for inverse iteration.
struct SplitMix {
    std::uint64_t s;
    double next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return (z >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
};

// Solve (T - lambda I) x = b with partial pivoting; overwrites b with x.
void shifted_solve(const double* d, const double* e, int n, double lambda,
                   std::vector<double>& dl, std::vector<double>& dd,
                   std::vector<double>& du, std::vector<double>& du2,
                   std::vector<int>& piv, std::vector<double>& b, bool refactor) {
    if (refactor) {
        for (int i = 0; i < n; ++i) dd[i] = d[i] - lambda;
        for (int i = 0; i < n - 1; ++i) dl[i] = du[i] = e[i];
        std::fill(du2.begin(), du2.end(), 0.0);
        // Partial-pivoting LU of a tridiagonal matrix: dl keeps multipliers,
        // dd/du/du2 become the three U diagonals, piv marks row swaps.
        for (int i = 0; i < n - 1; ++i) {
            if (std::abs(dd[i]) >= std::abs(dl[i])) {
                piv[i] = 0;
                if (dd[i] == 0.0) dd[i] = 1e-300;
                const double m = dl[i] / dd[i];
                dl[i] = m;
                dd[i + 1] -= m * du[i];
            } else {
                piv[i] = 1;
                const double m = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = m;
                const double tmp = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = tmp - m * dd[i + 1];
                if (i < n - 2) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
            }
        }
        if (dd[n - 1] == 0.0) dd[n - 1] = 1e-300;
    }
    for (int i = 0; i < n - 1; ++i) {
        if (piv[i] == 0) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= dl[i] * b[i];
        }
    }
    b[n - 1] /= dd[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i)
        b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
}

}  // namespace

void tridiag_lowest(const double* d, const double* e, int n, int k,
                    double* evals, double* evecs) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("tridiag_lowest: bad sizes");

    // Gershgorin bounds.
    double lo = d[0], hi = d[0];
    for (int i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < n - 1 ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    const double span = hi - lo;

    for (int j = 0; j < k; ++j) {
        double a = lo, b = hi;
        // Invariant: count(a) <= j < count(b).
        for (int it = 0; it < 128; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (count_below(d, e, n, mid) > j)
                b = mid;
            else
                a = mid;
            if (b - a <= 1e-15 * std::max(std::abs(a), std::abs(b)) + 1e-300 * span) break;
        }
        evals[j] = 0.5 * (a + b);
    }

    if (!evecs) return;

    std::vector<double> dl(n), dd(n), du(n), du2(n), x(n);
    std::vector<int> piv(n);
    SplitMix rng{0x5eedULL};
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < n; ++i) x[i] = rng.next();
        bool refactor = true;
        for (int it = 0; it < 4; ++it) {
            // Orthogonalize against already-computed vectors to keep nearly
            // degenerate pairs from collapsing onto one direction.
            for (int p = 0; p < j; ++p) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += evecs[p * n + i] * x[i];
                for (int i = 0; i < n; ++i) x[i] -= dot * evecs[p * n + i];
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += x[i] * x[i];
            nrm = std::sqrt(nrm);
            if (nrm < 1e-290) throw std::runtime_error("tridiag_lowest: inverse iteration breakdown");
            for (int i = 0; i < n; ++i) x[i] /= nrm;
            shifted_solve(d, e, n, evals[j], dl, dd, du, du2, piv, x, refactor);
            refactor = false;
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += x[i] * x[i];
        nrm = std::sqrt(nrm);
        // Deterministic sign: largest-magnitude component positive.
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
        const double sgn = x[imax] < 0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) evecs[j * n + i] = sgn * x[i] / nrm;
    }
}

}  // namespace rydgauge::kernels
