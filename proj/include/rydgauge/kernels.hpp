#pragma once
// Eigensolver kernels. A scalar cyclic-Jacobi reference kernel and a
// vectorized variant (std::experimental::simd, lanes = native register
// width) diagonalize batches of 16x16 real symmetric matrices; a Sturm
// bisection + inverse iteration kernel extracts the lowest eigenpairs of
// large symmetric tridiagonal matrices. The active 16x16 kernel is chosen
// at runtime: the RYDGAUGE_KERNEL environment variable (scalar|simd|auto)
// overrides CPU detection.

#include <array>
#include <cstdint>
#include <vector>

namespace rydgauge::kernels {

inline constexpr int kN = 16;

enum class Kind { Auto, Scalar, Simd };

// True when the vector kernel was compiled in and the CPU can run it.
bool simd_available();

// Name of the kernel a given request resolves to ("scalar", "simd-avx2", ...).
// Throws std::runtime_error if Kind::Simd (or RYDGAUGE_KERNEL=simd) is
// requested on a machine that cannot run it.
const char* resolve_kernel_name(Kind kind = Kind::Auto);

// Diagonalize nb dense symmetric 16x16 matrices.
//   a:      nb*256 row-major inputs, a[b*256 + i*16 + j]; symmetric part is
//           read from the full square (callers pass exactly symmetric data)
//   evals:  nb*16, ascending per matrix
//   evecs:  nb*256, eigenvector k of batch b contiguous at [b*256 + k*16],
//           matching evals order; pass nullptr to skip accumulation
void eigh16_batch(const double* a, int nb, double* evals, double* evecs,
                  Kind kind = Kind::Auto);

void eigh16(const double* a, double* evals, double* evecs, Kind kind = Kind::Auto);

// Scalar cyclic Jacobi on one matrix with a caller-provided starting basis:
// rows of v must hold an orthonormal set (identity for a cold start, the
// previous step's eigenvectors for a warm start). On return the rows of v
// are eigenvectors and evals[k] pairs with row k; no sorting is applied, so
// a warm start preserves the caller's eigenvector ordering.
//   a: 256 symmetric input (not modified), v: 256 in/out, evals: 16 out
// Returns the number of sweeps used.
int jacobi16_with_basis(const double* a, double* v, double* evals);

// Lowest k eigenpairs of the symmetric tridiagonal matrix with diagonal d
// (size n) and off-diagonal e (size n-1), via bisection on Sturm counts and
// inverse iteration. evals: k ascending; evecs (optional, k*n row-major)
// holds unit-norm eigenvectors. Throws std::runtime_error on non-convergence.
void tridiag_lowest(const double* d, const double* e, int n, int k,
                    double* evals, double* evecs);

namespace detail {
// Internal entry points used by the dispatcher and the equivalence tests.
void eigh16_batch_scalar(const double* a, int nb, double* evals, double* evecs);
void eigh16_batch_simd(const double* a, int nb, double* evals, double* evecs);
bool simd_compiled();
int simd_lanes();
}  // namespace detail

}  // namespace rydgauge::kernels
