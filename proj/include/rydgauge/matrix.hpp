#pragma once
// Fixed-size 16x16 matrix storage for the two-atom internal space. Row-major
// std::array wrappers; heavy lifting lives in the kernels, so these stay
// minimal on purpose.

#include <array>
#include <cmath>
#include <complex>

namespace rydgauge {

inline constexpr int kDim = 16;
using cplx = std::complex<double>;

struct Mat16d {
    std::array<double, kDim * kDim> a{};
    double& operator()(int i, int j) { return a[i * kDim + j]; }
    double operator()(int i, int j) const { return a[i * kDim + j]; }
    double* data() { return a.data(); }
    const double* data() const { return a.data(); }
};

struct Mat16c {
    std::array<cplx, kDim * kDim> a{};
    cplx& operator()(int i, int j) { return a[i * kDim + j]; }
    cplx operator()(int i, int j) const { return a[i * kDim + j]; }
};

using Vec16c = std::array<cplx, kDim>;
using Vec16d = std::array<double, kDim>;

inline Mat16c operator+(const Mat16c& x, const Mat16c& y) {
    Mat16c r;
    for (int i = 0; i < kDim * kDim; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

inline double herm_defect(const Mat16c& m) {
    double worst = 0.0;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

inline double max_imag(const Mat16c& m) {
    double worst = 0.0;
    for (const auto& x : m.a) worst = std::max(worst, std::abs(x.imag()));
    return worst;
}

inline Mat16d real_part(const Mat16c& m) {
    Mat16d r;
    for (int i = 0; i < kDim * kDim; ++i) r.a[i] = m.a[i].real();
    return r;
}

inline Vec16c matvec(const Mat16c& m, const Vec16c& v) {
    Vec16c r{};
    for (int i = 0; i < kDim; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < kDim; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline Vec16c matvec(const Mat16d& m, const Vec16c& v) {
    Vec16c r{};
    for (int i = 0; i < kDim; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < kDim; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline cplx inner(const Vec16c& x, const Vec16c& y) {
    cplx s = 0.0;
    for (int i = 0; i < kDim; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

}  // namespace rydgauge
