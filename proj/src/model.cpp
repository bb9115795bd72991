#include "rydgauge/model.hpp"

#include <cmath>

#include "rydgauge/angular.hpp"

namespace rydgauge::model {

using angular::CVec3;

double Position::r() const { return std::hypot(rho, z); }

namespace {

// Dipole element lookup per basis slot. For the coupling <p,s| V |s,p> the
// atom that de-excites contributes the conjugated element; wiring the
// conjugate onto atom 1 reproduces the rotation covariance
// H(rho,z,phi) = exp(-i Jz phi) H(rho,z,0) exp(+i Jz phi), which the tests
// pin against a finite-difference commutator identity.
struct DipoleTables {
    // elem[s index in {0,1}][p index in {0..3}]
    CVec3 plain[2][4];
    CVec3 conj[2][4];
};

const DipoleTables& tables() {
    static const DipoleTables t = [] {
        DipoleTables d{};
        for (int is = 0; is < 2; ++is)
            for (int ip = 0; ip < 4; ++ip) {
                const auto s = angular::make_state(angular::Orbital::s, HalfInt(2 * is - 1));
                const auto p = angular::make_state(angular::Orbital::p, HalfInt(2 * ip - 3));
                d.plain[is][ip] = angular::dipole_element(p, s);
                for (int c = 0; c < 3; ++c) d.conj[is][ip].at(c) = std::conj(d.plain[is][ip].at(c));
            }
        return d;
    }();
    return t;
}

inline int s_idx(HalfInt ms) { return (ms.twice + 1) / 2; }
inline int p_idx(HalfInt mp) { return (mp.twice + 3) / 2; }

inline cplx dot(const CVec3& a, const CVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline cplx dotr(const CVec3& a, const double r[3]) {
    return a[0] * r[0] + a[1] * r[1] + a[2] * r[2];
}

void require_nonzero_r(double r2) {
    if (!(r2 > 0)) throw std::domain_error("dipole-dipole coupling is singular at R = 0");
}

}  // namespace

Mat16d stark_hamiltonian(const ModelParams& params) {
    params.validate();
    const auto& basis = build_basis();
    Mat16d h;
    for (int i = 0; i < kDim; ++i) {
        const int tmp = basis[i].mp.twice;
        h(i, i) = (std::abs(tmp) == 3) ? 0.0 : (tmp == -1 ? -1.0 : -params.delta_ratio);
    }
    return h;
}

Mat16c vdd_cartesian(double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    require_nonzero_r(r2);
    const double r = std::sqrt(r2);
    const double rhat[3] = {x / r, y / r, z / r};
    const double inv_r3 = 1.0 / (r2 * r);

    const auto& basis = build_basis();
    const auto& tab = tables();
    Mat16c v;
    // Lower block <p,s| V |s,p>, then the Hermitian mirror.
    for (int j = 0; j < 8; ++j) {       // bra: state 8+j = |p mp_j>_1 |s ms_j>_2
        for (int i = 0; i < 8; ++i) {   // ket: state i = |s ms_i>_1 |p mp_i>_2
            const CVec3& u = tab.conj[s_idx(basis[i].ms)][p_idx(basis[8 + j].mp)];
            const CVec3& w = tab.plain[s_idx(basis[8 + j].ms)][p_idx(basis[i].mp)];
            const cplx elem = (dot(u, w) - 3.0 * dotr(u, rhat) * dotr(w, rhat)) * inv_r3;
            v(8 + j, i) = elem;
            v(i, 8 + j) = std::conj(elem);
        }
    }
    return v;
}

Mat16c vdd_matrix(const Position& pos) {
    return vdd_cartesian(pos.rho * std::cos(pos.phi), pos.rho * std::sin(pos.phi), pos.z);
}

std::array<Mat16c, 3> grad_vdd_cartesian(double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    require_nonzero_r(r2);
    const double rv[3] = {x, y, z};
    const double inv_r5 = 1.0 / (r2 * r2 * std::sqrt(r2));
    const double inv_r7 = inv_r5 / r2;

    const auto& basis = build_basis();
    const auto& tab = tables();
    std::array<Mat16c, 3> g;
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            const CVec3& u = tab.conj[s_idx(basis[i].ms)][p_idx(basis[8 + j].mp)];
            const CVec3& w = tab.plain[s_idx(basis[8 + j].ms)][p_idx(basis[i].mp)];
            const cplx a = dot(u, w);
            const cplx ur = dotr(u, rv);
            const cplx wr = dotr(w, rv);
            for (int s = 0; s < 3; ++s) {
                const cplx elem = -3.0 * a * rv[s] * inv_r5 -
                                  3.0 * (u[s] * wr + ur * w[s]) * inv_r5 +
                                  15.0 * ur * wr * rv[s] * inv_r7;
                g[s](8 + j, i) = elem;
                g[s](i, 8 + j) = std::conj(elem);
            }
        }
    }
    return g;
}

Mat16c hint(const Position& pos, const ModelParams& params) {
    Mat16c h = vdd_matrix(pos);
    const Mat16d hs = stark_hamiltonian(params);
    for (int i = 0; i < kDim; ++i) h(i, i) += hs(i, i);
    return h;
}

std::array<Mat16c, 3> grad_hint(const Position& pos, const ModelParams& params) {
    params.validate();  // the level shifts are position independent
    return grad_vdd_cartesian(pos.rho * std::cos(pos.phi), pos.rho * std::sin(pos.phi),
                              pos.z);
}

Mat16d hint_inplane(double rho, double z, const ModelParams& params) {
    Mat16d h = stark_hamiltonian(params);
    const Mat16c v = vdd_cartesian(rho, 0.0, z);
    for (int i = 0; i < kDim * kDim; ++i) h.a[i] += v.a[i].real();
    return h;
}

const Mat16d& w0_matrix() {
    static const Mat16d w0 = [] {
        return real_part(vdd_cartesian(1.0, 0.0, 0.0));
    }();
    return w0;
}

const Mat16d& jz_matrix() {
    static const Mat16d jz = [] {
        Mat16d m;
        for (int i = 0; i < kDim; ++i) m(i, i) = build_basis()[i].M();
        return m;
    }();
    return jz;
}

int total_m(int state_index) { return build_basis()[state_index].M(); }

}  // namespace rydgauge::model
