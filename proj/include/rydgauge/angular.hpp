#pragma once
// Angular-momentum algebra: Clebsch-Gordan coefficients (Racah closed form,
// Condon-Shortley convention), spherical unit vectors, and the single-atom
// s<->p dipole matrix elements in units of the reduced element.

#include <array>
#include <complex>

#include "rydgauge/halfint.hpp"

namespace rydgauge::angular {

using cplx = std::complex<double>;
using CVec3 = std::array<cplx, 3>;

// <j1 m1; j2 m2 | J M>. Exactly zero when M != m1+m2 or the triangle rule
// fails; throws std::invalid_argument on malformed quantum numbers.
double cg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

// eps_0 = z_hat, eps_{+-1} = -+(x_hat +- i y_hat)/sqrt(2). q in {-1,0,+1}.
CVec3 spherical_basis_vector(int q);

enum class Orbital { s, p };

struct AtomicState {
    Orbital orbital;
    HalfInt m;
};

// Throws if m is outside the orbital's multiplet (|m|=1/2 for s; 1/2,3/2 for p).
AtomicState make_state(Orbital orb, HalfInt m);

// <p m_p| d |s m_s> / D = C(1/2 m_s; 1 q | 3/2 m_p) eps_q with q = m_p - m_s.
// Zero vector when |m_p - m_s| > 1.
CVec3 dipole_element(const AtomicState& p_state, const AtomicState& s_state);

}  // namespace rydgauge::angular
