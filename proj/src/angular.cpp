#include "rydgauge/angular.hpp"

#include <cmath>

namespace rydgauge::angular {

namespace {

// Factorials up to 34! cover every sum the 16-state model can request and
// stay exactly representable well within double range.
constexpr int kMaxFact = 34;

const double* fact_table() {
    static const auto table = [] {
        std::array<double, kMaxFact + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxFact; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table.data();
}

// Factorial of a half-integer that must be a nonnegative integer by the
// time it is used; negative arguments signal an empty term upstream.
double fact(int doubled) {
    return fact_table()[doubled / 2];
}

}  // namespace

double cg_coefficient(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    require_jm(j1, m1, "cg_coefficient(j1,m1)");
    require_jm(j2, m2, "cg_coefficient(j2,m2)");
    require_jm(J, M, "cg_coefficient(J,M)");

    if (m1.twice + m2.twice != M.twice) return 0.0;
    // Triangle rule, and j1+j2+J must be an integer.
    if ((j1.twice + j2.twice + J.twice) % 2 != 0) return 0.0;
    if (J.twice < std::abs(j1.twice - j2.twice) || J.twice > j1.twice + j2.twice) return 0.0;

    if ((j1.twice + j2.twice + J.twice + 2) / 2 > kMaxFact)
        throw std::invalid_argument("cg_coefficient: angular momenta exceed table range");

    // Racah's single-sum closed form. Every factorial argument below is an
    // even doubled value (an exact integer) once the checks above pass.
    const int tj1 = j1.twice, tj2 = j2.twice, tJ = J.twice;
    const int tm1 = m1.twice, tm2 = m2.twice, tM = M.twice;

    const double pref =
        (tJ + 1) *
        (fact(tj1 + tj2 - tJ) * fact(tj1 - tj2 + tJ) * fact(-tj1 + tj2 + tJ) /
         fact(tj1 + tj2 + tJ + 2)) *
        fact(tJ + tM) * fact(tJ - tM) *
        fact(tj1 - tm1) * fact(tj1 + tm1) *
        fact(tj2 - tm2) * fact(tj2 + tm2);

    const int k_lo = std::max(0, std::max(-(tJ - tj2 + tm1) / 2, -(tJ - tj1 - tm2) / 2));
    const int k_hi = std::min((tj1 + tj2 - tJ) / 2,
                              std::min((tj1 - tm1) / 2, (tj2 + tm2) / 2));
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double denom = fact(2 * k) * fact(tj1 + tj2 - tJ - 2 * k) *
                             fact(tj1 - tm1 - 2 * k) * fact(tj2 + tm2 - 2 * k) *
                             fact(tJ - tj2 + tm1 + 2 * k) * fact(tJ - tj1 - tm2 + 2 * k);
        sum += (k % 2 == 0 ? 1.0 : -1.0) / denom;
    }
    return std::sqrt(pref) * sum;
}

CVec3 spherical_basis_vector(int q) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (q) {
        case 0:
            return {cplx(0, 0), cplx(0, 0), cplx(1, 0)};
        case 1:
            return {cplx(-s, 0), cplx(0, -s), cplx(0, 0)};
        case -1:
            return {cplx(s, 0), cplx(0, -s), cplx(0, 0)};
        default:
            throw std::invalid_argument("spherical_basis_vector: q must be -1, 0 or +1");
    }
}

AtomicState make_state(Orbital orb, HalfInt m) {
    const int limit = (orb == Orbital::s) ? 1 : 3;
    if (m.twice % 2 == 0 || std::abs(m.twice) > limit)
        throw std::invalid_argument("make_state: m outside the orbital multiplet");
    return {orb, m};
}

CVec3 dipole_element(const AtomicState& p_state, const AtomicState& s_state) {
    if (p_state.orbital != Orbital::p || s_state.orbital != Orbital::s)
        throw std::invalid_argument("dipole_element: expects (p_state, s_state)");
    const int tq = p_state.m.twice - s_state.m.twice;  // doubled q
    if (tq % 2 != 0 || std::abs(tq) > 2) return {cplx(0, 0), cplx(0, 0), cplx(0, 0)};
    const int q = tq / 2;
    const double c = cg_coefficient(HalfInt(1), s_state.m, HalfInt(2), HalfInt(2 * q),
                                    HalfInt(3), p_state.m);
    CVec3 e = spherical_basis_vector(q);
    for (auto& x : e) x *= c;
    return e;
}

}  // namespace rydgauge::angular
