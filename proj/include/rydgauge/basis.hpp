#pragma once
// Canonical enumeration of the 16 two-atom nsnp product states.
//
// Index layout: states 0..7 are |s m_s>_1 |p m_p>_2 with m_s ascending in
// the outer position (-1/2, +1/2) and m_p ascending in the inner position
// (-3/2, -1/2, +1/2, +3/2), i.e. i = 4*idx(m_s) + idx(m_p). States 8..15
// mirror the same (m_s, m_p) tuples with the atoms swapped:
// state 8+i is |p m_p(i)>_1 |s m_s(i)>_2.

#include <array>

#include "rydgauge/halfint.hpp"

namespace rydgauge::model {

struct BasisState {
    HalfInt ms;        // the s-multiplet atom's m
    HalfInt mp;        // the p-multiplet atom's m
    bool p_first;      // true for states 8..15 (atom 1 carries the p excitation)
    int M() const { return (ms.twice + mp.twice) / 2; }  // always an integer here
};

using TwoAtomBasis = std::array<BasisState, 16>;

inline const TwoAtomBasis& build_basis() {
    static const TwoAtomBasis basis = [] {
        TwoAtomBasis b{};
        int i = 0;
        for (int tms : {-1, 1})
            for (int tmp : {-3, -1, 1, 3}) {
                b[i] = {HalfInt(tms), HalfInt(tmp), false};
                b[8 + i] = {HalfInt(tms), HalfInt(tmp), true};
                ++i;
            }
        return b;
    }();
    return basis;
}

// Exchange of the two atoms maps state i to its mirrored partner.
inline int exchange_index(int i) { return i < 8 ? 8 + i : i - 8; }

}  // namespace rydgauge::model
